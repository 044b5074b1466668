#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exangulate/localization.hpp"
#include "exangulate/module_category.hpp"
#include "json.hpp"

namespace exangulate::session {

using Json = nlohmann::ordered_json;

/// Input error with a 1-based source location.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& file, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_, column_;
  std::string message_;
};

struct Loc {
  int line = 1, column = 1;
};

struct Token {
  std::string text;
  Loc loc;
};

struct ArrowSpec {
  std::string name;
  Token source, target;
};

struct MorSpec {
  Token source, target;
  std::vector<Token> coords;
};

/// A complex A -> X_1 -> ... -> C given by term objects and map coordinates.
struct SequenceSpec {
  std::string name;
  Loc loc;
  std::vector<Token> terms;
  std::vector<std::vector<Token>> maps;
  std::vector<Token> delta;
};

struct DeclaredSpec {
  Loc loc;
  Token c, a;
  std::size_t index = 0;
  SequenceSpec sequence;
};

struct SessionConfig {
  std::string file = "<input>";
  alg::Fp prime = 2;
  std::vector<std::string> vertex_names;
  std::vector<ArrowSpec> arrows;
  std::vector<rep::Relation> relations;
  int n = 2;
  std::string backend = "cluster-tilting";
  std::vector<Token> generators;  // empty means the projective-injective generators
  std::vector<Token> nf;
  std::string mode = "iso";
  std::vector<MorSpec> seeds;
  std::vector<DeclaredSpec> declared;
  std::vector<SequenceSpec> sequences;
  int multiplicity = 2;
  int path_length = 16;
  int enumeration = 2;
  std::size_t search_cap = 4096;
};

/// Throws InputError on syntax errors and on semantic errors in the quiver
/// and relations.
SessionConfig parse_input(const std::string& text, const std::string& file = "<input>");

struct Session {
  SessionConfig cfg;
  std::shared_ptr<const rep::Algebra> algebra;
  std::shared_ptr<const ex::ModuleCategory> modules;
  std::shared_ptr<const ex::ExCategory> category;
  std::vector<std::string> problems;  // from ModuleCategory::validate
  std::vector<std::pair<std::string, ex::Exangle>> sequences;

  const ex::AddCategory& cat() const { return category->cat(); }
  /// "0", a generator name, or names joined by '+'.
  ex::Obj object(const Token& t) const;
};

/// Resolves generator, object and morphism names; throws InputError.
Session build_session(SessionConfig cfg, std::uint64_t seed = 0x5eed);

std::unique_ptr<loc::Localization> make_localization(const Session& s);

Json exangle_json(const ex::AddCategory& cat, const ex::Exangle& x);
Json witness_json(const ex::AddCategory& cat, const std::optional<ex::Witness>& w);
Json axioms_json(const ex::AddCategory& cat, const std::vector<ex::AxiomResult>& rs);

/// Shared header: schema, command, input, field, bounds, category.
Json header(const Session& s, const std::string& command);

struct Outcome {
  Json json;
  int exit_code = 1;
};

/// Core axioms only. Exit 0 when all pass, 2 otherwise.
Outcome run_check(const Session& s);
/// Full report. Exit codes 0, 10, 20, 30, 1.
Outcome run_report(const Session& s);

}  // namespace exangulate::session
