#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exangulate::alg {

using Fp = std::uint32_t;

/// Arithmetic in the prime field F_p. The modulus is carried by value so
/// that independent sessions with different primes never share state.
class PrimeField {
 public:
  explicit PrimeField(Fp p = 2);

  Fp p() const { return p_; }
  Fp reduce(std::int64_t v) const;
  Fp add(Fp a, Fp b) const { return (a + b) % p_; }
  Fp sub(Fp a, Fp b) const { return (a + p_ - b) % p_; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const {
    return static_cast<Fp>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Fp inv(Fp a) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  Fp p_;
};

bool is_prime(Fp p);

/// Dense row-major matrix over F_p. 0×n and n×0 shapes are legal.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Fp p);
  Matrix(std::size_t rows, std::size_t cols, Fp p,
         std::initializer_list<std::int64_t> row_major);

  static Matrix identity(std::size_t n, Fp p);
  static Matrix zero(std::size_t rows, std::size_t cols, Fp p) {
    return Matrix(rows, cols, p);
  }
  static Matrix column(const std::vector<Fp>& v, Fp p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp prime() const { return p_; }
  PrimeField field() const { return PrimeField(p_); }

  Fp at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);
  void set_raw(std::size_t r, std::size_t c, Fp v) { a_[r * cols_ + c] = v; }
  const std::vector<Fp>& data() const { return a_; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(Fp s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::vector<Fp> col(std::size_t c) const;
  Matrix col_range(std::size_t first, std::size_t count) const;
  Matrix row_range(std::size_t first, std::size_t count) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const;
  void paste(std::size_t r0, std::size_t c0, const Matrix& b);

  /// Column-major flattening; used to turn linear maps into vectors.
  std::vector<Fp> vec() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Fp p_ = 2;
  std::vector<Fp> a_;
};

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows, Fp p);
Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols, Fp p);
Matrix block_diag(const std::vector<Matrix>& blocks, Fp p);

struct RowEchelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Deterministic Gauss-Jordan elimination; the pivot in each column is the
/// first usable row, so all derived basis choices are reproducible.
RowEchelon row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Columns of the result form a basis of ker A (free variables in
/// increasing order, each set to 1 in turn).
Matrix kernel_basis(const Matrix& a);

/// Columns of the result form a basis of the column space of A, chosen as
/// the pivot columns of A itself.
Matrix column_space_basis(const Matrix& a);

struct SolveResult {
  std::optional<Matrix> solution;  // a particular solution column
  Matrix nullspace;                // basis of ker A as columns
};

/// Solves A·x = b for a single column b.
SolveResult rref_solve(const Matrix& a, const Matrix& b);

/// Solves A·X = B for a matrix right-hand side; nullopt if inconsistent.
std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

struct Quotient {
  Matrix projection;  // q × V
  Matrix section;     // V × q
  std::size_t dim() const { return projection.rows(); }
};

/// Quotient of F_p^V by the span of the columns of W. The complement is
/// spanned by the standard vectors at the non-pivot coordinates of the
/// row-reduced W^T.
Quotient quotient_with_section(std::size_t v_dim, const Matrix& w_basis);

/// True when every column of `b` lies in the column span of `a`.
bool in_column_span(const Matrix& a, const Matrix& b);

}  // namespace exangulate::alg
