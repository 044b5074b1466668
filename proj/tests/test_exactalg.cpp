#include <random>

#include "doctest.h"
#include "exangulate/matrix.hpp"

using namespace exangulate::alg;

TEST_CASE("rref_solve on the identity over F_2") {
  Matrix a(2, 2, 2, {1, 0, 0, 1});
  Matrix b(2, 1, 2, {1, 1});
  auto r = rref_solve(a, b);
  REQUIRE(r.solution);
  CHECK(*r.solution == Matrix(2, 1, 2, {1, 1}));
  CHECK(r.nullspace.cols() == 0);
}

TEST_CASE("rref_solve with a one-dimensional nullspace") {
  Matrix a(1, 2, 2, {1, 1});
  Matrix b(1, 1, 2, {0});
  auto r = rref_solve(a, b);
  REQUIRE(r.solution);
  CHECK(*r.solution == Matrix(2, 1, 2, {0, 0}));
  REQUIRE(r.nullspace.cols() == 1);
  CHECK(r.nullspace == Matrix(2, 1, 2, {1, 1}));
}

TEST_CASE("rref_solve on the empty system") {
  Matrix a(0, 0, 2);
  Matrix b(0, 1, 2);
  auto r = rref_solve(a, b);
  REQUIRE(r.solution);
  CHECK(r.solution->rows() == 0);
  CHECK(r.nullspace.cols() == 0);
}

TEST_CASE("rref_solve reports inconsistency and keeps the nullspace") {
  Matrix a(2, 2, 3, {1, 1, 1, 1});
  Matrix b(2, 1, 3, {1, 2});
  auto r = rref_solve(a, b);
  CHECK_FALSE(r.solution);
  CHECK(r.nullspace.cols() == 1);
  CHECK((a * r.nullspace).is_zero());
}

TEST_CASE("rref_solve rejects mismatched shapes") {
  CHECK_THROWS_AS(rref_solve(Matrix(2, 2, 2), Matrix(3, 1, 2)), std::invalid_argument);
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(Matrix(2, 2, 2, {1, 0, 0, 1})).cols() == 0);
  CHECK(kernel_basis(Matrix(2, 2, 2, {1, 1, 1, 1})) == Matrix(2, 1, 2, {1, 1}));
  CHECK(kernel_basis(Matrix(2, 0, 2)).cols() == 0);
}

TEST_CASE("quotient_with_section examples") {
  auto q = quotient_with_section(2, Matrix(2, 1, 2, {1, 0}));
  CHECK(q.dim() == 1);
  CHECK(q.projection == Matrix(1, 2, 2, {0, 1}));

  auto id = quotient_with_section(3, Matrix(3, 0, 2));
  CHECK(id.projection.is_identity());

  auto zero = quotient_with_section(2, Matrix::identity(2, 2));
  CHECK(zero.dim() == 0);
}

TEST_CASE("field arithmetic") {
  PrimeField f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.reduce(-1) == 6);
  CHECK_THROWS(PrimeField(4));
  CHECK_THROWS(f.inv(0));
}

TEST_CASE("inverse and products") {
  Matrix a(2, 2, 5, {1, 2, 3, 4});
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK((a * *inv).is_identity());
  CHECK_FALSE(inverse(Matrix(2, 2, 5, {1, 2, 2, 4})));
  CHECK_THROWS_AS(Matrix(2, 3, 5) * Matrix(2, 3, 5), std::invalid_argument);
}

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Fp p, int sparsity) {
  Matrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 10) >= sparsity) m.set_raw(i, j, static_cast<Fp>(rng() % p));
  return m;
}

}  // namespace

TEST_CASE("property: rank-nullity, solutions and quotients on random matrices") {
  std::mt19937_64 rng(20240611);
  const Fp primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 300; ++trial) {
    Fp p = primes[trial % 4];
    std::size_t r = rng() % 7, c = rng() % 7;
    Matrix a = random_matrix(rng, r, c, p, static_cast<int>(rng() % 8));
    Matrix k = kernel_basis(a);
    CHECK(rank(a) == a.cols() - k.cols());
    CHECK((a * k).is_zero());
    CHECK(rank(k) == k.cols());

    Matrix x = random_matrix(rng, c, 1, p, 3);
    Matrix b = a * x;
    auto s = rref_solve(a, b);
    REQUIRE(s.solution);
    CHECK(a * *s.solution == b);

    auto q = quotient_with_section(r, a);
    CHECK((q.projection * q.section).is_identity());
    CHECK((q.projection * a).is_zero());
    CHECK(q.dim() == r - rank(a));
  }
}
