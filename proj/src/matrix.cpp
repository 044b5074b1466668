#include "exangulate/matrix.hpp"

#include <sstream>

namespace exangulate::alg {

bool is_prime(Fp p) {
  if (p < 2) return false;
  for (Fp d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Fp p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  if (p > 65521) throw std::invalid_argument("modulus too large");
}

Fp PrimeField::reduce(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<Fp>(m);
}

Fp PrimeField::inv(Fp a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_;
  Fp e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Fp>(result);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Fp p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Fp p,
               std::initializer_list<std::int64_t> row_major)
    : Matrix(rows, cols, p) {
  if (row_major.size() != rows * cols)
    throw std::invalid_argument("entry count does not match shape");
  PrimeField f(p);
  std::size_t i = 0;
  for (auto v : row_major) a_[i++] = f.reduce(v);
}

Matrix Matrix::identity(std::size_t n, Fp p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1 % p;
  return m;
}

Matrix Matrix::column(const std::vector<Fp>& v, Fp p) {
  Matrix m(v.size(), 1, p);
  for (std::size_t i = 0; i < v.size(); ++i) m.a_[i] = v[i] % p;
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  a_[r * cols_ + c] = static_cast<Fp>(m);
}

bool Matrix::is_zero() const {
  for (Fp v : a_)
    if (v) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

static void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("matrices over different fields");
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(*this, o);
  if (cols_ != o.rows_)
    throw std::invalid_argument("dimension mismatch in product: " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                                std::to_string(o.cols_));
  Matrix r(rows_, o.cols_, p_);
  std::vector<std::uint64_t> acc(o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t v = a_[i * cols_ + k];
      if (!v) continue;
      const Fp* orow = &o.a_[k * o.cols_];
      for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + v * orow[j]) % p_;
    }
    for (std::size_t j = 0; j < o.cols_; ++j) r.a_[i * o.cols_ + j] = static_cast<Fp>(acc[j]);
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch in sum");
  Matrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("dimension mismatch in difference");
  Matrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + p_ - o.a_[i]) % p_;
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] ? p_ - a_[i] : 0;
  return r;
}

Matrix Matrix::scaled(Fp s) const {
  Matrix r(rows_, cols_, p_);
  std::uint64_t sv = s % p_;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<Fp>(a_[i] * sv % p_);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = a_[i * cols_ + j];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

std::vector<Fp> Matrix::col(std::size_t c) const {
  std::vector<Fp> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

Matrix Matrix::col_range(std::size_t first, std::size_t count) const {
  return block(0, first, rows_, count);
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const {
  return block(first, 0, count, cols_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  Matrix r(nr, nc, p_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.a_[i * nc + j] = at(r0 + i, c0 + j);
  return r;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("paste outside matrix");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) a_[(r0 + i) * cols_ + c0 + j] = b.at(i, j) % p_;
}

std::vector<Fp> Matrix::vec() const {
  std::vector<Fp> v;
  v.reserve(a_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows, Fp p) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    cols += b.cols();
  }
  Matrix r(rows, cols, p);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    r.paste(0, c, b);
    c += b.cols();
  }
  return r;
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols, Fp p) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += b.rows();
  }
  Matrix r(rows, cols, p);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    r.paste(off, 0, b);
    off += b.rows();
  }
  return r;
}

Matrix block_diag(const std::vector<Matrix>& blocks, Fp p) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix r(rows, cols, p);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    r.paste(ro, co, b);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

RowEchelon row_reduce(const Matrix& a) {
  PrimeField f(a.prime());
  Matrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Fp t = m.at(r, j);
        m.set_raw(r, j, m.at(piv, j));
        m.set_raw(piv, j, t);
      }
    Fp iv = f.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.set_raw(r, j, f.mul(m.at(r, j), iv));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      Fp factor = m.at(i, c);
      if (!factor) continue;
      for (std::size_t j = c; j < m.cols(); ++j)
        m.set_raw(i, j, f.sub(m.at(i, j), f.mul(factor, m.at(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return row_reduce(a).pivots.size(); }

static Matrix kernel_from_rref(const RowEchelon& re, std::size_t cols, Fp p) {
  PrimeField f(p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : re.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(cols, free.size(), p);
  for (std::size_t t = 0; t < free.size(); ++t) {
    std::size_t fc = free[t];
    k.set_raw(fc, t, 1);
    for (std::size_t r = 0; r < re.pivots.size(); ++r)
      k.set_raw(re.pivots[r], t, f.neg(re.reduced.at(r, fc)));
  }
  return k;
}

Matrix kernel_basis(const Matrix& a) {
  return kernel_from_rref(row_reduce(a), a.cols(), a.prime());
}

Matrix column_space_basis(const Matrix& a) {
  auto re = row_reduce(a);
  Matrix r(a.rows(), re.pivots.size(), a.prime());
  for (std::size_t t = 0; t < re.pivots.size(); ++t) r.paste(0, t, a.col_range(re.pivots[t], 1));
  return r;
}

SolveResult rref_solve(const Matrix& a, const Matrix& b) {
  if (b.cols() != 1) throw std::invalid_argument("right-hand side must be a single column");
  if (a.rows() != b.rows()) throw std::invalid_argument("dimension mismatch: A.rows != b.rows");
  auto sol = solve_matrix(a, b);
  return {sol, kernel_basis(a)};
}

std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("dimension mismatch: A.rows != B.rows");
  Fp p = a.prime();
  Matrix aug = hstack({a, b}, a.rows(), p);
  auto re = row_reduce(aug);
  Matrix x(a.cols(), b.cols(), p);
  for (std::size_t r = 0; r < re.pivots.size(); ++r) {
    std::size_t c = re.pivots[r];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.set_raw(c, j, re.reduced.at(r, a.cols() + j));
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_matrix(a, Matrix::identity(a.rows(), a.prime()));
}

Quotient quotient_with_section(std::size_t v_dim, const Matrix& w_basis) {
  if (w_basis.rows() != v_dim && w_basis.cols() != 0)
    throw std::invalid_argument("column length mismatch in quotient");
  Fp p = w_basis.prime();
  PrimeField f(p);
  RowEchelon re = w_basis.cols() ? row_reduce(w_basis.transpose()) : RowEchelon{Matrix(0, v_dim, p), {}};
  std::vector<bool> is_pivot(v_dim, false);
  for (auto c : re.pivots) is_pivot[c] = true;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < v_dim; ++c)
    if (!is_pivot[c]) keep.push_back(c);
  Matrix proj(keep.size(), v_dim, p), sec(v_dim, keep.size(), p);
  for (std::size_t t = 0; t < keep.size(); ++t) {
    std::size_t j = keep[t];
    sec.set_raw(j, t, 1);
    proj.set_raw(t, j, 1);
    // v_j minus the contribution absorbed by clearing pivot coordinates
    for (std::size_t r = 0; r < re.pivots.size(); ++r)
      proj.set_raw(t, re.pivots[r], f.neg(re.reduced.at(r, j)));
  }
  return {std::move(proj), std::move(sec)};
}

bool in_column_span(const Matrix& a, const Matrix& b) {
  if (b.cols() == 0) return true;
  return solve_matrix(a, b).has_value();
}

}  // namespace exangulate::alg
