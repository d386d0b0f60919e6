#include "tgk/fpmatrix.hpp"

#include <algorithm>
#include <sstream>

#include "tgk/kernels.hpp"

namespace tgk {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(std::int64_t value) {
  if (value >= 65536 || !is_prime(value)) {
    throw MathError("not a supported prime: " + std::to_string(value));
  }
  p_ = static_cast<std::uint32_t>(value);
}

Residue reduce_mod(std::int64_t a, std::uint32_t p) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

Residue pow_mod(Residue a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  if (a % p == 0) throw MathError("zero has no inverse mod " + std::to_string(p));
  return pow_mod(a, p - 2, p);
}

void require_same_prime(std::uint32_t a, std::uint32_t b, const char* what) {
  if (a != b) {
    throw MathError(std::string(what) + ": mismatched primes " + std::to_string(a) + " and " +
                    std::to_string(b));
  }
}

Vec zero_vec(std::size_t n) { return Vec(n, 0); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v.at(i) = 1;
  return v;
}

bool is_zero(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; });
}

Vec add(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
  return out;
}

Vec sub(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + p - b[i]) % p;
  return out;
}

Vec scale(std::span<const Residue> a, Residue c, std::uint32_t p) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<Residue>(std::uint64_t{a[i]} * c % p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Prime p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Prime p, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw MathError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_columns(Prime p, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(p, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw MathError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.data_[r * m.cols_ + c] = cols[c][r] % p;
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  data_.at(r * cols_ + c) = reduce_mod(value, p());
}

void Matrix::add_to(std::size_t r, std::size_t c, std::int64_t value) {
  auto& slot = data_.at(r * cols_ + c);
  slot = reduce_mod(std::int64_t{slot} + value, p());
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = data_[r * cols_ + c];
  return v;
}

Vec Matrix::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw MathError("matrix-vector size mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const Residue* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t{row[c]} * v[c];
    out[r] = static_cast<Residue>(acc % p());
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_prime(a.p(), b.p(), "matrix product");
  if (a.cols_ != b.rows_) throw MathError("matrix product shape mismatch");
  Matrix c(a.p_, a.rows_, b.cols_);
  kernels::matmul(a.data_, b.data_, c.data_, a.rows_, a.cols_, b.cols_, a.p());
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_prime(a.p(), b.p(), "matrix sum");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("matrix sum shape mismatch");
  Matrix c(a.p_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = (a.data_[i] + b.data_[i]) % a.p();
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_prime(a.p(), b.p(), "matrix difference");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("matrix difference shape mismatch");
  Matrix c(a.p_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    c.data_[i] = (a.data_[i] + a.p() - b.data_[i]) % a.p();
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::pow(std::uint64_t e) const {
  if (!is_square()) throw MathError("power of a non-square matrix");
  Matrix result = identity(p_, rows_);
  Matrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Matrix Matrix::minus_identity() const {
  if (!is_square()) throw MathError("minus_identity of a non-square matrix");
  Matrix m = *this;
  for (std::size_t i = 0; i < rows_; ++i) m.add_to(i, i, -1);
  return m;
}

Matrix Matrix::kron(const Matrix& other) const {
  require_same_prime(p(), other.p(), "Kronecker product");
  Matrix k(p_, rows_ * other.rows_, cols_ * other.cols_);
  for (std::size_t r1 = 0; r1 < rows_; ++r1) {
    for (std::size_t c1 = 0; c1 < cols_; ++c1) {
      const std::uint64_t a = (*this)(r1, c1);
      if (a == 0) continue;
      for (std::size_t r2 = 0; r2 < other.rows_; ++r2) {
        for (std::size_t c2 = 0; c2 < other.cols_; ++c2) {
          k.data_[(r1 * other.rows_ + r2) * k.cols_ + c1 * other.cols_ + c2] =
              static_cast<Residue>(a * other(r2, c2) % p());
        }
      }
    }
  }
  return k;
}

Matrix Matrix::block_diag(const Matrix& other) const {
  require_same_prime(p(), other.p(), "block diagonal sum");
  Matrix m(p_, rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.data_[r * m.cols_ + c] = (*this)(r, c);
  }
  for (std::size_t r = 0; r < other.rows_; ++r) {
    for (std::size_t c = 0; c < other.cols_; ++c) {
      m.data_[(rows_ + r) * m.cols_ + cols_ + c] = other(r, c);
    }
  }
  return m;
}

Matrix Matrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Matrix m(p_, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m.data_[r * cols.size() + c] = (*this)(rows[r], cols[c]);
    }
  }
  return m;
}

std::size_t Matrix::rank() const {
  std::vector<Residue> work = data_;
  return kernels::rref(work, rows_, cols_, p()).size();
}

Residue Matrix::det() const {
  if (!is_square()) throw MathError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<Residue> a = data_;
  std::uint64_t d = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap_ranges(a.begin() + piv * n, a.begin() + (piv + 1) * n, a.begin() + col * n);
      d = (p() - d) % p();
    }
    const std::uint64_t pv = a[col * n + col];
    d = d * pv % p();
    const std::uint64_t pinv = inverse_mod(static_cast<Residue>(pv), p());
    for (std::size_t r = col + 1; r < n; ++r) {
      const std::uint64_t f = a[r * n + col] * pinv % p();
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) {
        a[r * n + c] = static_cast<Residue>((a[r * n + c] + (p() - f) * a[col * n + c]) % p());
      }
    }
  }
  return static_cast<Residue>(d);
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw MathError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<Residue> aug(n * 2 * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r * 2 * n + c] = (*this)(r, c);
    aug[r * 2 * n + n + r] = 1;
  }
  auto pivots = kernels::rref(aug, n, 2 * n, p());
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
    throw MathError("matrix is singular");
  }
  Matrix inv(p_, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv.data_[r * n + c] = aug[r * 2 * n + n + c];
  }
  return inv;
}

bool Matrix::is_identity() const { return is_square() && *this == identity(p_, rows_); }

bool Matrix::is_zero() const { return tgk::is_zero(data_); }

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(Prime p, std::size_t ambient_dim) : p_(p), ambient_(ambient_dim) {}

Subspace Subspace::span(Prime p, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
  Subspace s(p, ambient_dim);
  if (vectors.empty() || ambient_dim == 0) return s;
  std::vector<Residue> work;
  work.reserve(vectors.size() * ambient_dim);
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw MathError("spanning vector has wrong length");
    for (auto r : v) work.push_back(r % p);
  }
  s.pivots_ = kernels::rref(work, vectors.size(), ambient_dim, p);
  s.basis_.reserve(s.pivots_.size());
  for (std::size_t r = 0; r < s.pivots_.size(); ++r) {
    s.basis_.emplace_back(work.begin() + r * ambient_dim, work.begin() + (r + 1) * ambient_dim);
  }
  return s;
}

Subspace Subspace::whole(Prime p, std::size_t ambient_dim) {
  std::vector<Vec> units;
  for (std::size_t i = 0; i < ambient_dim; ++i) units.push_back(unit_vec(ambient_dim, i));
  return span(p, ambient_dim, units);
}

Subspace Subspace::image(const Matrix& m) {
  std::vector<Vec> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return span(m.prime(), m.rows(), cols);
}

Subspace Subspace::kernel(const Matrix& m) {
  const std::size_t n = m.cols();
  std::vector<Residue> work(m.data().begin(), m.data().end());
  auto pivots = kernels::rref(work, m.rows(), n, m.p());
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = (m.p() - work[r * n + free]) % m.p();
    }
    basis.push_back(std::move(v));
  }
  return span(m.prime(), n, basis);
}

Vec Subspace::reduce(std::span<const Residue> v) const {
  if (v.size() != ambient_) throw MathError("vector has wrong length for subspace");
  Vec out(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Residue f = out[pivots_[i]];
    if (f == 0) continue;
    const std::uint64_t neg = p() - f;
    for (std::size_t c = pivots_[i]; c < ambient_; ++c) {
      out[c] = static_cast<Residue>((out[c] + neg * basis_[i][c]) % p());
    }
  }
  return out;
}

bool Subspace::contains(std::span<const Residue> v) const { return tgk::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  require_same_prime(p(), other.p(), "subspace containment");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const Vec& v) { return contains(v); });
}

Vec Subspace::coordinates(std::span<const Residue> v) const {
  if (!contains(v)) throw MathError("vector is not in the subspace");
  Vec coords(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) coords[i] = v[pivots_[i]];
  return coords;
}

Subspace Subspace::operator+(const Subspace& other) const {
  require_same_prime(p(), other.p(), "subspace sum");
  if (ambient_ != other.ambient_) throw MathError("subspace sum of different ambient spaces");
  std::vector<Vec> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(p_, ambient_, all);
}

Subspace Subspace::mapped(const Matrix& m) const {
  std::vector<Vec> images;
  images.reserve(basis_.size());
  for (const auto& v : basis_) images.push_back(m.apply(v));
  return span(p_, m.rows(), images);
}

bool Subspace::is_invariant(const Matrix& m) const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [&](const Vec& v) { return contains(m.apply(v)); });
}

std::vector<std::size_t> Subspace::complement_coordinates() const {
  std::vector<bool> is_pivot(ambient_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient_; ++i) {
    if (!is_pivot[i]) out.push_back(i);
  }
  return out;
}

}  // namespace tgk
