#pragma once

// Dense exact linear algebra over the prime field GF(p).
//
// Vectors are column vectors; a matrix acts on the left.  Every entry is kept
// reduced to 0..p-1.  Objects carry their own p and refuse to mix with a
// different one.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgk {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A validated prime.  Limited to 16 bits so products fit in 32-bit words.
class Prime {
 public:
  explicit Prime(std::int64_t value);
  std::uint32_t value() const { return p_; }
  operator std::uint32_t() const { return p_; }
  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t p_;
};

Residue reduce_mod(std::int64_t a, std::uint32_t p);
Residue inverse_mod(Residue a, std::uint32_t p);
Residue pow_mod(Residue a, std::uint64_t e, std::uint32_t p);

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(std::span<const Residue> v);
Vec add(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p);
Vec sub(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p);
Vec scale(std::span<const Residue> a, Residue c, std::uint32_t p);

class Matrix {
 public:
  Matrix(Prime p, std::size_t rows, std::size_t cols);
  static Matrix identity(Prime p, std::size_t n);
  static Matrix from_rows(Prime p, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_columns(Prime p, std::size_t rows, const std::vector<Vec>& cols);

  Prime prime() const { return p_; }
  std::uint32_t p() const { return p_.value(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);
  void add_to(std::size_t r, std::size_t c, std::int64_t value);

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vec column(std::size_t c) const;
  std::span<const Residue> data() const { return data_; }

  Vec apply(std::span<const Residue> v) const;
  Matrix transpose() const;
  Matrix pow(std::uint64_t e) const;
  Matrix inverse() const;
  Matrix minus_identity() const;
  Matrix kron(const Matrix& other) const;
  Matrix block_diag(const Matrix& other) const;
  // Submatrix on the given row and column indices.
  Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  std::size_t rank() const;
  Residue det() const;
  bool is_identity() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  friend class Subspace;
  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

void require_same_prime(std::uint32_t a, std::uint32_t b, const char* what);

// A linear subspace of GF(p)^n held as the reduced row echelon form of a
// spanning set.  Equal subspaces have identical representations.
class Subspace {
 public:
  Subspace(Prime p, std::size_t ambient_dim);
  static Subspace span(Prime p, std::size_t ambient_dim, const std::vector<Vec>& vectors);
  static Subspace whole(Prime p, std::size_t ambient_dim);
  // Column space of a matrix.
  static Subspace image(const Matrix& m);
  // Null space {v : m v = 0}.
  static Subspace kernel(const Matrix& m);

  std::uint32_t p() const { return p_.value(); }
  Prime prime() const { return p_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Residue of v after clearing every pivot coordinate.
  Vec reduce(std::span<const Residue> v) const;
  bool contains(std::span<const Residue> v) const;
  bool contains(const Subspace& other) const;
  // Coefficients of v in basis(); v must lie in the subspace.
  Vec coordinates(std::span<const Residue> v) const;
  Subspace operator+(const Subspace& other) const;
  Subspace mapped(const Matrix& m) const;
  bool is_invariant(const Matrix& m) const;
  // Indices of the coordinates that are not pivots; their unit vectors span a
  // complement.
  std::vector<std::size_t> complement_coordinates() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.p_ == b.p_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Prime p_;
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace tgk
