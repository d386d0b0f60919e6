#include "tgk/kernels.hpp"

#include <algorithm>
#include <cstdint>

#include <omp.h>

namespace tgk::kernels {

namespace {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and a != 0.
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Row i -= factor * row r, restricted to columns >= from.
inline void axpy_row(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t factor,
                     std::size_t from, std::size_t cols, std::uint32_t p) {
  const std::uint64_t neg = p - factor;
  for (std::size_t c = from; c < cols; ++c) {
    dst[c] = static_cast<std::uint32_t>((dst[c] + neg * src[c]) % p);
  }
}

}  // namespace

void matmul_serial(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                   std::vector<std::uint32_t>& c, std::size_t n, std::size_t k,
                   std::size_t m, std::uint32_t p) {
  c.assign(n * m, 0);
  std::vector<std::uint64_t> acc(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t l = 0; l < k; ++l) {
      const std::uint64_t ail = a[i * k + l];
      if (ail == 0) continue;
      const std::uint32_t* brow = b.data() + l * m;
      for (std::size_t j = 0; j < m; ++j) acc[j] += ail * brow[j];
    }
    for (std::size_t j = 0; j < m; ++j) c[i * m + j] = static_cast<std::uint32_t>(acc[j] % p);
  }
}

void matmul_parallel(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::vector<std::uint32_t>& c, std::size_t n, std::size_t k,
                     std::size_t m, std::uint32_t p) {
  c.assign(n * m, 0);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> acc(m);
#pragma omp for schedule(static)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t l = 0; l < k; ++l) {
        const std::uint64_t ail = a[i * k + l];
        if (ail == 0) continue;
        const std::uint32_t* brow = b.data() + l * m;
        for (std::size_t j = 0; j < m; ++j) acc[j] += ail * brow[j];
      }
      for (std::size_t j = 0; j < m; ++j) c[i * m + j] = static_cast<std::uint32_t>(acc[j] % p);
    }
  }
}

std::vector<std::size_t> rref_serial(std::span<std::uint32_t> a, std::size_t rows,
                                     std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols,
                       a.begin() + rank * cols);
    }
    std::uint32_t* prow = a.data() + rank * cols;
    const std::uint64_t s = inv(prow[col], p);
    for (std::size_t c = col; c < cols; ++c) prow[c] = static_cast<std::uint32_t>(prow[c] * s % p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::uint32_t f = a[r * cols + col];
      if (f) axpy_row(a.data() + r * cols, prow, f, col, cols, p);
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

std::vector<std::size_t> rref_parallel(std::span<std::uint32_t> a, std::size_t rows,
                                       std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  const auto nrows = static_cast<std::int64_t>(rows);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols,
                       a.begin() + rank * cols);
    }
    std::uint32_t* prow = a.data() + rank * cols;
    const std::uint64_t s = inv(prow[col], p);
    for (std::size_t c = col; c < cols; ++c) prow[c] = static_cast<std::uint32_t>(prow[c] * s % p);
    const auto keep = static_cast<std::int64_t>(rank);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < nrows; ++r) {
      if (r == keep) continue;
      const std::uint32_t f = a[static_cast<std::size_t>(r) * cols + col];
      if (f) axpy_row(a.data() + static_cast<std::size_t>(r) * cols, prow, f, col, cols, p);
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

void matmul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
            std::vector<std::uint32_t>& c, std::size_t n, std::size_t k, std::size_t m,
            std::uint32_t p) {
  if (n * k * m >= kParallelThreshold && omp_get_max_threads() > 1) {
    matmul_parallel(a, b, c, n, k, m, p);
  } else {
    matmul_serial(a, b, c, n, k, m, p);
  }
}

std::vector<std::size_t> rref(std::span<std::uint32_t> a, std::size_t rows, std::size_t cols,
                              std::uint32_t p) {
  if (rows * rows * cols >= kParallelThreshold && omp_get_max_threads() > 1) {
    return rref_parallel(a, rows, cols, p);
  }
  return rref_serial(a, rows, cols, p);
}

}  // namespace tgk::kernels
