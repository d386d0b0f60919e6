#pragma once

// Hot loops of the GF(p) linear algebra.  Each kernel has a serial reference
// and an OpenMP version; they must agree bit for bit.  Matrix code picks the
// parallel path once the work is large enough to pay for a thread team.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tgk::kernels {

// c = a * b for row-major a (n x k), b (k x m).  c is resized to n x m.
void matmul_serial(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                   std::vector<std::uint32_t>& c, std::size_t n, std::size_t k,
                   std::size_t m, std::uint32_t p);
void matmul_parallel(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::vector<std::uint32_t>& c, std::size_t n, std::size_t k,
                     std::size_t m, std::uint32_t p);

// In-place reduced row echelon form of a row-major rows x cols matrix.
// Returns the pivot column of each leading row; rows past the rank are zero.
std::vector<std::size_t> rref_serial(std::span<std::uint32_t> a, std::size_t rows,
                                     std::size_t cols, std::uint32_t p);
std::vector<std::size_t> rref_parallel(std::span<std::uint32_t> a, std::size_t rows,
                                       std::size_t cols, std::uint32_t p);

// Work size (multiply-adds) above which Matrix code uses the parallel kernels.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 18;

void matmul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
            std::vector<std::uint32_t>& c, std::size_t n, std::size_t k, std::size_t m,
            std::uint32_t p);
std::vector<std::size_t> rref(std::span<std::uint32_t> a, std::size_t rows, std::size_t cols,
                              std::uint32_t p);

}  // namespace tgk::kernels
