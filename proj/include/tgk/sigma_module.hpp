#pragma once

// Finite modules over GF(p)[C_p]: a vector space with an automorphism sigma of
// order dividing p.  Over GF(p) such a module is a direct sum of Jordan blocks
// M_1..M_p of the unipotent sigma, and the block multiplicities are recovered
// from the ranks r_k of (sigma - 1)^k:
//
//   m_i = r_{i-1} - 2 r_i + r_{i+1}.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tgk/fpmatrix.hpp"

namespace tgk {

// Multiplicities of the cyclic modules M_1..M_p.
class ModuleMultiset {
 public:
  explicit ModuleMultiset(Prime p);
  ModuleMultiset(Prime p, const std::map<std::size_t, std::size_t>& blocks);

  std::uint32_t p() const { return p_.value(); }
  Prime prime() const { return p_; }
  // Multiplicity of M_i, 1 <= i <= p.
  std::size_t count(std::size_t i) const;
  void set(std::size_t i, std::size_t multiplicity);
  std::size_t dimension() const;
  std::size_t block_count() const;
  bool empty() const { return block_count() == 0; }
  // Only the nonzero multiplicities.
  std::map<std::size_t, std::size_t> blocks() const;

  ModuleMultiset& operator+=(const ModuleMultiset& other);
  friend ModuleMultiset operator+(ModuleMultiset a, const ModuleMultiset& b) { return a += b; }
  friend bool operator==(const ModuleMultiset& a, const ModuleMultiset& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

  // "{M4:1, M5:1}"; "{}" for the zero module.
  std::string to_string() const;

 private:
  Prime p_;
  std::vector<std::size_t> m_;  // index 0 unused
};

class SigmaModule {
 public:
  // Rejects sigma unless it is square with sigma^p = 1.
  explicit SigmaModule(Matrix sigma);

  static SigmaModule trivial(Prime p, std::size_t dim);
  // Single Jordan block M_size: sigma e_j = e_j + e_{j+1}, so (sigma-1) shifts
  // e_j to e_{j+1}; e_0 generates and e_{size-1} spans the fixed line.
  static SigmaModule jordan_block(Prime p, std::size_t size);
  // Block sum in increasing block size.
  static SigmaModule from_multiset(const ModuleMultiset& m);
  // Regular module on a basis permuted cyclically: e_i -> e_{i+1 mod n}.
  static SigmaModule cyclic_shift(Prime p, std::size_t n);

  std::uint32_t p() const { return sigma_.p(); }
  Prime prime() const { return sigma_.prime(); }
  std::size_t dim() const { return sigma_.rows(); }
  const Matrix& sigma() const { return sigma_; }
  Matrix sigma_minus_one() const { return sigma_.minus_identity(); }

  // r_k = rank (sigma-1)^k for k = 0..p+1.
  std::vector<std::size_t> rank_profile() const;
  ModuleMultiset decompose() const;
  // (sigma-1)^k M.
  Subspace power_image(std::size_t k) const;
  Subspace fixed_submodule() const;

  // Restriction to an invariant subspace, in the subspace's echelon basis.
  SigmaModule submodule(const Subspace& invariant) const;
  // M / W on the complement coordinates of W (see Subspace::complement_coordinates).
  SigmaModule quotient(const Subspace& invariant) const;
  // Transpose-inverse action.
  SigmaModule dual() const;
  SigmaModule conjugated(const Matrix& change_of_basis) const;

  friend bool operator==(const SigmaModule& a, const SigmaModule& b) {
    return a.sigma_ == b.sigma_;
  }

 private:
  Matrix sigma_;
};

SigmaModule direct_sum(const SigmaModule& a, const SigmaModule& b);
// Diagonal action on A (x) B; basis (i, j) at index i * dim B + j.
SigmaModule tensor_product(const SigmaModule& a, const SigmaModule& b);

// Sorted k-subsets of {0..n-1} in lexicographic order.  The basis of the
// k-th exterior power uses e_{i1} ^ ... ^ e_{ik} with i1 < ... < ik.
std::vector<std::vector<std::size_t>> exterior_basis(std::size_t n, std::size_t k);
std::size_t exterior_index(const std::vector<std::vector<std::size_t>>& basis,
                           const std::vector<std::size_t>& subset);
// Induced action on the k-th exterior power: the coefficient of e_J in
// sigma(e_I) is the minor det sigma[J, I].
SigmaModule exterior_power(const SigmaModule& a, std::size_t k);
SigmaModule exterior_square(const SigmaModule& a);
// Pair labels "l_i^l_j" matching exterior_basis(n, 2).
std::vector<std::string> exterior_labels(const std::vector<std::string>& labels, std::size_t k);

// Sparse element of an exterior algebra: sorted index tuple -> coefficient.
using Multivector = std::map<std::vector<std::size_t>, Residue>;
// Wedge of two multivectors, with the sign of the merging permutation.  Terms
// with a repeated index vanish.
Multivector wedge(const Multivector& a, const Multivector& b, std::uint32_t p);
Vec to_coordinates(const Multivector& m, std::size_t n, std::size_t k);
Multivector from_coordinates(std::span<const Residue> v, std::size_t n, std::size_t k);

}  // namespace tgk
