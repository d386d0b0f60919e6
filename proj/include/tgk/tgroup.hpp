#pragma once

// T-groups: T = N . <sigma> with N an elementary abelian normal subgroup of
// index p, sigma acting on N through a matrix S with S^p = 1, and x = sigma^p
// a fixed vector of N.  Elements are pairs (v, k) meaning v * sigma^k, with
//
//   (v,k)(w,l) = (v + S^k w + c x, k + l mod p),   c = 1 iff k + l >= p.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tgk/sigma_module.hpp"

namespace tgk {

struct TElement {
  Vec v;
  Residue k = 0;
  friend bool operator==(const TElement&, const TElement&) = default;
  friend auto operator<=>(const TElement&, const TElement&) = default;
};

// (t_1..t_p, u).  t is indexed 1..p; t[0] is unused.
struct TInvariants {
  std::uint32_t p = 2;
  std::vector<std::size_t> t;
  std::size_t u = 1;

  TInvariants() = default;
  TInvariants(std::uint32_t prime, std::vector<std::size_t> t_values, std::size_t u_value);

  std::size_t ti(std::size_t i) const { return i < t.size() ? t[i] : 0; }
  bool upper_blocks_zero() const;  // t_i = 0 for all 2 <= i <= p
  // Description of the first violated validity condition, if any.
  std::optional<std::string> violation() const;
  bool valid() const { return !violation(); }
  // "(t1=1, t5=2, u=1)", listing only the nonzero t_i.
  std::string to_string() const;

  friend bool operator==(const TInvariants&, const TInvariants&) = default;
};

// Every valid tuple for p whose predicted dim N lies in [min_dim, max_dim].
std::vector<TInvariants> valid_tuples(std::uint32_t p, std::size_t min_dim, std::size_t max_dim);
// Every valid tuple with sum_i i t_i <= bound.
std::vector<TInvariants> valid_tuples_weighted(std::uint32_t p, std::size_t bound);

class TGroup {
 public:
  // Rejects x outside the fixed space of sigma.
  TGroup(SigmaModule n, Vec x);

  std::uint32_t p() const { return n_.p(); }
  Prime prime() const { return n_.prime(); }
  std::size_t dim() const { return n_.dim(); }
  const SigmaModule& module() const { return n_; }
  const Matrix& sigma() const { return n_.sigma(); }
  const Vec& x() const { return x_; }
  // log_p |T|.
  std::size_t order_exponent() const { return dim() + 1; }
  bool is_abelian() const { return sigma().is_identity(); }

  TElement identity() const { return {zero_vec(dim()), 0}; }
  TElement lift() const { return {zero_vec(dim()), 1}; }
  TElement in_n(Vec v) const;

  TElement multiply(const TElement& a, const TElement& b) const;
  TElement inverse(const TElement& a) const;
  TElement power(const TElement& a, std::int64_t n) const;
  TElement commutator(const TElement& a, const TElement& b) const;  // a b a^-1 b^-1
  TElement iterated_commutator(const TElement& a, const TElement& b, std::size_t n) const;
  TElement conjugate(const TElement& g, const TElement& a) const;  // g a g^-1

  // Row-major enumeration: index = k * p^dim + sum_j v_j p^j.
  std::size_t order() const;
  TElement element_at(std::size_t index) const;
  std::size_t index_of(const TElement& a) const;

  std::string to_string() const;

 private:
  void check(const TElement& a) const;

  SigmaModule n_;
  Vec x_;
  std::vector<Matrix> sigma_powers_;  // S^0..S^{p-1}
};

// Element-count cap for operations that enumerate T.
inline constexpr std::size_t kMaxEnumeratedOrder = std::size_t{1} << 20;

// T_(i) = (S - 1)^(i-1) N for i >= 2.
Subspace lower_central(const TGroup& t, std::size_t i);
// The same subgroup built from commutators of group elements only.
Subspace lower_central_by_commutators(const TGroup& t, std::size_t i);
// Span of all p-th powers of elements, by enumeration.
Subspace pth_powers_by_enumeration(const TGroup& t);

TInvariants invariants(const TGroup& t);
TGroup construct_canonical(const TInvariants& inv);
bool is_isomorphic(const TGroup& a, const TGroup& b);
TGroup heisenberg(Prime p);
// The nilpotency class: least c with T_(c+1) = 1.
std::size_t nilpotency_class(const TGroup& t);

struct Center {
  Subspace in_n;     // Z(T) intersected with N
  bool whole_group;  // Z(T) = T
};
Center center(const TGroup& t);

struct MaximalElementaryAbelian {
  std::size_t count = 0;
  // Each witness lists generators of one subgroup.
  std::vector<std::vector<TElement>> witnesses;
};
// Index-p subgroups of T that are abelian of exponent dividing p.
MaximalElementaryAbelian maximal_elementary_abelian_subgroups(const TGroup& t);

struct H1Prediction {
  std::size_t one_plus_dim_n = 0;  // 1 + dim H^1(N)
  std::size_t dim_n = 0;
  std::optional<std::size_t> dim_center;  // dim H^1(Z(T)) when Z(T) has exponent p
};
H1Prediction predicted_h1_dims(const TInvariants& inv);

}  // namespace tgk
