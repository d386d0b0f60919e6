#include "tgk/tgroup.hpp"

#include <functional>
#include <sstream>

namespace tgk {

// ---------------------------------------------------------------------------
// TInvariants

TInvariants::TInvariants(std::uint32_t prime, std::vector<std::size_t> t_values,
                         std::size_t u_value)
    : p(prime), t(std::move(t_values)), u(u_value) {
  t.resize(p + 1, 0);
  t[0] = 0;
}

bool TInvariants::upper_blocks_zero() const {
  for (std::size_t i = 2; i <= p; ++i) {
    if (ti(i)) return false;
  }
  return true;
}

std::optional<std::string> TInvariants::violation() const {
  if (t.size() != p + 1) return "t must have one entry per block size 1..p";
  if (u < 1 || u > p) return "u must lie in 1..p";
  if (u < p && ti(u) == 0) return "u = " + std::to_string(u) + " < p requires t_" + std::to_string(u) + " >= 1";
  if (u == p && upper_blocks_zero() && ti(1) == 0) {
    return "u = p with t_i = 0 for all i >= 2 requires t_1 >= 1";
  }
  return std::nullopt;
}

std::string TInvariants::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 1; i <= p; ++i) {
    if (ti(i)) os << 't' << i << '=' << ti(i) << ", ";
  }
  os << "u=" << u << ')';
  return os.str();
}

namespace {

void each_t_vector(std::uint32_t p, std::size_t bound,
                   const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> t(p + 1, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i > p) {
      visit(t);
      return;
    }
    for (std::size_t c = 0; used + c * i <= bound; ++c) {
      t[i] = c;
      rec(i + 1, used + c * i);
    }
    t[i] = 0;
  };
  rec(1, 0);
}

}  // namespace

std::vector<TInvariants> valid_tuples_weighted(std::uint32_t p, std::size_t bound) {
  std::vector<TInvariants> out;
  each_t_vector(p, bound, [&](const std::vector<std::size_t>& t) {
    for (std::size_t u = 1; u <= p; ++u) {
      TInvariants inv(p, t, u);
      if (inv.valid()) out.push_back(std::move(inv));
    }
  });
  return out;
}

std::vector<TInvariants> valid_tuples(std::uint32_t p, std::size_t min_dim, std::size_t max_dim) {
  std::vector<TInvariants> out;
  // dim N is sum i t_i or t_1 - 1, so a weight bound of max_dim + 1 covers both.
  for (auto& inv : valid_tuples_weighted(p, max_dim + 1)) {
    const auto d = predicted_h1_dims(inv).dim_n;
    if (d >= min_dim && d <= max_dim) out.push_back(std::move(inv));
  }
  return out;
}

// ---------------------------------------------------------------------------
// TGroup

TGroup::TGroup(SigmaModule n, Vec x) : n_(std::move(n)), x_(std::move(x)) {
  if (x_.size() != n_.dim()) throw MathError("x has the wrong dimension");
  for (auto& c : x_) c %= p();
  if (!is_zero(n_.sigma_minus_one().apply(x_))) throw MathError("x is not fixed by sigma");
  sigma_powers_.reserve(p());
  sigma_powers_.push_back(Matrix::identity(prime(), dim()));
  for (std::uint32_t k = 1; k < p(); ++k) sigma_powers_.push_back(sigma() * sigma_powers_.back());
}

void TGroup::check(const TElement& a) const {
  if (a.v.size() != dim() || a.k >= p()) throw MathError("element of a different T-group");
}

TElement TGroup::in_n(Vec v) const {
  if (v.size() != dim()) throw MathError("vector of the wrong dimension");
  for (auto& c : v) c %= p();
  return {std::move(v), 0};
}

TElement TGroup::multiply(const TElement& a, const TElement& b) const {
  check(a);
  check(b);
  Vec v = add(a.v, sigma_powers_[a.k].apply(b.v), p());
  const std::uint32_t s = a.k + b.k;
  if (s >= p()) v = add(v, x_, p());
  return {std::move(v), s % p()};
}

TElement TGroup::inverse(const TElement& a) const {
  check(a);
  // (v,k)^-1 = (w, -k) with v + S^k w + c x = 0.
  const std::uint32_t l = (p() - a.k) % p();
  Vec rhs = a.v;
  if (a.k != 0) rhs = add(rhs, x_, p());  // k + l = p carries exactly when k != 0
  Vec w = scale(sigma_powers_[l].apply(rhs), p() - 1, p());
  return {std::move(w), l};
}

TElement TGroup::power(const TElement& a, std::int64_t n) const {
  TElement base = n < 0 ? inverse(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  TElement result = identity();
  while (e) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return result;
}

TElement TGroup::commutator(const TElement& a, const TElement& b) const {
  return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

TElement TGroup::iterated_commutator(const TElement& a, const TElement& b, std::size_t n) const {
  TElement c = b;
  for (std::size_t i = 0; i < n; ++i) c = commutator(a, c);
  return c;
}

TElement TGroup::conjugate(const TElement& g, const TElement& a) const {
  return multiply(multiply(g, a), inverse(g));
}

std::size_t TGroup::order() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i <= dim(); ++i) {
    if (n > kMaxEnumeratedOrder / p()) throw MathError("group too large to enumerate");
    n *= p();
  }
  return n;
}

TElement TGroup::element_at(std::size_t index) const {
  TElement a = identity();
  for (std::size_t j = 0; j < dim(); ++j) {
    a.v[j] = static_cast<Residue>(index % p());
    index /= p();
  }
  a.k = static_cast<Residue>(index % p());
  return a;
}

std::size_t TGroup::index_of(const TElement& a) const {
  std::size_t index = a.k;
  for (std::size_t j = dim(); j-- > 0;) index = index * p() + a.v[j];
  return index;
}

std::string TGroup::to_string() const {
  std::ostringstream os;
  os << "p=" << p() << " dim=" << dim() << " sigma=" << sigma().to_string() << " x=[";
  for (std::size_t i = 0; i < x_.size(); ++i) os << (i ? " " : "") << x_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Series and invariants

Subspace lower_central(const TGroup& t, std::size_t i) {
  if (i < 2) throw MathError("lower_central needs i >= 2");
  if (i - 1 > t.p()) return Subspace(t.prime(), t.dim());
  return t.module().power_image(i - 1);
}

namespace {

// Smallest subspace containing `vectors` and closed under conjugation by the lift.
Subspace normal_closure(const TGroup& t, std::vector<Vec> vectors) {
  Subspace s = Subspace::span(t.prime(), t.dim(), vectors);
  while (true) {
    std::vector<Vec> more = s.basis();
    for (const auto& b : s.basis()) more.push_back(t.conjugate(t.lift(), t.in_n(b)).v);
    Subspace next = Subspace::span(t.prime(), t.dim(), more);
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

std::vector<TElement> generators(const TGroup& t) {
  std::vector<TElement> gens{t.lift()};
  for (std::size_t j = 0; j < t.dim(); ++j) gens.push_back(t.in_n(unit_vec(t.dim(), j)));
  return gens;
}

}  // namespace

Subspace lower_central_by_commutators(const TGroup& t, std::size_t i) {
  if (i < 2) throw MathError("lower_central needs i >= 2");
  const auto gens = generators(t);
  std::vector<Vec> comms;
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      const TElement c = t.commutator(a, b);
      if (c.k != 0) throw MathError("commutator left N");
      comms.push_back(c.v);
    }
  }
  Subspace level = normal_closure(t, comms);
  for (std::size_t j = 2; j < i; ++j) {
    comms.clear();
    for (const auto& g : gens) {
      for (const auto& b : level.basis()) comms.push_back(t.commutator(g, t.in_n(b)).v);
    }
    level = normal_closure(t, comms);
  }
  return level;
}

Subspace pth_powers_by_enumeration(const TGroup& t) {
  std::vector<Vec> powers;
  const std::size_t n = t.order();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const TElement a = t.power(t.element_at(idx), t.p());
    if (a.k != 0) throw MathError("p-th power left N");
    powers.push_back(a.v);
  }
  return Subspace::span(t.prime(), t.dim(), powers);
}

TInvariants invariants(const TGroup& t) {
  const std::uint32_t p = t.p();
  const ModuleMultiset m = t.module().decompose();
  std::vector<std::size_t> tv(p + 1, 0);
  for (std::size_t i = 1; i <= p; ++i) tv[i] = m.count(i);
  if (t.is_abelian() && is_zero(t.x())) tv[1] += 1;

  std::size_t u = 1;
  for (std::size_t i = p; i >= 2; --i) {
    if (lower_central(t, i).contains(t.x())) {
      u = i;
      break;
    }
  }
  return TInvariants(p, std::move(tv), u);
}

TGroup construct_canonical(const TInvariants& inv) {
  if (auto bad = inv.violation()) throw MathError("invalid invariant tuple: " + *bad);
  const Prime p(inv.p);
  ModuleMultiset rest(p);
  for (std::size_t i = 1; i <= inv.p; ++i) rest.set(i, inv.ti(i));

  if (inv.u < inv.p) {
    // Distinguished block X = M_u carries x on its fixed line.
    rest.set(inv.u, rest.count(inv.u) - 1);
    const SigmaModule x_block = SigmaModule::jordan_block(p, inv.u);
    SigmaModule n = direct_sum(x_block, SigmaModule::from_multiset(rest));
    Vec x = zero_vec(n.dim());
    x[inv.u - 1] = 1;
    return TGroup(std::move(n), std::move(x));
  }
  if (inv.upper_blocks_zero()) rest.set(1, rest.count(1) - 1);
  SigmaModule n = SigmaModule::from_multiset(rest);
  Vec x = zero_vec(n.dim());
  return TGroup(std::move(n), std::move(x));
}

bool is_isomorphic(const TGroup& a, const TGroup& b) {
  require_same_prime(a.p(), b.p(), "is_isomorphic");
  return invariants(a) == invariants(b);
}

TGroup heisenberg(Prime p) {
  SigmaModule n = SigmaModule::jordan_block(p, 2);
  return TGroup(std::move(n), zero_vec(2));
}

std::size_t nilpotency_class(const TGroup& t) {
  if (t.is_abelian()) return 1;
  const Matrix a = t.module().sigma_minus_one();
  Matrix power = a;
  std::size_t c = 1;
  while (!power.is_zero()) {
    power = power * a;
    ++c;
  }
  return c;
}

Center center(const TGroup& t) {
  if (t.is_abelian()) return {Subspace::whole(t.prime(), t.dim()), true};
  return {t.module().fixed_submodule(), false};
}

MaximalElementaryAbelian maximal_elementary_abelian_subgroups(const TGroup& t) {
  const Prime p = t.prime();
  // Frattini subgroup: <x> (S - 1)N.
  const Subspace phi = Subspace::span(p, t.dim(), {t.x()}) + t.module().power_image(1);
  const auto comp = phi.complement_coordinates();
  const std::size_t r = comp.size() + 1;  // dim T / Phi
  if (r > 10) throw MathError("Frattini quotient too large to enumerate hyperplanes");

  MaximalElementaryAbelian out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= p.value();

  for (std::size_t code = 1; code < total; ++code) {
    // Functional lambda with leading nonzero coefficient 1.
    Vec lambda(r);
    std::size_t c = code;
    for (std::size_t i = 0; i < r; ++i) {
      lambda[i] = static_cast<Residue>(c % p.value());
      c /= p.value();
    }
    std::size_t lead = 0;
    while (lambda[lead] == 0) ++lead;
    if (lambda[lead] != 1) continue;

    Matrix functional(p, 1, r);
    for (std::size_t i = 0; i < r; ++i) functional.set(0, i, lambda[i]);
    const Subspace h = Subspace::kernel(functional);
    std::vector<TElement> gens;
    for (const auto& b : phi.basis()) gens.push_back(t.in_n(b));
    for (const auto& b : h.basis()) {
      Vec v = zero_vec(t.dim());
      for (std::size_t j = 0; j < comp.size(); ++j) v[comp[j]] = b[j + 1];
      gens.push_back({std::move(v), b[0]});
    }
    bool ok = true;
    for (std::size_t i = 0; i < gens.size() && ok; ++i) {
      if (t.power(gens[i], p.value()) != t.identity()) ok = false;
      for (std::size_t j = i + 1; j < gens.size() && ok; ++j) {
        if (t.multiply(gens[i], gens[j]) != t.multiply(gens[j], gens[i])) ok = false;
      }
    }
    if (ok) {
      ++out.count;
      out.witnesses.push_back(std::move(gens));
    }
  }
  return out;
}

H1Prediction predicted_h1_dims(const TInvariants& inv) {
  H1Prediction out;
  const bool upper = !inv.upper_blocks_zero();
  if (inv.u < inv.p || upper) {
    for (std::size_t i = 1; i <= inv.p; ++i) out.dim_n += i * inv.ti(i);
  } else {
    out.dim_n = inv.ti(1) - 1;
  }
  out.one_plus_dim_n = out.dim_n + 1;
  if (upper || inv.u == inv.p) {
    std::size_t s = 0;
    for (std::size_t i = 1; i <= inv.p; ++i) s += inv.ti(i);
    out.dim_center = s;
  }
  return out;
}

}  // namespace tgk
