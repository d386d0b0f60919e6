#include "tgk/detector.hpp"

#include <algorithm>

namespace tgk {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::NotAbsoluteGalois:
      return "NotAbsoluteGalois";
    case Outcome::Realizable:
      return "Realizable";
    case Outcome::NoConclusion:
      return "NoConclusion";
  }
  return "?";
}

std::string to_string(Thm1Variant v) {
  switch (v) {
    case Thm1Variant::Cond1:
      return "cond1";
    case Thm1Variant::Cond1Moreover:
      return "cond1.moreover";
    case Thm1Variant::Cond2:
      return "cond2";
    case Thm1Variant::Cond3:
      return "cond3";
  }
  return "?";
}

const std::vector<ClauseInfo>& clause_registry() {
  static const std::vector<ClauseInfo> registry = {
      {"th_t.p2", "p = 2: every T-group is realizable as T_{E/F}"},
      {"th_t.odd.u_range", "p odd: realizability requires u in {1,2}"},
      {"th_t.odd.t2", "p odd: realizability requires t_2 = u - 1"},
      {"th_t.odd.ti_zero", "p odd: realizability requires t_i = 0 for 3 <= i < p"},
      {"th_t.odd.all", "p odd: u in {1,2}, t_2 = u - 1 and t_i = 0 for 3 <= i < p all hold"},
      {"cor_th_t.ef", "a T_{E/F} with p odd satisfies dim N = dim Z(T) + u - 1 mod p - 1"},
      {"thm1.cond1", "some ^e[sigma,tau] lies outside T_(p) while ^(e+1)[sigma,tau] = 1, 2 <= e <= p-2"},
      {"thm1.cond1.moreover", "as thm1.cond1 with 1 <= e <= p-2, given a Z/p^2 quotient (u = 1)"},
      {"thm1.cond2", "two taus with [sigma,tau_i] independent modulo T_(p) and ^2[sigma,tau_i] = 1"},
      {"thm1.cond3", "sigma^p lies in ^2[sigma,N]"},
      {"cor-thm1", "single relator s1^q ^f[s1,s2] ... with 2 <= f <= p-1 and q = 0 mod p^2"},
      {"th_deltapgroup.summand", "decomposable H^2 has a cyclic summand M_i with 3 <= i < p"},
      {"th_deltapgroup.moreover", "decomposable H^2 has a summand M_i, 2 <= i < p, given a Z/p^2 quotient"},
  };
  return registry;
}

bool is_registered_clause(const std::string& id) {
  const auto& r = clause_registry();
  return std::any_of(r.begin(), r.end(), [&](const ClauseInfo& c) { return c.id == id; });
}

namespace {

Verdict not_galois(std::string clause, std::string reason,
                   std::vector<std::pair<std::string, std::string>> witness = {}) {
  return {Outcome::NotAbsoluteGalois, std::move(clause), std::move(reason), std::move(witness)};
}

Verdict no_conclusion(std::string reason) { return {Outcome::NoConclusion, "", std::move(reason), {}}; }

std::string vec_string(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

Verdict realizable_as_tef(const TInvariants& inv) {
  if (auto bad = inv.violation()) throw MathError("invalid invariant tuple: " + *bad);
  if (inv.p == 2) {
    return {Outcome::Realizable, "th_t.p2", "every T-group at p = 2 is realizable", {}};
  }
  if (inv.u != 1 && inv.u != 2) {
    return not_galois("th_t.odd.u_range", "u = " + std::to_string(inv.u) + " is not in {1,2}",
                      {{"u", std::to_string(inv.u)}});
  }
  if (inv.ti(2) != inv.u - 1) {
    return not_galois("th_t.odd.t2",
                      "t_2 = " + std::to_string(inv.ti(2)) + " differs from u - 1 = " +
                          std::to_string(inv.u - 1),
                      {{"t2", std::to_string(inv.ti(2))}, {"u", std::to_string(inv.u)}});
  }
  for (std::size_t i = 3; i < inv.p; ++i) {
    if (inv.ti(i) != 0) {
      return not_galois("th_t.odd.ti_zero",
                        "t_" + std::to_string(i) + " = " + std::to_string(inv.ti(i)) + " is nonzero",
                        {{"i", std::to_string(i)}, {"t_i", std::to_string(inv.ti(i))}});
    }
  }
  return {Outcome::Realizable, "th_t.odd.all", "all realizability conditions hold", {}};
}

Verdict corollary_ef_test(const TGroup& t) {
  if (t.p() == 2) throw MathError("the e/f congruence test needs odd p");
  if (t.is_abelian()) throw MathError("the e/f congruence test needs a nonabelian T-group");
  const std::size_t e = t.dim();
  const std::size_t f = center(t).in_n.dim();
  const std::size_t u = invariants(t).u;
  const std::size_t mod = t.p() - 1;
  std::vector<std::pair<std::string, std::string>> w = {
      {"e", std::to_string(e)}, {"f", std::to_string(f)}, {"u", std::to_string(u)}};
  if (e % mod != (f + u - 1) % mod) {
    return not_galois("cor_th_t.ef",
                      "e = " + std::to_string(e) + " is not congruent to f + u - 1 = " +
                          std::to_string(f + u - 1) + " mod " + std::to_string(mod),
                      std::move(w));
  }
  return no_conclusion("e = f + u - 1 mod p - 1 holds");
}

Verdict theorem1_check(const TGroup& t, const TElement& sigma, const std::vector<TElement>& taus,
                       Thm1Variant variant, std::size_t e) {
  const std::uint32_t p = t.p();
  if (p == 2) throw MathError("the commutator-depth criteria need odd p");
  if (sigma.v.size() != t.dim() || sigma.k == 0) throw MathError("sigma must lie outside N");
  for (const auto& tau : taus) {
    if (tau.v.size() != t.dim() || tau.k != 0) throw MathError("every tau must lie in N");
  }
  // S_sigma = S^k; T_(p) = (S_sigma - 1)^(p-1) N.
  const Matrix s_sigma = t.sigma().pow(sigma.k);
  const Subspace t_p = Subspace::image(s_sigma.minus_identity().pow(p - 1));
  const std::string sigma_text = "(" + vec_string(sigma.v) + ", " + std::to_string(sigma.k) + ")";

  switch (variant) {
    case Thm1Variant::Cond1:
    case Thm1Variant::Cond1Moreover: {
      const bool moreover = variant == Thm1Variant::Cond1Moreover;
      const std::size_t lo = moreover ? 1 : 2;
      if (e < lo || e > p - 2) throw MathError("depth e out of range for " + to_string(variant));
      if (taus.empty()) throw MathError("cond1 needs a tau");
      if (moreover && invariants(t).u != 1) {
        return no_conclusion("no Z/p^2 quotient (u != 1)");
      }
      const TElement c_e = t.iterated_commutator(sigma, taus[0], e);
      const TElement c_e1 = t.iterated_commutator(sigma, taus[0], e + 1);
      if (!t_p.contains(c_e.v) && c_e1 == t.identity()) {
        return not_galois(moreover ? "thm1.cond1.moreover" : "thm1.cond1",
                          "^" + std::to_string(e) + "[sigma,tau] lies outside T_(p) and ^" +
                              std::to_string(e + 1) + "[sigma,tau] = 1",
                          {{"sigma", sigma_text},
                           {"tau", vec_string(taus[0].v)},
                           {"e", std::to_string(e)},
                           {"commutator", vec_string(c_e.v)}});
      }
      return no_conclusion("condition does not hold for this witness");
    }
    case Thm1Variant::Cond2: {
      if (taus.size() < 2) throw MathError("cond2 needs two taus");
      std::vector<Vec> comms;
      for (std::size_t i = 0; i < 2; ++i) {
        const TElement c1 = t.commutator(sigma, taus[i]);
        if (t_p.contains(c1.v) || t.commutator(sigma, c1) != t.identity()) {
          return no_conclusion("condition does not hold for this witness");
        }
        comms.push_back(c1.v);
      }
      // The two commutators must stay independent after dividing out T_(p).
      const Subspace joint = Subspace::span(t.prime(), t.dim(), comms) + t_p;
      if (joint.dim() != t_p.dim() + 2) return no_conclusion("commutators dependent modulo T_(p)");
      return not_galois("thm1.cond2",
                        "[sigma,tau_1], [sigma,tau_2] are independent modulo T_(p) and both "
                        "commute with sigma",
                        {{"sigma", sigma_text},
                         {"tau1", vec_string(taus[0].v)},
                         {"tau2", vec_string(taus[1].v)}});
    }
    case Thm1Variant::Cond3: {
      const TElement sp = t.power(sigma, p);
      const Subspace depth2 = Subspace::image(s_sigma.minus_identity().pow(2));
      if (depth2.contains(sp.v)) {
        return not_galois("thm1.cond3", "sigma^p lies in ^2[sigma,N]",
                          {{"sigma", sigma_text}, {"sigma^p", vec_string(sp.v)}});
      }
      return no_conclusion("sigma^p lies outside ^2[sigma,N]");
    }
  }
  return no_conclusion("");
}

Verdict corollary_relator_verdict(const Presentation& pres) {
  if (pres.relators.size() != 1) throw MathError("the relator matcher needs exactly one relator");
  const std::uint32_t p = pres.p;
  if (p == 2) throw MathError("the relator matcher needs odd p");
  const auto pat = match_corollary_relator(pres.relators[0], p);
  if (!pat) return no_conclusion("relator does not have the s1^q ^f[s1,s2] ... shape");
  const std::int64_t p2 = static_cast<std::int64_t>(p) * p;
  std::vector<std::pair<std::string, std::string>> w = {
      {"s1", pat->s1}, {"s2", pat->s2}, {"q", std::to_string(pat->q)}, {"f", std::to_string(pat->f)}};
  if (pat->f < 2 || pat->f > p - 1) {
    return no_conclusion("f = " + std::to_string(pat->f) + " is outside 2..p-1");
  }
  if (pat->q % p2 != 0) {
    return no_conclusion("q = " + std::to_string(pat->q) + " is not divisible by p^2");
  }
  return not_galois("cor-thm1",
                    "single relator s1^q ^f[s1,s2] ... with 2 <= f <= p-1 and q = 0 mod p^2",
                    std::move(w));
}

Verdict h2dec_summand_test(const ModuleMultiset& h2dec, bool has_zp2_quotient) {
  const std::uint32_t p = h2dec.p();
  for (std::size_t i = 3; i < p; ++i) {
    if (h2dec.count(i)) {
      return not_galois("th_deltapgroup.summand",
                        "decomposable H^2 contains M_" + std::to_string(i),
                        {{"i", std::to_string(i)}, {"multiplicity", std::to_string(h2dec.count(i))}});
    }
  }
  if (has_zp2_quotient && p > 2 && h2dec.count(2)) {
    return not_galois("th_deltapgroup.moreover",
                      "decomposable H^2 contains M_2 and there is a Z/p^2 quotient",
                      {{"i", "2"}, {"multiplicity", std::to_string(h2dec.count(2))}});
  }
  return no_conclusion("no cyclic summand of size in the detecting range");
}

Thm1Sweep theorem1_sweep(const TGroup& t) {
  Thm1Sweep out;
  const std::uint32_t p = t.p();
  if (p == 2) return out;
  const TElement sigma = t.lift();
  std::vector<TElement> basis;
  for (std::size_t j = 0; j < t.dim(); ++j) basis.push_back(t.in_n(unit_vec(t.dim(), j)));
  const bool zp2 = invariants(t).u == 1;

  auto record = [&](const Verdict& v) {
    ++out.checks;
    if (v.outcome != Outcome::NotAbsoluteGalois) return false;
    for (const auto& f : out.fired) {
      if (f.clause == v.clause) return true;
    }
    out.fired.push_back(v);
    return true;
  };

  for (const auto& tau : basis) {
    for (std::size_t e = 2; e + 2 <= p; ++e) {
      if (record(theorem1_check(t, sigma, {tau}, Thm1Variant::Cond1, e))) break;
    }
    if (zp2) {
      for (std::size_t e = 1; e + 2 <= p; ++e) {
        if (record(theorem1_check(t, sigma, {tau}, Thm1Variant::Cond1Moreover, e))) break;
      }
    }
  }
  bool cond2 = false;
  for (std::size_t i = 0; i < basis.size() && !cond2; ++i) {
    for (std::size_t j = i + 1; j < basis.size() && !cond2; ++j) {
      cond2 = record(theorem1_check(t, sigma, {basis[i], basis[j]}, Thm1Variant::Cond2));
    }
  }
  record(theorem1_check(t, sigma, {}, Thm1Variant::Cond3));
  return out;
}

}  // namespace tgk
