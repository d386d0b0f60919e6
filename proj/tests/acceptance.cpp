// One PASS/FAIL line per acceptance criterion.  Exit status is the number of
// failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "tgk/cli.hpp"
#include "tgk/detector.hpp"
#include "tgk/oracle.hpp"
#include "tgk/presentation.hpp"
#include "tgk/spectral.hpp"

using namespace tgk;

namespace {

struct Check {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    detail = pass ? why : detail + "; " + why;
    pass = false;
  }
};

ModuleMultiset ms(std::uint32_t p, std::map<std::size_t, std::size_t> blocks) {
  return ModuleMultiset(Prime(p), blocks);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli_exit(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "tgk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

std::string data(const std::string& name) { return std::string(TGK_DATA_DIR) + "/" + name; }

Check omega1() {
  Check r;
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const BigradedPage page(ExtensionSpec(Variant::Omega1, Prime(p)));
    const CohomologyReport c = assemble(page);
    const std::string at = " at p=" + std::to_string(p);
    if (c.h1 != ms(p, {{p, 1}})) r.fail("H1 = " + c.h1.to_string() + at);
    if (!c.h2 || *c.h2 != ms(p, {{p - 1, 1}, {p, (p - 3) / 2}})) r.fail("H2 mismatch" + at);
    if (c.e3.ker_d01.dimension() != 0) r.fail("d2^{0,1} not injective" + at);
    if (c.e3.ker_d11.dimension() != 0) r.fail("d2^{1,1} not injective" + at);
    if (seconds_since(t0) > 5) r.fail("slower than 5 s" + at);
  }
  if (r.pass) r.detail = "H1 = {M_p:1}, H2 = {M_{p-1}:1, M_p:(p-3)/2}, injective d2 at p = 5, 7, 11";
  return r;
}

Check omega2() {
  Check r;
  for (std::uint32_t p : {5u, 7u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const BigradedPage page(ExtensionSpec(Variant::Omega2, Prime(p)));
    const CohomologyReport c = assemble(page);
    const std::string at = " at p=" + std::to_string(p);
    if (c.h1 != ms(p, {{2, 1}, {p, 1}})) r.fail("H1 = " + c.h1.to_string() + at);
    if (c.e3.ker_d01 != ms(p, {{2, 1}})) r.fail("ker d2^{0,1} = " + c.e3.ker_d01.to_string() + at);
    if (c.e3.ker_d11 != ms(p, {{p, 2}})) r.fail("ker d2^{1,1} = " + c.e3.ker_d11.to_string() + at);
    if (c.e3.ker_d02 != ms(p, {{1, 1}})) r.fail("ker d2^{0,2} = " + c.e3.ker_d02.to_string() + at);
    if (c.e3.e3_20 != ms(p, {{3, 1}, {p, (p - 3) / 2}})) r.fail("E3^{2,0} = " + c.e3.e3_20.to_string() + at);
    if (c.e_inf_11 != ms(p, {{p, 2}})) r.fail("Einf^{1,1} = " + c.e_inf_11.to_string() + at);
    const ModuleMultiset want = ms(p, {{1, 1}, {3, 1}, {p, (p + 1) / 2}});
    if (!c.h2 || *c.h2 != want) r.fail("H2 = " + (c.h2 ? c.h2->to_string() : std::string("none")) + at);
    if (seconds_since(t0) > 10) r.fail("slower than 10 s" + at);
  }
  if (r.pass) r.detail = "all Omega2 pins hold at p = 5, 7";
  return r;
}

Check decomposability() {
  Check r;
  for (Variant v : {Variant::Omega1, Variant::Omega2}) {
    for (std::uint32_t p : {5u, 7u, 11u}) {
      if (v == Variant::Omega2 && p == 11) continue;
      const BigradedPage page(ExtensionSpec(v, Prime(p)));
      if (!check_decomposable(page)) r.fail(to_string(v) + " not decomposable at p=" + std::to_string(p));
    }
  }
  if (r.pass) r.detail = "both variants decomposable";
  return r;
}

Check family() {
  Check r;
  std::mt19937 rng(4);
  for (const std::string v : {"omega1", "omega2"}) {
    const std::string want = v == "omega1" ? "i: 4" : "i: 3";
    for (int trial = 0; trial < 20; ++trial) {
      std::string out;
      const std::string s1 = std::to_string(rng() % 6), s2 = std::to_string(rng() % 6);
      const int code = cli_exit({"family", "--variant", v, "--p", "5", "--sigma-h1", s1, "--sigma-h2", s2}, &out);
      if (code != 2 || out.find("th_deltapgroup.summand") == std::string::npos || out.find(want) == std::string::npos) {
        r.fail(v + " with sigma dims " + s1 + "," + s2 + " gave exit " + std::to_string(code));
      }
    }
  }
  if (r.pass) r.detail = "exit 2 via the summand clause for 20 random Sigma per variant";
  return r;
}

Check classification() {
  Check r;
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [p, d] : {std::pair<std::uint32_t, std::size_t>{3, 3}, {5, 2}}) {
    const ClassificationCertificate c = certify_classification(p, d);
    if (!c.ok()) r.fail("p=" + std::to_string(p) + ": " + (c.failures.empty() ? "not ok" : c.failures.front()));
    for (std::size_t dim = 1; dim <= d; ++dim) {
      if (c.classes_by_dim[dim] != c.tuples_by_dim[dim]) r.fail("class count differs at dim " + std::to_string(dim));
    }
  }
  if (seconds_since(t0) > 60) r.fail("slower than 60 s");
  if (r.pass) r.detail = "classes biject with tuples at (3, <=3) and (5, <=2)";
  return r;
}

Check nchar() {
  Check r;
  const NcharReport n = verify_nchar(3, 3);
  for (const auto& row : n.rows) {
    if (!row.holds) r.fail("dichotomy fails on " + row.label);
  }
  if (r.pass) r.detail = std::to_string(n.rows.size()) + " census entries";
  return r;
}

TGroup random_tgroup(std::uint32_t p, std::size_t max_dim, std::mt19937& rng) {
  std::map<std::size_t, std::size_t> blocks;
  std::size_t dim = 0;
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_dim)(rng);
  while (dim < target) {
    const std::size_t s = std::min<std::size_t>(1 + rng() % p, target - dim);
    ++blocks[s];
    dim += s;
  }
  const SigmaModule n = SigmaModule::from_multiset(ms(p, blocks)).conjugated([&] {
    for (;;) {
      Matrix q(Prime(p), dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) q.set(i, j, static_cast<std::int64_t>(rng() % p));
      if (q.det() != 0) return q;
    }
  }());
  Vec x = zero_vec(dim);
  const Subspace fixed = n.fixed_submodule();
  for (const auto& b : fixed.basis()) x = add(x, scale(b, static_cast<Residue>(rng() % p), p), p);
  return TGroup(n, x);
}

Check series() {
  Check r;
  std::mt19937 rng(77);
  std::size_t power_checks = 0;
  for (std::uint32_t p : {3u, 5u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const TGroup t = random_tgroup(p, 6, rng);
      for (std::size_t i = 2; i <= p; ++i) {
        if (lower_central_by_commutators(t, i) != t.module().power_image(i - 1)) {
          r.fail("lower central term " + std::to_string(i) + " differs on " + t.to_string());
        }
      }
      std::size_t order = p;
      for (std::size_t k = 0; k < t.dim(); ++k) order *= p;
      if (order > 625) continue;
      ++power_checks;
      const Subspace expect = Subspace::span(t.prime(), t.dim(), {t.x()}) + lower_central(t, p);
      if (pth_powers_by_enumeration(t) != expect) r.fail("p-th powers differ on " + t.to_string());
    }
  }
  if (r.pass) r.detail = "100 random groups, " + std::to_string(power_checks) + " p-th power enumerations";
  return r;
}

Check round_trip() {
  Check r;
  std::size_t n = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (const auto& inv : valid_tuples_weighted(p, 8)) {
      ++n;
      if (invariants(construct_canonical(inv)) != inv) r.fail("round trip fails on " + inv.to_string());
    }
  }
  if (r.pass) r.detail = std::to_string(n) + " tuples";
  return r;
}

Check free_presentations() {
  Check r;
  for (std::uint32_t p : {3u, 5u}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      std::string text = "gens:";
      for (std::size_t i = 0; i < n; ++i) text += " g" + std::to_string(i);
      text += "\np: " + std::to_string(p) + "\n";
      const Presentation pres = parse_presentation(text, "free").presentation;
      const TInvariants got = invariants(tgroup_from_presentation(pres, default_augmentation(pres)).group);
      std::vector<std::size_t> t(p + 1, 0);
      t[1] = 1;
      t[p] = n - 1;
      if (got != TInvariants(p, t, 1)) r.fail("n=" + std::to_string(n) + " p=" + std::to_string(p) + " gave " + got.to_string());
    }
  }
  if (r.pass) r.detail = "t1=1, t_p=n-1, u=1 for n = 2, 3, 4 at p = 3, 5";
  return r;
}

// Clause-by-clause re-derivation of realizability from the tuple alone.
bool expected_realizable(const TInvariants& inv) {
  if (inv.p == 2) return true;
  if (inv.u != 1 && inv.u != 2) return false;
  if (inv.ti(2) != inv.u - 1) return false;
  for (std::size_t i = 3; i < inv.p; ++i) {
    if (inv.ti(i) != 0) return false;
  }
  return true;
}

Check detector_suite() {
  Check r;
  std::size_t n = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (const auto& inv : valid_tuples_weighted(p, 8)) {
      ++n;
      const Verdict v = realizable_as_tef(inv);
      const bool realizable = v.outcome == Outcome::Realizable;
      if (realizable != expected_realizable(inv)) r.fail("realizability differs on " + inv.to_string());
      if (!realizable && !is_registered_clause(v.clause)) r.fail("unregistered clause " + v.clause);
      if (p == 2) continue;
      const TGroup t = construct_canonical(inv);
      if (!t.is_abelian() && corollary_ef_test(t).outcome == Outcome::NotAbsoluteGalois && realizable) {
        r.fail("ef test fires on realizable " + inv.to_string());
      }
    }
  }
  if (cli_exit({"detect", "--presentation", data("demushkin-like.pres")}) != 2) r.fail("detect exit code");
  if (cli_exit({"cohomology", "--variant", "omega1", "--p", "5"}) != 0) r.fail("cohomology exit code");
  if (cli_exit({"invariants", "--presentation", data("free3.pres")}) != 0) r.fail("invariants exit code");
  if (r.pass) r.detail = std::to_string(n) + " tuples; cli exits 2/0/0";
  return r;
}

Check soundness() {
  Check r;
  std::size_t fired = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (const auto& inv : valid_tuples_weighted(p, 8)) {
      const Thm1Sweep s = theorem1_sweep(construct_canonical(inv));
      if (s.fired.empty()) continue;
      ++fired;
      if (realizable_as_tef(inv).outcome != Outcome::NotAbsoluteGalois) {
        r.fail(s.fired.front().clause + " fires on realizable " + inv.to_string());
      }
    }
  }
  if (r.pass) r.detail = std::to_string(fired) + " groups with a firing condition, all rejected";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"Omega1 cohomology", omega1},
      {"Omega2 cohomology", omega2},
      {"decomposability", decomposability},
      {"family verdict", family},
      {"classification certificate", classification},
      {"Nchar dichotomy", nchar},
      {"series agreement", series},
      {"round trip", round_trip},
      {"free presentations", free_presentations},
      {"detector suite", detector_suite},
      {"soundness chain", soundness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  return failures;
}
