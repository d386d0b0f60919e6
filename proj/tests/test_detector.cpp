#include <gtest/gtest.h>

#include "tgk/detector.hpp"

using namespace tgk;

namespace {

TInvariants tuple(std::uint32_t p, std::map<std::size_t, std::size_t> t, std::size_t u) {
  std::vector<std::size_t> tv(p + 1, 0);
  for (const auto& [i, v] : t) tv[i] = v;
  return TInvariants(p, tv, u);
}

ModuleMultiset ms(std::uint32_t p, std::map<std::size_t, std::size_t> blocks) {
  return ModuleMultiset(Prime(p), blocks);
}

Presentation one_relator(std::uint32_t p, const std::string& rel) {
  return parse_presentation("gens: s1 s2\np: " + std::to_string(p) + "\nrel: " + rel + "\n", "t").presentation;
}

std::string witness(const Verdict& v, const std::string& key) {
  for (const auto& [k, val] : v.witness) {
    if (k == key) return val;
  }
  return "";
}

}  // namespace

TEST(Realizable, Examples) {
  const Verdict h = realizable_as_tef(invariants(heisenberg(Prime(5))));
  EXPECT_EQ(h.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(h.clause, "th_t.odd.u_range");
  EXPECT_EQ(realizable_as_tef(tuple(5, {{1, 1}, {5, 2}}, 1)).outcome, Outcome::Realizable);
  for (const auto& inv : valid_tuples_weighted(2, 8)) {
    EXPECT_EQ(realizable_as_tef(inv).outcome, Outcome::Realizable) << inv.to_string();
  }
  EXPECT_THROW(realizable_as_tef(tuple(5, {}, 5)), MathError);
}

TEST(Realizable, ClauseByClause) {
  EXPECT_EQ(realizable_as_tef(tuple(5, {{1, 1}, {2, 1}}, 1)).clause, "th_t.odd.t2");
  EXPECT_EQ(realizable_as_tef(tuple(5, {{1, 1}, {3, 1}}, 1)).clause, "th_t.odd.ti_zero");
  EXPECT_EQ(realizable_as_tef(tuple(5, {{1, 1}, {2, 1}}, 2)).outcome, Outcome::Realizable);
}

TEST(EfTest, Examples) {
  const Verdict h = corollary_ef_test(heisenberg(Prime(5)));
  EXPECT_EQ(h.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(h.clause, "cor_th_t.ef");
  EXPECT_EQ(witness(h, "e"), "2");
  EXPECT_EQ(witness(h, "f"), "1");

  EXPECT_EQ(corollary_ef_test(construct_canonical(tuple(5, {{1, 1}, {2, 1}}, 2))).outcome, Outcome::NoConclusion);
  const TGroup t3 = construct_canonical(tuple(5, {{3, 1}}, 3));
  EXPECT_EQ(corollary_ef_test(t3).outcome, Outcome::NoConclusion);
  EXPECT_EQ(realizable_as_tef(invariants(t3)).outcome, Outcome::NotAbsoluteGalois);

  EXPECT_THROW(corollary_ef_test(TGroup(SigmaModule::trivial(Prime(5), 2), zero_vec(2))), MathError);
  EXPECT_THROW(corollary_ef_test(heisenberg(Prime(2))), MathError);
}

TEST(EfTest, NeverContradictsRealizability) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (const auto& inv : valid_tuples_weighted(p, 8)) {
      const TGroup t = construct_canonical(inv);
      if (t.is_abelian()) continue;
      if (corollary_ef_test(t).outcome == Outcome::NotAbsoluteGalois) {
        EXPECT_EQ(realizable_as_tef(inv).outcome, Outcome::NotAbsoluteGalois) << inv.to_string();
      }
    }
  }
}

TEST(CommutatorConditions, Cond1OnSizeFourBlock) {
  const TGroup t = construct_canonical(tuple(7, {{4, 1}}, 4));
  const Verdict v = theorem1_check(t, t.lift(), {t.in_n(unit_vec(4, 0))}, Thm1Variant::Cond1, 3);
  EXPECT_EQ(v.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(v.clause, "thm1.cond1");
  // One step short of the fixed line the next commutator is not trivial.
  EXPECT_EQ(theorem1_check(t, t.lift(), {t.in_n(unit_vec(4, 0))}, Thm1Variant::Cond1, 2).outcome,
            Outcome::NoConclusion);
}

TEST(CommutatorConditions, Cond2OnTwoSizeTwoBlocks) {
  const TGroup t = construct_canonical(tuple(5, {{2, 2}}, 2));
  ASSERT_EQ(t.module().decompose(), ms(5, {{2, 2}}));
  const Verdict v = theorem1_check(t, t.lift(), {t.in_n(unit_vec(4, 0)), t.in_n(unit_vec(4, 2))}, Thm1Variant::Cond2);
  EXPECT_EQ(v.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(v.clause, "thm1.cond2");
  // The same tau twice spans one line.
  EXPECT_EQ(theorem1_check(t, t.lift(), {t.in_n(unit_vec(4, 0)), t.in_n(unit_vec(4, 0))}, Thm1Variant::Cond2).outcome,
            Outcome::NoConclusion);
}

TEST(CommutatorConditions, Cond3WhenUAtLeastThree) {
  const TGroup t = construct_canonical(tuple(5, {{3, 1}}, 3));
  const Verdict v = theorem1_check(t, t.lift(), {}, Thm1Variant::Cond3);
  EXPECT_EQ(v.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(v.clause, "thm1.cond3");
  const TGroup f = construct_canonical(tuple(5, {{1, 1}, {5, 2}}, 1));
  EXPECT_EQ(theorem1_check(f, f.lift(), {}, Thm1Variant::Cond3).outcome, Outcome::NoConclusion);
}

TEST(CommutatorConditions, Preconditions) {
  const TGroup t = construct_canonical(tuple(5, {{3, 1}}, 3));
  const TElement tau = t.in_n(unit_vec(3, 0));
  EXPECT_THROW(theorem1_check(t, tau, {tau}, Thm1Variant::Cond1, 2), MathError);
  EXPECT_THROW(theorem1_check(t, t.lift(), {t.lift()}, Thm1Variant::Cond1, 2), MathError);
  EXPECT_THROW(theorem1_check(t, t.lift(), {tau}, Thm1Variant::Cond1, 1), MathError);
  EXPECT_THROW(theorem1_check(t, t.lift(), {tau}, Thm1Variant::Cond1, 4), MathError);
  EXPECT_THROW(theorem1_check(t, t.lift(), {tau}, Thm1Variant::Cond2), MathError);
}

TEST(CommutatorConditions, SoundnessChain) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (const auto& inv : valid_tuples_weighted(p, 8)) {
      const TGroup t = construct_canonical(inv);
      const Thm1Sweep sweep = theorem1_sweep(t);
      if (sweep.fired.empty()) continue;
      EXPECT_EQ(realizable_as_tef(inv).outcome, Outcome::NotAbsoluteGalois) << inv.to_string();
      for (const auto& v : sweep.fired) {
        EXPECT_TRUE(is_registered_clause(v.clause));
        if (v.clause != "thm1.cond1" && v.clause != "thm1.cond1.moreover") continue;
        // A depth-e witness needs a block of size at least e + 1.
        const std::size_t e = std::stoul(witness(v, "e"));
        std::size_t largest = 0;
        for (const auto& [size, mult] : t.module().decompose().blocks()) largest = std::max(largest, size);
        EXPECT_GE(largest, e + 1) << inv.to_string();
      }
    }
  }
}

TEST(RelatorVerdict, Examples) {
  const Verdict v = corollary_relator_verdict(one_relator(5, "s1^25 * ^3[s1,s2]"));
  EXPECT_EQ(v.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(v.clause, "cor-thm1");
  EXPECT_EQ(corollary_relator_verdict(one_relator(5, "s1^25 * ^1[s1,s2]")).outcome, Outcome::NoConclusion);
  EXPECT_EQ(corollary_relator_verdict(one_relator(5, "s1^5 * ^3[s1,s2]")).outcome, Outcome::NoConclusion);
  EXPECT_EQ(corollary_relator_verdict(one_relator(5, "[s1,s2]")).outcome, Outcome::NoConclusion);

  Presentation two = one_relator(5, "s1^25 * ^3[s1,s2]");
  two.relators.push_back(two.relators[0]);
  EXPECT_THROW(corollary_relator_verdict(two), MathError);
}

TEST(RelatorVerdict, AgreesWithTLevelCond1) {
  for (std::uint32_t p : {5u, 7u}) {
    for (std::uint32_t q : {p * p, 2 * p * p}) {
      for (std::size_t f = 2; f < p; ++f) {
        const Presentation pres = one_relator(p, "s1^" + std::to_string(q) + " * ^" + std::to_string(f) + "[s1,s2]");
        ASSERT_EQ(corollary_relator_verdict(pres).outcome, Outcome::NotAbsoluteGalois);
        const PresentedTGroup pt = tgroup_from_presentation(pres, default_augmentation(pres));
        ASSERT_EQ(invariants(pt.group).u, 1u);
        const Verdict v = theorem1_check(pt.group, pt.generator_images[0], {pt.generator_images[1]},
                                         Thm1Variant::Cond1Moreover, f - 1);
        EXPECT_EQ(v.outcome, Outcome::NotAbsoluteGalois) << "p=" << p << " q=" << q << " f=" << f;
      }
    }
  }
}

TEST(H2Summand, Examples) {
  const Verdict m4 = h2dec_summand_test(ms(5, {{4, 1}, {5, 3}, {1, 2}}), false);
  EXPECT_EQ(m4.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(m4.clause, "th_deltapgroup.summand");
  EXPECT_EQ(witness(m4, "i"), "4");
  EXPECT_EQ(h2dec_summand_test(ms(5, {{1, 3}, {2, 2}, {5, 4}}), false).outcome, Outcome::NoConclusion);
  const Verdict m2 = h2dec_summand_test(ms(5, {{2, 1}}), true);
  EXPECT_EQ(m2.outcome, Outcome::NotAbsoluteGalois);
  EXPECT_EQ(m2.clause, "th_deltapgroup.moreover");
  EXPECT_EQ(h2dec_summand_test(ms(5, {{2, 1}}), false).outcome, Outcome::NoConclusion);
}

TEST(Registry, EveryClauseIsRegisteredOnce) {
  std::set<std::string> ids;
  for (const auto& c : clause_registry()) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.description.empty());
  }
  for (const char* id : {"th_t.p2", "th_t.odd.u_range", "th_t.odd.t2", "th_t.odd.ti_zero", "cor_th_t.ef", "thm1.cond1",
                         "thm1.cond1.moreover", "thm1.cond2", "thm1.cond3", "cor-thm1", "th_deltapgroup.summand",
                         "th_deltapgroup.moreover"}) {
    EXPECT_TRUE(is_registered_clause(id)) << id;
  }
  EXPECT_FALSE(is_registered_clause("thm9"));
}
