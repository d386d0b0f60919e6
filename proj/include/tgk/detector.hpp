#pragma once

// Decision procedures that certify a pro-p group is not an absolute Galois
// group, or that a T-group is realizable as the Galois group of a degree-p
// extension with p-th roots of unity.  All checks are sound but incomplete:
// NoConclusion means "not decided", never "is a Galois group".

#include <string>
#include <utility>
#include <vector>

#include "tgk/presentation.hpp"
#include "tgk/sigma_module.hpp"
#include "tgk/tgroup.hpp"

namespace tgk {

enum class Outcome { NotAbsoluteGalois, Realizable, NoConclusion };
std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::NoConclusion;
  std::string clause;  // registry id; empty only for NoConclusion
  std::string reason;  // human-readable
  std::vector<std::pair<std::string, std::string>> witness;
};

struct ClauseInfo {
  std::string id;
  std::string description;
};
// Every clause id a Verdict may carry.
const std::vector<ClauseInfo>& clause_registry();
bool is_registered_clause(const std::string& id);

Verdict realizable_as_tef(const TInvariants& inv);
// Requires nonabelian T and odd p.
Verdict corollary_ef_test(const TGroup& t);

enum class Thm1Variant { Cond1, Cond1Moreover, Cond2, Cond3 };
std::string to_string(Thm1Variant v);

// sigma must lie outside N and each tau inside N.  Cond1 uses taus[0] and
// depth e; Cond2 uses taus[0], taus[1]; Cond3 ignores taus and e.  The
// moreover form of Cond1 needs u = 1, the T-level form of a Z/p^2 quotient.
Verdict theorem1_check(const TGroup& t, const TElement& sigma, const std::vector<TElement>& taus,
                       Thm1Variant variant, std::size_t e = 0);

// Syntactic single-relator test; needs exactly one relator and odd p.
Verdict corollary_relator_verdict(const Presentation& pres);

Verdict h2dec_summand_test(const ModuleMultiset& h2dec, bool has_zp2_quotient);

struct Thm1Sweep {
  std::vector<Verdict> fired;  // first witness per clause
  std::size_t checks = 0;
};
// Runs every Theorem-1-type check with sigma = the lift, taus over the
// standard basis of N and e over each variant's legal range.
Thm1Sweep theorem1_sweep(const TGroup& t);

}  // namespace tgk
