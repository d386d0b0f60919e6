#pragma once

// Brute-force validators for tiny T-groups.  Everything here works on full
// multiplication tables and never consults the invariant theory in tgroup,
// so it can certify that theory.

#include <cstdint>
#include <string>
#include <vector>

#include "tgk/tgroup.hpp"

namespace tgk {

enum class ExecPolicy { Serial, Parallel };

// Hard limit on |T| for table-based work (covers 3^4 and 5^3).
inline constexpr std::size_t kMaxOracleOrder = 125;

struct GroupTable {
  std::uint32_t p = 2;
  std::size_t order = 0;
  std::vector<std::uint32_t> mul;  // mul[a * order + b]
  std::size_t identity = 0;

  std::uint32_t operator()(std::size_t a, std::size_t b) const { return mul[a * order + b]; }
};
GroupTable multiplication_table(const TGroup& t);

// Closure of a set of elements under multiplication.
std::vector<bool> generated_subgroup(const GroupTable& g, const std::vector<std::uint32_t>& gens);

struct CensusEntry {
  TGroup group;
  TInvariants inv;
  bool canonical = false;  // equal to construct_canonical(inv) as data
  std::size_t class_id = 0;
  std::string label;  // normal-form data, e.g. "{M1:1, M2:1} x=e2"
};

// All normal-form T-groups with 1 <= dim N <= max_dim: every multiset of
// Jordan blocks with x = 0 or x = the fixed vector of the first block of each
// distinct size.  Class ids come from brute-force isomorphism and are
// numbered by first occurrence.
std::vector<CensusEntry> enumerate_tgroups(std::uint32_t p, std::size_t max_dim,
                                           ExecPolicy policy = ExecPolicy::Parallel);

bool brute_force_isomorphic(const GroupTable& a, const GroupTable& b);
bool brute_force_isomorphic(const TGroup& a, const TGroup& b);

// Union-find classification over all pairs.
std::vector<std::size_t> classify(const std::vector<GroupTable>& tables, ExecPolicy policy);

struct ClassificationCertificate {
  std::uint32_t p = 0;
  std::size_t max_dim = 0;
  std::size_t entries = 0;
  std::vector<std::size_t> classes_by_dim;  // index dim N
  std::vector<std::size_t> tuples_by_dim;
  bool classes_match_invariants = false;  // same class <=> same invariants
  bool is_isomorphic_agrees = false;      // on every pair
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  bool ok() const;
};
ClassificationCertificate certify_classification(std::uint32_t p, std::size_t max_dim,
                                                 ExecPolicy policy = ExecPolicy::Parallel);

// Every (S, x) with S^p = 1 and S x = x in dimension dim, matched against
// the census; the cap is |T| <= 27.
struct RawCheck {
  std::size_t groups = 0;
  std::size_t unmatched = 0;
  std::vector<std::string> failures;
};
RawCheck raw_census_check(std::uint32_t p, std::size_t dim);

// log_p |Z[p] / (Z[p] n [T,T])| with Z[p] the exponent-p part of the center,
// computed from the table.
std::size_t raw_t1(const TGroup& t);

struct NcharRow {
  std::string label;
  TInvariants inv;
  std::size_t count = 0;  // index-p subgroups abelian of exponent p
  bool elementary_abelian_gt_p = false;
  bool heisenberg_times_elementary = false;
  bool holds = false;
};
struct NcharReport {
  std::vector<NcharRow> rows;
  bool all_hold = false;
};
// Index-p subgroups counted by hyperplanes of T / Phi(T) on the table.
std::size_t count_index_p_elementary_abelian(const GroupTable& g);
NcharReport verify_nchar(std::uint32_t p, std::size_t max_dim);

}  // namespace tgk
