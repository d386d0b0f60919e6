#include "tgk/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <optional>

namespace tgk {

namespace {

using Elem = std::uint32_t;

void require_cap(std::size_t order, const char* what) {
  if (order > kMaxOracleOrder) {
    throw MathError(std::string(what) + ": |T| = " + std::to_string(order) +
                    " exceeds the brute-force cap of " + std::to_string(kMaxOracleOrder));
  }
}

Elem pow_elem(const GroupTable& g, Elem a, std::size_t n) {
  Elem r = static_cast<Elem>(g.identity);
  for (std::size_t i = 0; i < n; ++i) r = g(r, a);
  return r;
}

std::size_t elem_order(const GroupTable& g, Elem a) {
  std::size_t n = 1;
  for (Elem r = a; r != g.identity; r = g(r, a)) ++n;
  return n;
}

Elem inverse_elem(const GroupTable& g, Elem a) {
  for (Elem b = 0; b < g.order; ++b) {
    if (g(a, b) == g.identity) return b;
  }
  throw MathError("group table has an element without inverse");
}

std::vector<Elem> members(const std::vector<bool>& mask) {
  std::vector<Elem> out;
  for (Elem i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

std::vector<Elem> commutators(const GroupTable& g) {
  std::vector<Elem> inv(g.order);
  for (Elem a = 0; a < g.order; ++a) inv[a] = inverse_elem(g, a);
  std::set<Elem> out;
  for (Elem a = 0; a < g.order; ++a) {
    for (Elem b = 0; b < g.order; ++b) out.insert(g(g(g(a, b), inv[a]), inv[b]));
  }
  return {out.begin(), out.end()};
}

struct Structure {
  std::vector<bool> center, derived, frattini;
};

Structure structure(const GroupTable& g) {
  Structure s;
  s.center.assign(g.order, true);
  for (Elem a = 0; a < g.order; ++a) {
    for (Elem b = 0; b < g.order && s.center[a]; ++b) {
      if (g(a, b) != g(b, a)) s.center[a] = false;
    }
  }
  std::vector<Elem> comms = commutators(g);
  s.derived = generated_subgroup(g, comms);
  std::set<Elem> phi_gens(comms.begin(), comms.end());
  for (Elem a = 0; a < g.order; ++a) phi_gens.insert(pow_elem(g, a, g.p));
  s.frattini = generated_subgroup(g, {phi_gens.begin(), phi_gens.end()});
  return s;
}

// Automorphism-invariant data attached to each element.
using Profile = std::array<std::uint32_t, 6>;

std::vector<Profile> profiles(const GroupTable& g, const Structure& s) {
  std::vector<std::uint32_t> roots(g.order, 0);
  for (Elem a = 0; a < g.order; ++a) ++roots[pow_elem(g, a, g.p)];
  std::vector<Profile> out(g.order);
  for (Elem a = 0; a < g.order; ++a) {
    std::uint32_t cent = 0;
    for (Elem b = 0; b < g.order; ++b) cent += g(a, b) == g(b, a);
    out[a] = {static_cast<std::uint32_t>(elem_order(g, a)), cent, s.center[a], s.derived[a],
              s.frattini[a], roots[a]};
  }
  return out;
}

// A minimal generating set: elements chosen outside Phi * <previous>.
std::vector<Elem> burnside_basis(const GroupTable& g, const std::vector<bool>& frattini) {
  std::vector<Elem> base = members(frattini);
  std::vector<Elem> gens;
  std::vector<bool> cur = frattini;
  for (Elem a = 0; a < g.order; ++a) {
    if (cur[a]) continue;
    gens.push_back(a);
    std::vector<Elem> all = base;
    all.insert(all.end(), gens.begin(), gens.end());
    cur = generated_subgroup(g, all);
  }
  return gens;
}

class IsoSearch {
 public:
  IsoSearch(const GroupTable& a, const GroupTable& b, std::vector<Elem> gens,
            std::vector<std::vector<Elem>> candidates)
      : a_(a), b_(b), gens_(std::move(gens)), cand_(std::move(candidates)) {}

  bool run() {
    std::vector<std::int64_t> phi(a_.order, -1);
    std::vector<bool> used(b_.order, false);
    phi[a_.identity] = static_cast<std::int64_t>(b_.identity);
    used[b_.identity] = true;
    return extend(0, phi, used);
  }

 private:
  bool extend(std::size_t level, std::vector<std::int64_t>& phi, std::vector<bool>& used) {
    if (level == gens_.size()) return true;
    for (Elem h : cand_[level]) {
      if (used[h]) continue;
      std::vector<std::int64_t> phi2 = phi;
      std::vector<bool> used2 = used;
      if (close(level, h, phi2, used2) && extend(level + 1, phi2, used2)) {
        phi = std::move(phi2);
        used = std::move(used2);
        return true;
      }
    }
    return false;
  }

  // Extends phi to <gens_[0..level]> with gens_[level] -> h, checking that it
  // stays a well-defined injective homomorphism.
  bool close(std::size_t level, Elem h, std::vector<std::int64_t>& phi, std::vector<bool>& used) {
    phi[gens_[level]] = h;
    used[h] = true;
    std::vector<Elem> queue;
    for (Elem e = 0; e < a_.order; ++e) {
      if (phi[e] >= 0) queue.push_back(e);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Elem e = queue[qi];
      for (std::size_t j = 0; j <= level; ++j) {
        const Elem c = a_(e, gens_[j]);
        const auto img = static_cast<std::int64_t>(
            b_(static_cast<Elem>(phi[e]), static_cast<Elem>(phi[gens_[j]])));
        if (phi[c] < 0) {
          if (used[img]) return false;
          phi[c] = img;
          used[img] = true;
          queue.push_back(c);
        } else if (phi[c] != img) {
          return false;
        }
      }
    }
    return true;
  }

  const GroupTable& a_;
  const GroupTable& b_;
  std::vector<Elem> gens_;
  std::vector<std::vector<Elem>> cand_;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Block multisets of total dimension d with block sizes 1..p, as size lists.
void block_partitions(std::size_t remaining, std::size_t max_part,
                      std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = std::min(remaining, max_part); s >= 1; --s) {
    cur.push_back(s);
    block_partitions(remaining - s, s, cur, out);
    cur.pop_back();
  }
}

bool same_data(const TGroup& a, const TGroup& b) {
  return a.p() == b.p() && a.dim() == b.dim() && a.sigma() == b.sigma() && a.x() == b.x();
}

std::size_t log_p(std::size_t n, std::uint32_t p) {
  std::size_t e = 0;
  for (; n > 1; n /= p) ++e;
  return e;
}

}  // namespace

GroupTable multiplication_table(const TGroup& t) {
  const std::size_t n = t.order();
  require_cap(n, "multiplication_table");
  GroupTable g;
  g.p = t.p();
  g.order = n;
  g.mul.resize(n * n);
  std::vector<TElement> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = t.element_at(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g.mul[i * n + j] = static_cast<Elem>(t.index_of(t.multiply(elems[i], elems[j])));
    }
  }
  g.identity = t.index_of(t.identity());
  return g;
}

std::vector<bool> generated_subgroup(const GroupTable& g, const std::vector<std::uint32_t>& gens) {
  std::vector<bool> in(g.order, false);
  std::vector<Elem> queue{static_cast<Elem>(g.identity)};
  in[g.identity] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (Elem s : gens) {
      const Elem c = g(queue[qi], s);
      if (!in[c]) {
        in[c] = true;
        queue.push_back(c);
      }
    }
  }
  return in;
}

bool brute_force_isomorphic(const GroupTable& a, const GroupTable& b) {
  if (a.p != b.p || a.order != b.order) return false;
  require_cap(a.order, "brute_force_isomorphic");
  const Structure sa = structure(a), sb = structure(b);
  const std::vector<Profile> pa = profiles(a, sa), pb = profiles(b, sb);
  std::vector<Profile> sorted_a = pa, sorted_b = pb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return false;

  std::vector<Elem> gens = burnside_basis(a, sa.frattini);
  std::vector<std::vector<Elem>> cand;
  for (Elem g : gens) {
    std::vector<Elem> c;
    for (Elem h = 0; h < b.order; ++h) {
      if (pb[h] == pa[g]) c.push_back(h);
    }
    cand.push_back(std::move(c));
  }
  return IsoSearch(a, b, std::move(gens), std::move(cand)).run();
}

bool brute_force_isomorphic(const TGroup& a, const TGroup& b) {
  if (a.p() != b.p() || a.dim() != b.dim()) return false;
  return brute_force_isomorphic(multiplication_table(a), multiplication_table(b));
}

std::vector<std::size_t> classify(const std::vector<GroupTable>& tables, ExecPolicy policy) {
  const std::size_t n = tables.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (tables[i].order == tables[j].order) pairs.emplace_back(i, j);
    }
  }
  std::vector<char> iso(pairs.size(), 0);
  const auto count = static_cast<std::int64_t>(pairs.size());
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
      iso[k] = brute_force_isomorphic(tables[pairs[k].first], tables[pairs[k].second]);
    }
  } else {
    for (std::int64_t k = 0; k < count; ++k) {
      iso[k] = brute_force_isomorphic(tables[pairs[k].first], tables[pairs[k].second]);
    }
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!iso[k]) continue;
    const std::size_t ra = find_root(parent, pairs[k].first), rb = find_root(parent, pairs[k].second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find_root(parent, i);
    out[i] = ids.try_emplace(r, ids.size()).first->second;
  }
  return out;
}

std::vector<CensusEntry> enumerate_tgroups(std::uint32_t p, std::size_t max_dim, ExecPolicy policy) {
  const Prime prime(p);
  std::size_t order = p;
  for (std::size_t d = 0; d < max_dim; ++d) {
    order *= p;
    require_cap(order, "enumerate_tgroups");
  }

  std::vector<CensusEntry> entries;
  for (std::size_t d = 1; d <= max_dim; ++d) {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> cur;
    block_partitions(d, p, cur, parts);
    for (const auto& part : parts) {
      std::map<std::size_t, std::size_t> blocks;
      for (std::size_t s : part) ++blocks[s];
      const ModuleMultiset ms(prime, blocks);
      const SigmaModule n = SigmaModule::from_multiset(ms);
      // Blocks sit in increasing size; the fixed line of a block is its last vector.
      std::vector<std::optional<std::size_t>> xs{std::nullopt};
      std::size_t offset = 0;
      for (const auto& [size, mult] : blocks) {
        xs.push_back(offset + size - 1);
        offset += size * mult;
      }
      for (const auto& xi : xs) {
        Vec x = zero_vec(d);
        if (xi) x[*xi] = 1;
        TGroup t(n, x);
        const TInvariants inv = invariants(t);
        const bool canon = same_data(t, construct_canonical(inv));
        std::string label = ms.to_string() + (xi ? " x=e" + std::to_string(*xi) : " x=0");
        entries.push_back(CensusEntry{std::move(t), inv, canon, 0, std::move(label)});
      }
    }
  }

  std::vector<GroupTable> tables(entries.size());
  const auto count = static_cast<std::int64_t>(entries.size());
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) tables[i] = multiplication_table(entries[i].group);
  } else {
    for (std::int64_t i = 0; i < count; ++i) tables[i] = multiplication_table(entries[i].group);
  }
  const std::vector<std::size_t> ids = classify(tables, policy);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].class_id = ids[i];
  return entries;
}

bool ClassificationCertificate::ok() const {
  return classes_match_invariants && is_isomorphic_agrees && classes_by_dim == tuples_by_dim &&
         failures.empty();
}

ClassificationCertificate certify_classification(std::uint32_t p, std::size_t max_dim,
                                                 ExecPolicy policy) {
  ClassificationCertificate cert;
  cert.p = p;
  cert.max_dim = max_dim;
  const std::vector<CensusEntry> entries = enumerate_tgroups(p, max_dim, policy);
  cert.entries = entries.size();
  cert.classes_by_dim.assign(max_dim + 1, 0);
  cert.tuples_by_dim.assign(max_dim + 1, 0);

  for (std::size_t d = 1; d <= max_dim; ++d) {
    std::set<std::size_t> ids;
    std::vector<std::string> seen;
    for (const auto& e : entries) {
      if (e.group.dim() != d) continue;
      ids.insert(e.class_id);
      seen.push_back(e.inv.to_string());
    }
    cert.classes_by_dim[d] = ids.size();
    const auto tuples = valid_tuples(p, d, d);
    cert.tuples_by_dim[d] = tuples.size();
    for (const auto& tup : tuples) {
      if (std::find(seen.begin(), seen.end(), tup.to_string()) == seen.end()) {
        cert.failures.push_back("valid tuple " + tup.to_string() + " has no census group");
      }
    }
  }

  cert.classes_match_invariants = true;
  cert.is_isomorphic_agrees = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i];
      const auto& b = entries[j];
      ++cert.pairs_checked;
      const bool same_class = a.class_id == b.class_id;
      if (same_class != (a.inv == b.inv)) {
        cert.classes_match_invariants = false;
        cert.failures.push_back(a.label + " vs " + b.label + ": class and invariants disagree");
      }
      if (same_class != is_isomorphic(a.group, b.group)) {
        cert.is_isomorphic_agrees = false;
        cert.failures.push_back(a.label + " vs " + b.label + ": is_isomorphic disagrees");
      }
    }
  }
  return cert;
}

RawCheck raw_census_check(std::uint32_t p, std::size_t dim) {
  std::size_t order = p;
  for (std::size_t d = 0; d < dim; ++d) order *= p;
  if (order > 27) {
    throw MathError("raw_census_check: |T| = " + std::to_string(order) + " exceeds the cap of 27");
  }
  const Prime prime(p);
  std::vector<GroupTable> reps;
  std::vector<std::string> labels;
  {
    std::set<std::size_t> seen;
    for (const auto& e : enumerate_tgroups(p, dim, ExecPolicy::Serial)) {
      if (e.group.dim() != dim || !seen.insert(e.class_id).second) continue;
      reps.push_back(multiplication_table(e.group));
      labels.push_back(e.label);
    }
  }

  RawCheck out;
  const std::size_t cells = dim * dim;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Matrix s(prime, dim, dim);
    std::size_t c = code;
    for (std::size_t i = 0; i < cells; ++i, c /= p) s.set(i / dim, i % dim, static_cast<std::int64_t>(c % p));
    if (s.det() == 0 || !s.pow(p).is_identity()) continue;
    const SigmaModule n(s);
    const Subspace fixed = n.fixed_submodule();
    std::size_t xs = 1;
    for (std::size_t i = 0; i < fixed.dim(); ++i) xs *= p;
    for (std::size_t xc = 0; xc < xs; ++xc) {
      Vec x = zero_vec(dim);
      std::size_t r = xc;
      for (const auto& b : fixed.basis()) {
        for (std::size_t i = 0; i < dim; ++i) x[i] = reduce_mod(x[i] + static_cast<std::int64_t>(r % p) * b[i], p);
        r /= p;
      }
      const GroupTable g = multiplication_table(TGroup(n, x));
      ++out.groups;
      const bool found = std::any_of(reps.begin(), reps.end(),
                                     [&](const GroupTable& rep) { return brute_force_isomorphic(g, rep); });
      if (!found) {
        ++out.unmatched;
        out.failures.push_back("S=" + s.to_string() + " has no census match");
      }
    }
  }
  return out;
}

std::size_t raw_t1(const TGroup& t) {
  const GroupTable g = multiplication_table(t);
  const Structure s = structure(g);
  std::size_t zp = 0, zp_derived = 0;
  for (Elem a = 0; a < g.order; ++a) {
    if (!s.center[a] || pow_elem(g, a, g.p) != g.identity) continue;
    ++zp;
    zp_derived += s.derived[a];
  }
  return log_p(zp, g.p) - log_p(zp_derived, g.p);
}

std::size_t count_index_p_elementary_abelian(const GroupTable& g) {
  require_cap(g.order, "count_index_p_elementary_abelian");
  const Structure s = structure(g);
  const std::vector<Elem> gens = burnside_basis(g, s.frattini);
  const std::vector<Elem> phi = members(s.frattini);
  const std::size_t r = gens.size();
  const std::uint32_t p = g.p;

  // Coordinates of every element in T / Phi with respect to gens.
  std::vector<std::vector<std::uint32_t>> coord(g.order);
  std::vector<std::uint32_t> c(r, 0);
  for (;;) {
    Elem base = static_cast<Elem>(g.identity);
    for (std::size_t i = 0; i < r; ++i) base = g(base, pow_elem(g, gens[i], c[i]));
    for (Elem f : phi) coord[g(base, f)] = c;
    std::size_t i = 0;
    while (i < r && ++c[i] == p) c[i++] = 0;
    if (i == r) break;
  }

  std::size_t count = 0;
  std::vector<std::uint32_t> f(r, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < r && ++f[i] == p) f[i++] = 0;
    if (i == r) break;
    // One functional per hyperplane: the last nonzero coefficient is 1.
    std::size_t last = r;
    while (last > 0 && f[last - 1] == 0) --last;
    if (f[last - 1] != 1) continue;

    std::vector<Elem> h;
    for (Elem a = 0; a < g.order; ++a) {
      std::uint64_t v = 0;
      for (std::size_t k = 0; k < r; ++k) v += static_cast<std::uint64_t>(f[k]) * coord[a][k];
      if (v % p == 0) h.push_back(a);
    }
    bool ok = true;
    for (std::size_t x = 0; x < h.size() && ok; ++x) {
      if (pow_elem(g, h[x], p) != g.identity) ok = false;
      for (std::size_t y = x + 1; y < h.size() && ok; ++y) ok = g(h[x], h[y]) == g(h[y], h[x]);
    }
    count += ok;
  }
  return count;
}

NcharReport verify_nchar(std::uint32_t p, std::size_t max_dim) {
  NcharReport rep;
  rep.all_hold = true;
  const Prime prime(p);
  for (const auto& e : enumerate_tgroups(p, max_dim)) {
    const GroupTable g = multiplication_table(e.group);
    NcharRow row;
    row.label = e.label;
    row.inv = e.inv;
    row.count = count_index_p_elementary_abelian(g);

    bool abelian_exp_p = true;
    for (Elem a = 0; a < g.order && abelian_exp_p; ++a) {
      if (pow_elem(g, a, p) != g.identity) abelian_exp_p = false;
      for (Elem b = 0; b < g.order && abelian_exp_p; ++b) abelian_exp_p = g(a, b) == g(b, a);
    }
    row.elementary_abelian_gt_p = abelian_exp_p && g.order > p;

    const std::size_t d = e.group.dim();
    if (d >= 2) {
      SigmaModule h = SigmaModule::jordan_block(prime, 2);
      if (d > 2) h = direct_sum(h, SigmaModule::trivial(prime, d - 2));
      row.heisenberg_times_elementary =
          brute_force_isomorphic(g, multiplication_table(TGroup(h, zero_vec(d))));
    }
    row.holds = (row.count >= 2) == (row.elementary_abelian_gt_p || row.heisenberg_times_elementary);
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace tgk
