#include "tgk/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "tgk/detector.hpp"
#include "tgk/oracle.hpp"
#include "tgk/presentation.hpp"
#include "tgk/report.hpp"
#include "tgk/spectral.hpp"

namespace tgk {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotGalois = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ":0:0: cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string profile_string(const std::vector<std::size_t>& r) {
  std::vector<std::string> parts;
  for (std::size_t v : r) parts.push_back(std::to_string(v));
  return "[" + join(parts, ", ") + "]";
}

void put_verdict(Report& rep, const std::string& key, const Verdict& v) {
  rep.open(key);
  rep.field("outcome", to_string(v.outcome));
  if (!v.clause.empty()) rep.field("clause", v.clause);
  rep.field("reason", v.reason);
  if (!v.witness.empty()) {
    rep.open("witness");
    for (const auto& [k, val] : v.witness) rep.field(k, val);
    rep.close();
  }
  rep.close();
}

void put_invariants(Report& rep, const TInvariants& inv) {
  rep.field("invariants", inv.to_string());
  const H1Prediction h1 = predicted_h1_dims(inv);
  rep.field("dim_n", std::to_string(h1.dim_n));
  rep.field("dim_h1_n_plus_one", std::to_string(h1.one_plus_dim_n));
  if (h1.dim_center) rep.field("dim_center", std::to_string(*h1.dim_center));
}

// Parses "p dim" then dim rows; errors carry file:line:col.
Matrix parse_matrix_file(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](std::size_t col, const std::string& msg) -> InputError {
    return InputError(source + ":" + std::to_string(line_no) + ":" + std::to_string(col) + ": " +
                      msg);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#') {
        return true;
      }
    }
    return false;
  };
  auto numbers = [&]() {
    std::vector<std::pair<std::int64_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (line[i] == '-') ++i;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      if (i == start || (i == start + 1 && line[start] == '-') ||
          (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))) {
        throw fail(start + 1, "expected an integer");
      }
      out.emplace_back(std::stoll(line.substr(start, i - start)), start + 1);
    }
    return out;
  };

  if (!next_line()) throw fail(1, "empty matrix file; expected 'p dim'");
  const auto header = numbers();
  if (header.size() != 2) throw fail(1, "header must be 'p dim'");
  std::optional<Prime> p;
  try {
    p.emplace(header[0].first);
  } catch (const std::exception&) {
    throw fail(header[0].second, "p = " + std::to_string(header[0].first) + " is not prime");
  }
  if (header[1].first <= 0) throw fail(header[1].second, "dim must be positive");
  const auto dim = static_cast<std::size_t>(header[1].first);
  Matrix m(*p, dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!next_line()) throw fail(1, "expected " + std::to_string(dim) + " matrix rows, got " + std::to_string(r));
    const auto row = numbers();
    if (row.size() != dim) {
      throw fail(1, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(dim));
    }
    for (std::size_t c = 0; c < dim; ++c) m.set(r, c, row[c].first);
  }
  if (next_line()) throw fail(1, "trailing data after the matrix rows");
  return m;
}

struct Inputs {
  std::string presentation, aug, tuple, matrix, variant = "omega1";
  std::uint32_t p = 0;
  std::size_t max_dim = 2, sigma_h1 = 0, sigma_h2 = 0;
  bool zp2 = false, serial = false;
};

int cmd_decompose(const Inputs& in, Report& rep) {
  const std::string text = read_file(in.matrix);
  rep.add_input(text);
  const Matrix m = parse_matrix_file(text, in.matrix);
  const SigmaModule mod(m);
  rep.field("p", std::to_string(mod.p()));
  rep.field("dim", std::to_string(mod.dim()));
  rep.field("multiset", mod.decompose().to_string());
  rep.field("rank_profile", profile_string(mod.rank_profile()));
  rep.field("dim_fixed", std::to_string(mod.fixed_submodule().dim()));
  return kExitOk;
}

struct LoadedPresentation {
  Presentation pres;
  AugmentationMap aug;
};

LoadedPresentation load(const Inputs& in, Report& rep) {
  const std::string text = read_file(in.presentation);
  rep.add_input(text);
  PresentationFile file = parse_presentation(text, in.presentation);
  AugmentationMap aug;
  if (!in.aug.empty()) {
    rep.add_input(in.aug);
    aug = parse_augmentation(in.aug, file.presentation.generators, file.presentation.p);
  } else if (file.aug) {
    aug = *file.aug;
  } else {
    aug = default_augmentation(file.presentation);
  }
  validate_augmentation(file.presentation, aug);
  return {std::move(file.presentation), std::move(aug)};
}

void put_presentation(Report& rep, const Presentation& pres, const AugmentationMap& aug) {
  rep.field("p", std::to_string(pres.p.value()));
  rep.field("generators", join(pres.generators, " "));
  std::vector<std::string> rels, augs;
  for (const auto& r : pres.relators) rels.push_back(print_word(r));
  for (std::size_t i = 0; i < pres.generators.size(); ++i) {
    augs.push_back(pres.generators[i] + "=" + std::to_string(aug.values[i]));
  }
  rep.field("relators", rels.empty() ? "(none)" : join(rels, "; "));
  rep.field("augmentation", join(augs, " "));
}

void put_tgroup(Report& rep, const PresentedTGroup& pt) {
  rep.field("sigma_word", pt.sigma_word);
  rep.field("schreier_rank", std::to_string(pt.free_rank));
  rep.field("module", pt.group.module().decompose().to_string());
}

int cmd_invariants(const Inputs& in, Report& rep) {
  if (!in.presentation.empty()) {
    const auto [pres, aug] = load(in, rep);
    put_presentation(rep, pres, aug);
    const PresentedTGroup pt = tgroup_from_presentation(pres, aug);
    put_tgroup(rep, pt);
    put_invariants(rep, invariants(pt.group));
    return kExitOk;
  }
  if (in.tuple.empty() || in.p == 0) throw InputError("invariants: give --presentation, or --tuple with --p");
  rep.add_input(std::to_string(in.p) + " " + in.tuple);
  const TInvariants inv = parse_tuple(in.tuple, in.p);
  if (auto bad = inv.violation()) throw InputError("invariants: invalid tuple " + inv.to_string() + ": " + *bad);
  const TGroup t = construct_canonical(inv);
  rep.field("p", std::to_string(in.p));
  rep.field("module", t.module().decompose().to_string());
  std::vector<std::string> xs;
  for (Residue r : t.x()) xs.push_back(std::to_string(r));
  rep.field("x", "(" + join(xs, " ") + ")");
  put_invariants(rep, invariants(t));
  return kExitOk;
}

int cmd_realizable(const Inputs& in, Report& rep) {
  if (in.tuple.empty() || in.p == 0) throw InputError("realizable: --tuple and --p are required");
  rep.add_input(std::to_string(in.p) + " " + in.tuple);
  const TInvariants inv = parse_tuple(in.tuple, in.p);
  if (auto bad = inv.violation()) throw InputError("realizable: invalid tuple " + inv.to_string() + ": " + *bad);
  rep.field("invariants", inv.to_string());
  const Verdict v = realizable_as_tef(inv);
  put_verdict(rep, "verdict", v);
  return v.outcome == Outcome::NotAbsoluteGalois ? kExitNotGalois : kExitOk;
}

int cmd_detect(const Inputs& in, Report& rep) {
  const auto [pres, aug] = load(in, rep);
  put_presentation(rep, pres, aug);
  const std::uint32_t p = pres.p.value();
  std::vector<Verdict> verdicts;

  rep.open("relator_matcher");
  if (pres.relators.size() == 1 && p > 2) {
    const Verdict v = corollary_relator_verdict(pres);
    put_verdict(rep, "verdict", v);
    verdicts.push_back(v);
  } else {
    rep.field("skipped", p == 2 ? "p = 2" : std::to_string(pres.relators.size()) + " relators");
  }
  rep.close();

  const PresentedTGroup pt = tgroup_from_presentation(pres, aug);
  const TInvariants inv = invariants(pt.group);
  rep.open("tgroup");
  put_tgroup(rep, pt);
  put_invariants(rep, inv);
  rep.close();

  const Verdict th2 = realizable_as_tef(inv);
  put_verdict(rep, "realizability", th2);
  verdicts.push_back(th2);

  if (p > 2 && !pt.group.is_abelian()) {
    const Verdict ef = corollary_ef_test(pt.group);
    put_verdict(rep, "ef_test", ef);
    verdicts.push_back(ef);
  }

  const Thm1Sweep sweep = theorem1_sweep(pt.group);
  rep.open("commutator_sweep");
  rep.field("checks", std::to_string(sweep.checks));
  rep.field("fired", std::to_string(sweep.fired.size()));
  for (std::size_t i = 0; i < sweep.fired.size(); ++i) put_verdict(rep, "hit" + std::to_string(i), sweep.fired[i]);
  rep.close();
  verdicts.insert(verdicts.end(), sweep.fired.begin(), sweep.fired.end());

  Verdict overall;
  overall.reason = "no implemented criterion applies (the checks are sound, not complete)";
  for (const auto& v : verdicts) {
    if (v.outcome == Outcome::NotAbsoluteGalois) {
      overall = v;
      break;
    }
  }
  put_verdict(rep, "verdict", overall);
  return overall.outcome == Outcome::NotAbsoluteGalois ? kExitNotGalois : kExitOk;
}

void put_cohomology(Report& rep, const BigradedPage& page, const CohomologyReport& c) {
  rep.open("e2");
  for (const Piece* piece : page.pieces()) {
    rep.field(piece->name, piece->module.decompose().to_string());
  }
  rep.close();
  rep.open("differentials");
  for (const Differential* d : page.differentials()) {
    rep.open(d->name);
    rep.field("rank", std::to_string(d->matrix.rank()));
    rep.field("equivariant", yes_no(is_equivariant(*d)));
    rep.close();
  }
  rep.field("symbolic_d01_agrees", yes_no(page.d01().matrix == page.d01_symbolic()));
  rep.field("symbolic_d11_agrees", yes_no(page.d11().matrix == page.d11_symbolic()));
  rep.close();
  rep.open("kernels");
  rep.field("d2^{0,1}", c.e3.ker_d01.to_string());
  rep.field("d2^{1,1}", c.e3.ker_d11.to_string());
  rep.field("d2^{0,2}", c.e3.ker_d02.to_string());
  rep.close();
  rep.open("e_inf");
  rep.field("E^{1,0}", c.e_inf_10.to_string());
  rep.field("E^{0,1}", c.e_inf_01.to_string());
  rep.field("E^{2,0}", c.e_inf_20.to_string());
  rep.field("E^{1,1}", c.e_inf_11.to_string());
  rep.field("E^{0,2}", c.e_inf_02.to_string());
  rep.close();
  rep.open("splitting");
  rep.field("kind", c.certificate.kind);
  rep.field("ok", yes_no(c.certificate.ok));
  for (const auto& [piece, ev] : c.certificate.eigenvalues) rep.field("phi on " + piece, std::to_string(ev));
  rep.close();
  rep.field("H1", c.h1.to_string());
  rep.field("H2", c.h2 ? c.h2->to_string() : "(not split)");
  rep.field("H2_dec", c.h2_dec ? c.h2_dec->to_string() : "(not split)");
  rep.field("decomposable", yes_no(c.decomposable));
  for (std::size_t i = 0; i < c.notes.size(); ++i) rep.field("note" + std::to_string(i), c.notes[i]);
}

int cmd_cohomology(const Inputs& in, Report& rep) {
  if (in.p == 0) throw InputError("cohomology: --p is required");
  rep.add_input(in.variant + " " + std::to_string(in.p));
  const BigradedPage page(ExtensionSpec(parse_variant(in.variant), Prime(in.p)));
  const CohomologyReport c = assemble(page);
  rep.field("variant", to_string(c.variant));
  rep.field("p", std::to_string(c.p));
  put_cohomology(rep, page, c);
  return kExitOk;
}

int cmd_family(const Inputs& in, Report& rep) {
  if (in.p == 0) throw InputError("family: --p is required");
  rep.add_input(in.variant + " " + std::to_string(in.p) + " " + std::to_string(in.sigma_h1) + " " +
                std::to_string(in.sigma_h2) + " " + yes_no(in.zp2));
  const Prime p(in.p);
  const BigradedPage page(ExtensionSpec(parse_variant(in.variant), p));
  const CohomologyReport c = assemble(page);
  rep.field("variant", to_string(c.variant));
  rep.field("p", std::to_string(in.p));
  rep.field("sigma_h1_dim", std::to_string(in.sigma_h1));
  rep.field("sigma_h2_dim", std::to_string(in.sigma_h2));
  rep.field("zp2_quotient", yes_no(in.zp2));
  rep.field("omega_H1", c.h1.to_string());
  rep.field("omega_H2_dec", c.h2_dec ? c.h2_dec->to_string() : "(not split)");
  if (!c.h2_dec) {
    Verdict v;
    v.reason = "the E_inf filtration of H^2 did not split";
    put_verdict(rep, "verdict", v);
    return kExitOk;
  }
  ModuleMultiset sigma_h2(p);
  sigma_h2.set(1, in.sigma_h2);
  const DeltaCohomology d = delta_assembly(c.h1, *c.h2_dec, in.sigma_h1, sigma_h2);
  rep.field("delta_H1", d.h1.to_string());
  rep.field("delta_H2_dec", d.h2.to_string());
  const Verdict v = h2dec_summand_test(d.h2, in.zp2);
  put_verdict(rep, "verdict", v);
  return v.outcome == Outcome::NotAbsoluteGalois ? kExitNotGalois : kExitOk;
}

int cmd_oracle(const Inputs& in, Report& rep) {
  if (in.p == 0) throw InputError("oracle: --p is required");
  rep.add_input(std::to_string(in.p) + " " + std::to_string(in.max_dim));
  const ExecPolicy policy = in.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
  const std::vector<CensusEntry> entries = enumerate_tgroups(in.p, in.max_dim, policy);
  rep.field("p", std::to_string(in.p));
  rep.field("max_dim", std::to_string(in.max_dim));
  rep.field("entries", std::to_string(entries.size()));
  rep.open("census");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    rep.field("entry" + std::to_string(i), "class=" + std::to_string(e.class_id) + " " + e.inv.to_string() +
                                               " canonical=" + yes_no(e.canonical) + " data=" + e.label);
  }
  rep.close();

  std::set<std::size_t> classes;
  for (const auto& e : entries) classes.insert(e.class_id);
  rep.field("classes", std::to_string(classes.size()));
  std::size_t tuples = 0;
  for (std::size_t d = 1; d <= in.max_dim; ++d) tuples += valid_tuples(in.p, d, d).size();
  rep.field("valid_tuples", std::to_string(tuples));

  bool agree = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const bool same = entries[i].class_id == entries[j].class_id;
      agree = agree && same == (entries[i].inv == entries[j].inv) &&
              same == is_isomorphic(entries[i].group, entries[j].group);
    }
  }
  rep.field("classes_match_invariants", yes_no(agree && classes.size() == tuples));
  return kExitOk;
}

}  // namespace

TInvariants parse_tuple(const std::string& text, std::uint32_t p) {
  const Prime prime(p);
  std::vector<std::size_t> t(p + 1, 0);
  std::optional<std::size_t> u;
  std::string body;
  for (char c : text) {
    if (c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c))) body += c;
  }
  std::istringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq + 1 == item.size()) {
      throw InputError("tuple: expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("tuple: '" + item.substr(eq + 1) + "' is not a nonnegative integer");
    }
    if (key == "u") {
      u = value;
    } else if (key.size() > 1 && key[0] == 't') {
      std::size_t i = 0;
      try {
        i = std::stoul(key.substr(1));
      } catch (const std::exception&) {
        throw InputError("tuple: bad key '" + key + "'");
      }
      if (i < 1 || i > p) throw InputError("tuple: index " + key + " outside 1..p");
      t[i] = value;
    } else {
      throw InputError("tuple: unknown key '" + key + "' (expected t1..tp or u)");
    }
  }
  if (!u) throw InputError("tuple: u is required");
  return TInvariants(p, t, *u);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GF(p) toolkit for T-groups and their cohomology", "tgk"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Print elapsed time to stderr");
  Inputs in;

  auto* decompose = app.add_subcommand("decompose", "Jordan decomposition of a sigma-matrix file");
  decompose->add_option("--matrix", in.matrix, "File: 'p dim' then dim rows")->required();

  auto* inv = app.add_subcommand("invariants", "Invariants of a presented or canonical T-group");
  inv->add_option("--presentation", in.presentation, "Presentation file");
  inv->add_option("--aug", in.aug, "Augmentation, e.g. \"a=1 b=0\"");
  inv->add_option("--tuple", in.tuple, "Invariant tuple, e.g. t1=1,t5=2,u=1");
  inv->add_option("--p", in.p, "Prime for --tuple");

  auto* real = app.add_subcommand("realizable", "Realizability of an invariant tuple");
  real->add_option("--tuple", in.tuple, "Invariant tuple")->required();
  real->add_option("--p", in.p, "Prime")->required();

  auto* detect = app.add_subcommand("detect", "Run every detector on a presentation");
  detect->add_option("--presentation", in.presentation, "Presentation file")->required();
  detect->add_option("--aug", in.aug, "Augmentation override");

  auto* coh = app.add_subcommand("cohomology", "Spectral-sequence cohomology of Omega_1 or Omega_2");
  coh->add_option("--variant", in.variant, "omega1 or omega2")->required();
  coh->add_option("--p", in.p, "Prime > 3")->required();

  auto* fam = app.add_subcommand("family", "Cohomology of the product family and its verdict");
  fam->add_option("--variant", in.variant, "omega1 or omega2")->required();
  fam->add_option("--p", in.p, "Prime > 3")->required();
  fam->add_option("--sigma-h1", in.sigma_h1, "dim H^1(Sigma)");
  fam->add_option("--sigma-h2", in.sigma_h2, "dim H^2(Sigma)");
  fam->add_flag("--zp2", in.zp2, "The group has a Z/p^2 quotient");

  auto* orc = app.add_subcommand("oracle", "Brute-force census of small T-groups");
  orc->add_option("--p", in.p, "Prime")->required();
  orc->add_option("--max-dim", in.max_dim, "Largest dim N");
  orc->add_flag("--serial", in.serial, "Use the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> echo{"tgk"};
  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) != "--timing") echo.emplace_back(argv[i]);
  }
  Report rep(join(echo, " "));
  int code = kExitOk;
  try {
    const std::string name = sub->get_name();
    if (name == "decompose") code = cmd_decompose(in, rep);
    else if (name == "invariants") code = cmd_invariants(in, rep);
    else if (name == "realizable") code = cmd_realizable(in, rep);
    else if (name == "detect") code = cmd_detect(in, rep);
    else if (name == "cohomology") code = cmd_cohomology(in, rep);
    else if (name == "family") code = cmd_family(in, rep);
    else code = cmd_oracle(in, rep);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  rep.field("exit_code", std::to_string(code));
  rep.write(out);
  if (timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << "timing: " << sub->get_name() << " " << ms << " ms\n";
  }
  return code;
}

}  // namespace tgk
