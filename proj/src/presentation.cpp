#include "tgk/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace tgk {

namespace {

std::string where(const std::string& source, std::size_t line, std::size_t col) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": ";
}

std::vector<std::pair<std::string, std::size_t>> split_ws(std::string_view s, std::size_t base) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(std::string(s.substr(start, i - start)), base + start);
  }
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

struct PendingText {
  std::string text;
  std::size_t line, col;
};

AugmentationMap parse_aug_at(std::string_view text, const std::vector<std::string>& gens, Prime p,
                             const std::string& source, std::size_t line, std::size_t col) {
  AugmentationMap aug{std::vector<Residue>(gens.size(), 0)};
  for (const auto& [tok, at] : split_ws(text, col)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      throw InputError(where(source, line, at) + "expected gen=value, got '" + tok + "'");
    }
    const std::string name = tok.substr(0, eq);
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) {
      throw InputError(where(source, line, at) + "unknown generator '" + name + "'");
    }
    const std::string value = tok.substr(eq + 1);
    std::int64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError(where(source, line, at + eq + 1) + "malformed residue '" + value + "'");
    }
    aug.values[static_cast<std::size_t>(it - gens.begin())] = reduce_mod(v, p);
  }
  return aug;
}

}  // namespace

PresentationFile parse_presentation(std::string_view text, const std::string& source) {
  std::optional<std::vector<std::string>> gens;
  std::optional<std::int64_t> p_value;
  std::vector<PendingText> rels;
  std::optional<PendingText> aug_text;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    if (first == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw InputError(where(source, line_no, first + 1) + "expected 'key: value'");
    }
    std::string key(line.substr(first, colon - first));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    const std::string_view value = line.substr(colon + 1);
    const std::size_t value_col = colon + 2;

    if (key == "gens") {
      if (gens) throw InputError(where(source, line_no, first + 1) + "duplicate 'gens' line");
      gens.emplace();
      for (const auto& [tok, at] : split_ws(value, value_col)) {
        if (!valid_identifier(tok)) {
          throw InputError(where(source, line_no, at) + "invalid generator name '" + tok + "'");
        }
        if (std::find(gens->begin(), gens->end(), tok) != gens->end()) {
          throw InputError(where(source, line_no, at) + "duplicate generator '" + tok + "'");
        }
        gens->push_back(tok);
      }
      if (gens->empty()) throw InputError(where(source, line_no, value_col) + "no generators");
    } else if (key == "p") {
      if (p_value) throw InputError(where(source, line_no, first + 1) + "duplicate 'p' line");
      const auto toks = split_ws(value, value_col);
      if (toks.size() != 1) throw InputError(where(source, line_no, value_col) + "expected one prime");
      try {
        std::size_t used = 0;
        p_value = std::stoll(toks[0].first, &used);
        if (used != toks[0].first.size()) throw std::invalid_argument("trailing");
        (void)Prime(*p_value);
      } catch (const std::exception&) {
        throw InputError(where(source, line_no, toks[0].second) + "invalid prime '" +
                         toks[0].first + "'");
      }
    } else if (key == "rel") {
      rels.push_back({std::string(value), line_no, value_col});
    } else if (key == "aug") {
      if (aug_text) throw InputError(where(source, line_no, first + 1) + "duplicate 'aug' line");
      aug_text = PendingText{std::string(value), line_no, value_col};
    } else {
      throw InputError(where(source, line_no, first + 1) + "unknown directive '" + key + "'");
    }
    if (end == text.size()) break;
  }
  if (!gens) throw InputError(where(source, line_no, 1) + "missing 'gens' line");
  if (!p_value) throw InputError(where(source, line_no, 1) + "missing 'p' line");

  PresentationFile out{Presentation{Prime(*p_value), *gens, {}}, std::nullopt};
  for (const auto& r : rels) {
    try {
      out.presentation.relators.push_back(parse_word(r.text, &out.presentation.generators));
    } catch (const ParseError& e) {
      throw InputError(where(source, r.line, r.col + e.offset()) + e.what());
    }
  }
  if (aug_text) {
    out.aug = parse_aug_at(aug_text->text, *gens, out.presentation.p, source, aug_text->line,
                           aug_text->col);
  }
  return out;
}

PresentationFile load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ":0:0: cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str(), path);
}

AugmentationMap parse_augmentation(std::string_view text, const std::vector<std::string>& gens,
                                   Prime p) {
  return parse_aug_at(text, gens, p, "<aug>", 1, 1);
}

AugmentationMap default_augmentation(const Presentation& pres) {
  AugmentationMap aug{std::vector<Residue>(pres.generators.size(), 0)};
  if (!aug.values.empty()) aug.values[0] = 1;
  return aug;
}

namespace {

std::unordered_map<std::string, std::size_t> index_map(const std::vector<std::string>& gens) {
  std::unordered_map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < gens.size(); ++i) m[gens[i]] = i;
  return m;
}

}  // namespace

Residue augmentation_of(const Letters& w, const Presentation& pres, const AugmentationMap& aug) {
  const auto idx = index_map(pres.generators);
  const std::uint32_t p = pres.p;
  std::uint64_t total = 0;
  for (const auto& l : w) {
    const Residue a = aug.values.at(idx.at(l.gen));
    total = (total + (l.sign > 0 ? a : (p - a) % p)) % p;
  }
  return static_cast<Residue>(total);
}

Residue augmentation_by_exponent_sums(const Word& w, const Presentation& pres,
                                      const AugmentationMap& aug) {
  const auto sums = exponent_sums(w, pres.generators);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    total = (total + static_cast<std::int64_t>(reduce_mod(sums[i], pres.p)) * aug.values[i]) %
            static_cast<std::int64_t>(pres.p.value());
  }
  return static_cast<Residue>(total);
}

void validate_augmentation(const Presentation& pres, const AugmentationMap& aug) {
  if (aug.values.size() != pres.generators.size()) {
    throw MathError("augmentation does not cover every generator");
  }
  if (std::all_of(aug.values.begin(), aug.values.end(), [](Residue r) { return r == 0; })) {
    throw MathError("augmentation is zero");
  }
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    if (augmentation_by_exponent_sums(pres.relators[i], pres, aug) != 0) {
      throw MathError("augmentation does not vanish on relator " + std::to_string(i + 1) + " (" +
                      print_word(pres.relators[i]) + ")");
    }
  }
}

namespace {

// Reidemeister-Schreier data for the kernel of the augmentation, with the
// transversal s^0..s^(p-1) for the first generator s of nonzero augmentation.
class SchreierRewriter {
 public:
  SchreierRewriter(const Presentation& pres, const AugmentationMap& aug)
      : p_(pres.p), gens_(pres.generators), idx_(index_map(pres.generators)) {
    const std::size_t n = gens_.size();
    s_ = 0;
    while (aug.values[s_] == 0) ++s_;
    alpha_ = aug.values[s_];
    const Residue alpha_inv = inverse_mod(alpha_, p_);
    shift_.resize(n);
    rank_.assign(n, 0);
    std::size_t r = 0;
    for (std::size_t g = 0; g < n; ++g) {
      shift_[g] = static_cast<Residue>(std::uint64_t{aug.values[g]} * alpha_inv % p_);
      if (g != s_) rank_[g] = r++;
    }
    dim_ = p_ * (n - 1) + 1;
  }

  std::size_t dim() const { return dim_; }
  std::size_t s() const { return s_; }
  Residue alpha() const { return alpha_; }
  Residue shift(std::size_t g) const { return shift_[g]; }
  std::size_t ex_index() const { return dim_ - 1; }

  // Index of the Schreier generator s^j g s^-(j + shift g), if it is not trivial.
  std::optional<std::size_t> edge(std::size_t j, std::size_t g) const {
    if (g == s_) return j == p_ - 1 ? std::optional<std::size_t>(ex_index()) : std::nullopt;
    return j * (gens_.size() - 1) + rank_[g];
  }

  // Image of a word in Delta^ab / p, starting at the trivial coset.
  Vec rewrite(const Letters& w, std::uint32_t* end_coset = nullptr) const {
    Vec v = zero_vec(dim_);
    std::uint32_t j = 0;
    for (const auto& l : w) {
      const std::size_t g = idx_.at(l.gen);
      if (l.sign > 0) {
        if (auto e = edge(j, g)) v[*e] = (v[*e] + 1) % p_;
        j = (j + shift_[g]) % p_;
      } else {
        j = (j + p_ - shift_[g]) % p_;
        if (auto e = edge(j, g)) v[*e] = (v[*e] + p_ - 1) % p_;
      }
    }
    if (end_coset) *end_coset = j;
    return v;
  }

  Letters s_power(std::int64_t k) const {
    Letters out;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.push_back({gens_[s_], k < 0 ? -1 : 1});
    return out;
  }

  Letters schreier_word(std::size_t index) const {
    if (index == ex_index()) return s_power(p_);
    const std::size_t j = index / (gens_.size() - 1);
    const std::size_t r = index % (gens_.size() - 1);
    std::size_t g = 0;
    while (g == s_ || rank_[g] != r) ++g;
    const std::uint32_t j2 = (static_cast<std::uint32_t>(j) + shift_[g]) % p_;
    Letters out = s_power(static_cast<std::int64_t>(j));
    out.push_back({gens_[g], 1});
    const Letters back = s_power(-static_cast<std::int64_t>(j2));
    out.insert(out.end(), back.begin(), back.end());
    return out;
  }

  std::string label(std::size_t index) const {
    if (index == ex_index()) return gens_[s_] + "^" + std::to_string(p_);
    const std::size_t j = index / (gens_.size() - 1);
    const std::size_t r = index % (gens_.size() - 1);
    std::size_t g = 0;
    while (g == s_ || rank_[g] != r) ++g;
    const std::uint32_t j2 = (static_cast<std::uint32_t>(j) + shift_[g]) % p_;
    std::string out;
    if (j) out += gens_[s_] + "^" + std::to_string(j) + " ";
    out += gens_[g];
    if (j2) out += " " + gens_[s_] + "^-" + std::to_string(j2);
    return out;
  }

  // Conjugation by s on Delta^ab / p.
  Matrix conjugation() const {
    std::vector<Vec> cols;
    cols.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      Letters w = s_power(1);
      const Letters body = schreier_word(i);
      w.insert(w.end(), body.begin(), body.end());
      w.push_back({gens_[s_], -1});
      cols.push_back(rewrite(w));
    }
    return Matrix::from_columns(p_, dim_, cols);
  }

 private:
  Prime p_;
  std::vector<std::string> gens_;
  std::unordered_map<std::string, std::size_t> idx_;
  std::size_t s_ = 0;
  Residue alpha_ = 1;
  std::vector<Residue> shift_;
  std::vector<std::size_t> rank_;
  std::size_t dim_ = 0;
};

Vec project(const Subspace& r, const std::vector<std::size_t>& comp, const Vec& v) {
  const Vec red = r.reduce(v);
  Vec out(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) out[i] = red[comp[i]];
  return out;
}

}  // namespace

PresentedTGroup tgroup_from_presentation(const Presentation& pres, const AugmentationMap& aug) {
  validate_augmentation(pres, aug);
  const Prime p = pres.p;
  const SchreierRewriter rs(pres, aug);

  const Matrix s_conj = rs.conjugation();
  std::vector<Vec> rel_vectors;
  for (const auto& r : pres.relators) {
    std::uint32_t end = 0;
    Vec v = rs.rewrite(reduce(r), &end);
    if (end != 0) throw MathError("relator does not lie in the kernel of the augmentation");
    for (std::uint32_t k = 0; k < p; ++k) {
      rel_vectors.push_back(v);
      v = s_conj.apply(v);
    }
  }
  const Subspace r = Subspace::span(p, rs.dim(), rel_vectors);
  const SigmaModule free_module(s_conj);
  const SigmaModule n_s = free_module.quotient(r);
  const auto comp = r.complement_coordinates();
  const Vec x_s = project(r, comp, unit_vec(rs.dim(), rs.ex_index()));
  const TGroup t_s(n_s, x_s);

  std::vector<TElement> images_s;
  for (std::size_t g = 0; g < pres.generators.size(); ++g) {
    Vec v = zero_vec(rs.dim());
    if (auto e = rs.edge(0, g)) v[*e] = 1;
    images_s.push_back({project(r, comp, v), rs.shift(g)});
  }

  std::vector<std::string> labels;
  for (auto c : comp) labels.push_back(rs.label(c));
  const std::string& s_name = pres.generators[rs.s()];

  // Re-base on sigma = s^c with c * alpha = 1, so that aug(sigma) = 1.
  const Residue c = inverse_mod(rs.alpha(), p);
  if (c == 1) {
    return {t_s, images_s, labels, rs.dim(), s_name};
  }
  const TElement sigma_s{zero_vec(t_s.dim()), c};
  TGroup t(SigmaModule(n_s.sigma().pow(c)), scale(x_s, c, p));
  std::vector<TElement> images;
  for (const auto& g : images_s) {
    const Residue k = static_cast<Residue>(std::uint64_t{g.k} * rs.alpha() % p);
    const TElement rest = t_s.multiply(g, t_s.inverse(t_s.power(sigma_s, k)));
    if (rest.k != 0) throw MathError("internal: coset bookkeeping failed");
    images.push_back({rest.v, k});
  }
  return {t, images, labels, rs.dim(), s_name + "^" + std::to_string(c)};
}

}  // namespace tgk
