#include "tgk/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace tgk {

Word Word::generator(std::string name) {
  Word w;
  w.kind = Kind::Gen;
  w.gen = std::move(name);
  return w;
}

Word Word::product(std::vector<Word> factors) {
  Word w;
  w.kind = Kind::Product;
  w.children = std::move(factors);
  return w;
}

Word Word::power(Word base, std::int64_t exponent) {
  Word w;
  w.kind = Kind::Power;
  w.exponent = exponent;
  w.children.push_back(std::move(base));
  return w;
}

Word Word::commutator(Word a, Word b, std::size_t depth) {
  Word w;
  w.kind = Kind::Comm;
  w.depth = depth;
  w.children.push_back(std::move(a));
  w.children.push_back(std::move(b));
  return w;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>* gens) : s_(text), gens_(gens) {}

  Word parse() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '1') {
      const std::size_t at = pos_++;
      skip();
      if (pos_ != s_.size()) throw ParseError(at, "'1' must stand alone");
      return Word::identity();
    }
    Word w = word();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return w;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '[' || c == '^';
  }

  Word word() {
    std::vector<Word> factors;
    if (!starts_atom()) throw ParseError(pos_, "expected a word");
    factors.push_back(factor());
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        if (!starts_atom()) throw ParseError(pos_, "expected a factor after '*'");
        factors.push_back(factor());
      } else if (starts_atom()) {
        factors.push_back(factor());
      } else {
        break;
      }
    }
    if (factors.size() == 1) return std::move(factors.front());
    return Word::product(std::move(factors));
  }

  // True when the text at pos_ is '^' digits '[' (an iterated commutator).
  bool at_iterated_commutator() {
    std::size_t i = pos_;
    if (i >= s_.size() || s_[i] != '^') return false;
    ++i;
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    const std::size_t digits = i;
    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
    if (i == digits) return false;
    while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
    return i < s_.size() && s_[i] == '[';
  }

  Word factor() {
    Word w = atom();
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '^' || at_iterated_commutator()) break;
      ++pos_;
      w = Word::power(std::move(w), integer(true));
    }
    return w;
  }

  std::int64_t integer(bool allow_sign) {
    skip();
    const std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    std::int64_t value = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
        throw ParseError(start, "exponent too large");
      }
      value = value * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == digits) throw ParseError(start, "malformed exponent");
    return negative ? -value : value;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) {
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Word bracket(std::size_t depth) {
    expect('[');
    Word a = word();
    expect(',');
    Word b = word();
    expect(']');
    return Word::commutator(std::move(a), std::move(b), depth);
  }

  Word atom() {
    skip();
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') return bracket(1);
    if (c == '^') {
      ++pos_;
      const auto n = integer(false);
      return bracket(static_cast<std::size_t>(n));
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (gens_ && std::find(gens_->begin(), gens_->end(), name) == gens_->end()) {
      throw ParseError(start, "unknown generator '" + name + "'");
    }
    return Word::generator(std::move(name));
  }

  std::string_view s_;
  const std::vector<std::string>* gens_;
  std::size_t pos_ = 0;
};

void print_into(const Word& w, std::string& out, bool inside_product);

void print_base(const Word& w, std::string& out) {
  if (w.kind == Word::Kind::Gen || w.kind == Word::Kind::Comm) {
    print_into(w, out, false);
  } else {
    out += '(';
    print_into(w, out, false);
    out += ')';
  }
}

void print_into(const Word& w, std::string& out, bool inside_product) {
  switch (w.kind) {
    case Word::Kind::Gen:
      out += w.gen;
      break;
    case Word::Kind::Power:
      print_base(w.children[0], out);
      out += '^' + std::to_string(w.exponent);
      break;
    case Word::Kind::Comm:
      if (w.depth != 1) out += '^' + std::to_string(w.depth);
      out += '[';
      print_into(w.children[0], out, false);
      out += ',';
      print_into(w.children[1], out, false);
      out += ']';
      break;
    case Word::Kind::Product:
      if (w.children.empty()) {
        out += '1';
        break;
      }
      if (inside_product) out += '(';
      for (std::size_t i = 0; i < w.children.size(); ++i) {
        if (i) out += " * ";
        print_into(w.children[i], out, true);
      }
      if (inside_product) out += ')';
      break;
  }
}

void append(Letters& out, const Letters& more) {
  if (out.size() + more.size() > kMaxLetters) throw std::length_error("word expansion too long");
  out.insert(out.end(), more.begin(), more.end());
}

Letters flatten_rec(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Gen:
      return {Letter{w.gen, 1}};
    case Word::Kind::Product: {
      Letters out;
      for (const auto& c : w.children) append(out, flatten_rec(c));
      return out;
    }
    case Word::Kind::Power: {
      const Letters base = free_reduce(flatten_rec(w.children[0]));
      const Letters unit = w.exponent < 0 ? inverse(base) : base;
      const std::uint64_t n = w.exponent < 0 ? static_cast<std::uint64_t>(-w.exponent)
                                             : static_cast<std::uint64_t>(w.exponent);
      if (!unit.empty() && n > kMaxLetters / unit.size()) {
        throw std::length_error("word expansion too long");
      }
      Letters out;
      for (std::uint64_t i = 0; i < n; ++i) append(out, unit);
      return out;
    }
    case Word::Kind::Comm: {
      const Letters a = free_reduce(flatten_rec(w.children[0]));
      Letters x = free_reduce(flatten_rec(w.children[1]));
      const Letters a_inv = inverse(a);
      for (std::size_t n = 0; n < w.depth; ++n) {
        Letters next;
        append(next, a);
        append(next, x);
        append(next, a_inv);
        append(next, inverse(x));
        x = free_reduce(next);
      }
      return x;
    }
  }
  return {};
}

void sums_rec(const Word& w, const std::vector<std::string>& gens, std::int64_t scale,
              std::vector<std::int64_t>& out) {
  switch (w.kind) {
    case Word::Kind::Gen: {
      auto it = std::find(gens.begin(), gens.end(), w.gen);
      if (it == gens.end()) throw std::invalid_argument("unknown generator '" + w.gen + "'");
      out[static_cast<std::size_t>(it - gens.begin())] += scale;
      break;
    }
    case Word::Kind::Product:
      for (const auto& c : w.children) sums_rec(c, gens, scale, out);
      break;
    case Word::Kind::Power:
      sums_rec(w.children[0], gens, scale * w.exponent, out);
      break;
    case Word::Kind::Comm:
      // ^0[a,b] = b; deeper commutators have exponent sum zero.
      if (w.depth == 0) sums_rec(w.children[1], gens, scale, out);
      break;
  }
}

bool is_gen(const Word& w, const std::string& name) {
  return w.kind == Word::Kind::Gen && (name.empty() || w.gen == name);
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>* generators) {
  return Parser(text, generators).parse();
}

std::string print_word(const Word& w) {
  std::string out;
  print_into(w, out, false);
  return out;
}

Letters flatten(const Word& w) { return flatten_rec(w); }

Letters inverse(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

Letters free_reduce(const Letters& w) {
  Letters out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Letters reduce(const Word& w) { return free_reduce(flatten(w)); }

std::string print_letters(const Letters& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].gen;
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

std::vector<std::int64_t> exponent_sums(const Word& w, const std::vector<std::string>& generators) {
  std::vector<std::int64_t> out(generators.size(), 0);
  sums_rec(w, generators, 1, out);
  return out;
}

std::optional<RelatorPattern> match_corollary_relator(const Word& relator, std::uint32_t p) {
  if (relator.kind != Word::Kind::Product || relator.children.size() < 2) return std::nullopt;
  const auto& fs = relator.children;
  RelatorPattern pat;

  // Leading s1^q (a bare s1 counts as q = 1).
  if (is_gen(fs[0], "")) {
    pat.s1 = fs[0].gen;
    pat.q = 1;
  } else if (fs[0].kind == Word::Kind::Power && is_gen(fs[0].children[0], "") &&
             fs[0].exponent >= 0) {
    pat.s1 = fs[0].children[0].gen;
    pat.q = fs[0].exponent;
  } else {
    return std::nullopt;
  }

  const Word& lead = fs[1];
  if (lead.kind != Word::Kind::Comm || lead.depth < 1 || !is_gen(lead.children[0], pat.s1) ||
      !is_gen(lead.children[1], "") || lead.children[1].gen == pat.s1) {
    return std::nullopt;
  }
  pat.f = lead.depth;
  pat.s2 = lead.children[1].gen;

  std::size_t i = 2;
  for (; i < fs.size(); ++i) {
    const Word& c = fs[i];
    if (c.kind != Word::Kind::Comm || c.depth != 1 || !is_gen(c.children[0], "") ||
        !is_gen(c.children[1], "")) {
      break;
    }
    pat.j_pairs.emplace_back(c.children[0].gen, c.children[1].gen);
  }
  for (; i < fs.size(); ++i) {
    const Word& c = fs[i];
    if (c.kind != Word::Kind::Comm || c.depth != 1 || !is_gen(c.children[1], "")) {
      return std::nullopt;
    }
    const Word& base = c.children[0];
    if (base.kind != Word::Kind::Power || base.exponent != static_cast<std::int64_t>(p) ||
        !is_gen(base.children[0], pat.s1)) {
      return std::nullopt;
    }
    pat.k_indices.push_back(c.children[1].gen);
  }
  return pat;
}

}  // namespace tgk
