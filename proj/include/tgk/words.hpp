#pragma once

// Free-group words.  A Word is a syntax tree; flatten() expands it into a
// letter sequence and reduce() cancels adjacent inverse pairs.
//
// Commutators bracket to the left: [a,b] = a b a^-1 b^-1, and the iterated
// form is ^0[a,b] = b, ^n[a,b] = [a, ^(n-1)[a,b]].
//
// Grammar:
//   word    := factor (('*')? factor)*  |  '1'
//   factor  := atom ('^' int)*
//   atom    := ident | '(' word ')' | '[' word ',' word ']' | '^' n '[' word ',' word ']'
// A '^' followed by a number and then '[' always opens an iterated commutator,
// so "a^2[a,b]" reads as a * ^2[a,b].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error(message), offset_(offset) {}
  // 0-based byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Word {
  enum class Kind { Gen, Product, Power, Comm };

  Kind kind = Kind::Product;
  std::string gen;            // Gen
  std::int64_t exponent = 0;  // Power
  std::size_t depth = 0;      // Comm
  std::vector<Word> children;  // Product: factors; Power: base; Comm: (a, b)

  static Word generator(std::string name);
  static Word identity() { return Word{}; }
  static Word product(std::vector<Word> factors);
  static Word power(Word base, std::int64_t exponent);
  static Word commutator(Word a, Word b, std::size_t depth = 1);

  friend bool operator==(const Word&, const Word&) = default;
};

struct Letter {
  std::string gen;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Letters = std::vector<Letter>;

// Parses a word.  When `generators` is given, unknown symbols are errors.
Word parse_word(std::string_view text, const std::vector<std::string>* generators = nullptr);
std::string print_word(const Word& w);

// Expansion limit for flatten(); longer words are rejected.
inline constexpr std::size_t kMaxLetters = std::size_t{1} << 22;

Letters flatten(const Word& w);
Letters inverse(const Letters& w);
Letters free_reduce(const Letters& w);
Letters reduce(const Word& w);
std::string print_letters(const Letters& w);

// Exponent sum of each generator, computed on the tree without expanding it.
std::vector<std::int64_t> exponent_sums(const Word& w, const std::vector<std::string>& generators);

// Relator of the shape  s1^q * ^f[s1,s2] * [a,b]... * [s1^p,c]...
struct RelatorPattern {
  std::string s1, s2;
  std::int64_t q = 0;
  std::size_t f = 0;
  std::vector<std::pair<std::string, std::string>> j_pairs;
  std::vector<std::string> k_indices;
};

// Purely structural match of a single relator; p fixes the exponent expected
// inside the [s1^p, c] factors.
std::optional<RelatorPattern> match_corollary_relator(const Word& relator, std::uint32_t p);

}  // namespace tgk
