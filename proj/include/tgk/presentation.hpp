#pragma once

// Finite presentations with an augmentation onto Z/p, and the T-group
// Gamma / Delta^p [Delta, Delta] they define, where Delta is the kernel of the
// augmentation.
//
// File format (one directive per line, '#' starts a comment):
//   gens: a b c
//   p: 5
//   rel: a^25 * ^3[a,b]
//   aug: a=1 b=0 c=0

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tgk/tgroup.hpp"
#include "tgk/words.hpp"

namespace tgk {

// Malformed user input; the message starts with "source:line:col: ".
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Presentation {
  Prime p;
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

struct AugmentationMap {
  std::vector<Residue> values;  // aligned with Presentation::generators
};

struct PresentationFile {
  Presentation presentation;
  std::optional<AugmentationMap> aug;
};

PresentationFile parse_presentation(std::string_view text, const std::string& source);
PresentationFile load_presentation(const std::string& path);

// "a=1 b=0"; generators not mentioned map to 0.
AugmentationMap parse_augmentation(std::string_view text, const std::vector<std::string>& gens,
                                   Prime p);
// First generator to 1, the rest to 0.
AugmentationMap default_augmentation(const Presentation& pres);

// aug(w) computed letter by letter.
Residue augmentation_of(const Letters& w, const Presentation& pres, const AugmentationMap& aug);
// aug(w) computed from the exponent-sum vector.
Residue augmentation_by_exponent_sums(const Word& w, const Presentation& pres,
                                      const AugmentationMap& aug);
// Throws MathError unless aug is nonzero and vanishes on every relator.
void validate_augmentation(const Presentation& pres, const AugmentationMap& aug);

struct PresentedTGroup {
  TGroup group;
  std::vector<TElement> generator_images;
  // Schreier generators whose images form the basis of N.
  std::vector<std::string> basis_labels;
  // Number of Schreier generators before relators: p(n - 1) + 1.
  std::size_t free_rank = 0;
  // Word used as the lift sigma (aug = 1).
  std::string sigma_word;
};

PresentedTGroup tgroup_from_presentation(const Presentation& pres, const AugmentationMap& aug);

}  // namespace tgk
