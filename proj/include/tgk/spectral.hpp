#pragma once

// E_2 pages of the two central extensions Omega_1 and Omega_2 of the free
// abelian-by-cyclic quotient, in total degree <= 3, with the explicit d_2.
//
// Notation: Y = E^{1,0} has basis y_0..y_{p-1} permuted cyclically by sigma;
// Z = E^{0,1} is spanned by z (Omega_1, trivial action) or by z_0..z_{p-2}
// with sigma z_i = z_{i+1} and z_{p-1} = -(z_0 + ... + z_{p-2}) (Omega_2).
// The pieces are
//   E^{2,0} = L2 Y,  E^{3,0} = L3 Y,  E^{1,1} = Z (x) Y,
//   E^{0,2} = L2 Z,  E^{2,1} = Z (x) L2 Y,
// and d_2 is the derivation determined by d_2(y_i) = 0 and
//   Omega_1:  d_2(z)   = sum_i y_i y_{i+1}
//   Omega_2:  d_2(z_i) = (sigma - 1)^3 y_i y_{i+1}.

#include <optional>
#include <string>
#include <vector>

#include "tgk/detector.hpp"
#include "tgk/sigma_module.hpp"

namespace tgk {

enum class Variant { Omega1, Omega2 };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

struct ExtensionSpec {
  Variant variant;
  Prime p;
  // Rejects p <= 3.
  ExtensionSpec(Variant v, Prime prime);
};

struct Piece {
  std::string name;  // "E^{2,0}" etc.
  SigmaModule module;
  std::vector<std::string> labels;
};

struct Differential {
  std::string name;  // "d2^{0,1}" etc.
  const Piece* source;
  const Piece* target;
  Matrix matrix;
};

class BigradedPage {
 public:
  explicit BigradedPage(const ExtensionSpec& spec);
  BigradedPage(const BigradedPage&) = delete;
  BigradedPage& operator=(const BigradedPage&) = delete;

  const ExtensionSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  const Piece& e10() const { return e10_; }
  const Piece& e01() const { return e01_; }
  const Piece& e20() const { return e20_; }
  const Piece& e30() const { return e30_; }
  const Piece& e11() const { return e11_; }
  const Piece& e02() const { return e02_; }
  const Piece& e21() const { return e21_; }
  const Differential& d01() const { return d01_; }
  const Differential& d11() const { return d11_; }
  const Differential& d02() const { return d02_; }
  std::vector<const Piece*> pieces() const;
  std::vector<const Differential*> differentials() const;

  // d_2 on E^{1,1} by wedging symbolic monomials, independent of d11().
  Matrix d11_symbolic() const;
  // d_2 on E^{0,1} written out as a combination of monomials y_a y_b.
  Matrix d01_symbolic() const;

 private:
  ExtensionSpec spec_;
  Piece e10_, e01_, e20_, e30_, e11_, e02_, e21_;
  Differential d01_, d11_, d02_;
};

bool is_equivariant(const Differential& d);

struct E3Pieces {
  ModuleMultiset ker_d01, ker_d11, ker_d02;
  ModuleMultiset e3_20, e3_11, e3_02;
  // Products of surviving degree-one classes: (ker d01).Y and L2(ker d01).
  ModuleMultiset dec_11, dec_02;
  std::size_t rank_d01 = 0, rank_d11 = 0, rank_d02 = 0;
  Subspace ker_d01_space, ker_d11_space, ker_d02_space, im_d01_space;
  Subspace dec_11_space, dec_02_space;
};
E3Pieces e3_pieces(const BigradedPage& page);

struct SplittingCertificate {
  std::string kind;  // "vanishing" or "phi-eigenvalues"
  bool ok = false;
  std::vector<std::pair<std::string, Residue>> eigenvalues;  // phi on E^{2,0}, E^{1,1}, E^{0,2}
};

struct CohomologyReport {
  Variant variant;
  std::uint32_t p;
  ModuleMultiset e_inf_10, e_inf_01, e_inf_20, e_inf_11, e_inf_02;
  ModuleMultiset h1;
  std::optional<ModuleMultiset> h2;      // empty when the certificate fails
  std::optional<ModuleMultiset> h2_dec;  // subquotient generated by H^1
  SplittingCertificate certificate;
  bool decomposable = false;
  E3Pieces e3;
  std::vector<std::string> notes;
};

CohomologyReport assemble(const BigradedPage& page);
bool check_decomposable(const BigradedPage& page);
bool check_decomposable(const BigradedPage& page, const E3Pieces& e3);

struct DeltaCohomology {
  ModuleMultiset h1;
  ModuleMultiset h2;
};
// Cohomology of (Omega * Sigma) x pZ_p from that of Omega and of Sigma, where
// Sigma carries the trivial action.
DeltaCohomology delta_assembly(const ModuleMultiset& omega_h1, const ModuleMultiset& omega_h2,
                               std::size_t sigma_h1_dim, const ModuleMultiset& sigma_h2);

}  // namespace tgk
