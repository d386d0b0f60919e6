#include "tgk/spectral.hpp"

#include <stdexcept>

namespace tgk {

std::string to_string(Variant v) { return v == Variant::Omega1 ? "omega1" : "omega2"; }

Variant parse_variant(const std::string& s) {
  if (s == "omega1") return Variant::Omega1;
  if (s == "omega2") return Variant::Omega2;
  throw InputError("unknown variant '" + s + "' (expected omega1 or omega2)");
}

ExtensionSpec::ExtensionSpec(Variant v, Prime prime) : variant(v), p(prime) {
  if (p.value() <= 3) throw MathError("the extension pages need p > 3");
}

namespace {

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<std::string> tensor_labels(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x + "." + y);
  }
  return out;
}

SigmaModule z_module(Variant v, Prime p) {
  if (v == Variant::Omega1) return SigmaModule::trivial(p, 1);
  const std::size_t n = p.value() - 1;
  Matrix s(p, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) s.set(i + 1, i, 1);
  for (std::size_t r = 0; r < n; ++r) s.set(r, n - 1, -1);
  return SigmaModule(std::move(s));
}

Piece make_piece(std::string name, SigmaModule m, std::vector<std::string> labels) {
  return Piece{std::move(name), std::move(m), std::move(labels)};
}

Matrix build_d01(const ExtensionSpec& spec, const Piece& e01, const Piece& e20) {
  const Prime p = spec.p;
  const auto pairs = exterior_basis(p.value(), 2);
  const Matrix& s20 = e20.module.sigma();
  Matrix d(p, e20.module.dim(), e01.module.dim());
  if (spec.variant == Variant::Omega1) {
    // Norm element applied to y_0 y_1.
    Vec v = unit_vec(e20.module.dim(), exterior_index(pairs, {0, 1}));
    Vec sum = zero_vec(v.size());
    for (std::uint32_t i = 0; i < p.value(); ++i) {
      sum = add(sum, v, p);
      v = s20.apply(v);
    }
    for (std::size_t r = 0; r < sum.size(); ++r) d.set(r, 0, sum[r]);
  } else {
    const Matrix cube = s20.minus_identity().pow(3);
    for (std::size_t i = 0; i < e01.module.dim(); ++i) {
      const Vec col = cube.column(exterior_index(pairs, {i, i + 1}));
      for (std::size_t r = 0; r < col.size(); ++r) d.set(r, i, col[r]);
    }
  }
  return d;
}

// Cup product L2 Y (x) Y -> L3 Y on basis monomials.
Matrix wedge_matrix(Prime p, std::size_t n) {
  const auto b2 = exterior_basis(n, 2);
  const auto b3 = exterior_basis(n, 3);
  Matrix m(p, b3.size(), b2.size() * n);
  for (std::size_t a = 0; a < b2.size(); ++a) {
    for (std::size_t j = 0; j < n; ++j) {
      const Multivector prod = wedge({{b2[a], 1}}, {{{j}, 1}}, p);
      for (const auto& [idx, c] : prod) m.set(exterior_index(b3, idx), a * n + j, c);
    }
  }
  return m;
}

Matrix build_d02(Prime p, const Matrix& d01, std::size_t dim_z, std::size_t dim_e20) {
  const auto zpairs = exterior_basis(dim_z, 2);
  Matrix d(p, dim_z * dim_e20, zpairs.size());
  for (std::size_t c = 0; c < zpairs.size(); ++c) {
    const std::size_t a = zpairs[c][0], b = zpairs[c][1];
    // d(z_a z_b) = z_b (x) d(z_a) - z_a (x) d(z_b)
    for (std::size_t r = 0; r < dim_e20; ++r) {
      d.add_to(b * dim_e20 + r, c, d01(r, a));
      d.add_to(a * dim_e20 + r, c, -static_cast<std::int64_t>(d01(r, b)));
    }
  }
  return d;
}

Multivector symbolic_dz(const ExtensionSpec& spec, std::size_t i) {
  const std::uint32_t p = spec.p;
  Multivector out;
  auto add_term = [&](std::size_t a, std::int64_t coeff) {
    const Multivector term = wedge({{{a % p}, 1}}, {{{(a + 1) % p}, 1}}, p);
    for (const auto& [idx, c] : term) {
      auto& slot = out[idx];
      slot = reduce_mod(static_cast<std::int64_t>(slot) + coeff * c, p);
      if (slot == 0) out.erase(idx);
    }
  };
  if (spec.variant == Variant::Omega1) {
    for (std::size_t a = 0; a < p; ++a) add_term(a, 1);
  } else {
    // (sigma - 1)^3 = sigma^3 - 3 sigma^2 + 3 sigma - 1
    const std::int64_t coeff[4] = {-1, 3, -3, 1};
    for (std::size_t m = 0; m < 4; ++m) add_term(i + m, coeff[m]);
  }
  return out;
}

}  // namespace

BigradedPage::BigradedPage(const ExtensionSpec& spec)
    : spec_(spec),
      e10_(make_piece("E^{1,0}", SigmaModule::cyclic_shift(spec.p, spec.p), numbered("y", spec.p))),
      e01_(make_piece("E^{0,1}", z_module(spec.variant, spec.p),
                      spec.variant == Variant::Omega1 ? std::vector<std::string>{"z"}
                                                      : numbered("z", spec.p.value() - 1))),
      e20_(make_piece("E^{2,0}", exterior_square(e10_.module), exterior_labels(e10_.labels, 2))),
      e30_(make_piece("E^{3,0}", exterior_power(e10_.module, 3), exterior_labels(e10_.labels, 3))),
      e11_(make_piece("E^{1,1}", tensor_product(e01_.module, e10_.module),
                      tensor_labels(e01_.labels, e10_.labels))),
      e02_(make_piece("E^{0,2}", exterior_square(e01_.module), exterior_labels(e01_.labels, 2))),
      e21_(make_piece("E^{2,1}", tensor_product(e01_.module, e20_.module),
                      tensor_labels(e01_.labels, e20_.labels))),
      d01_{"d2^{0,1}", &e01_, &e20_, build_d01(spec, e01_, e20_)},
      d11_{"d2^{1,1}", &e11_, &e30_,
           wedge_matrix(spec.p, spec.p) *
               d01_.matrix.kron(Matrix::identity(spec.p, spec.p))},
      d02_{"d2^{0,2}", &e02_, &e21_,
           build_d02(spec.p, d01_.matrix, e01_.module.dim(), e20_.module.dim())} {}

std::vector<const Piece*> BigradedPage::pieces() const {
  return {&e10_, &e01_, &e20_, &e30_, &e11_, &e02_, &e21_};
}

std::vector<const Differential*> BigradedPage::differentials() const {
  return {&d01_, &d11_, &d02_};
}

Matrix BigradedPage::d01_symbolic() const {
  const std::size_t n = p();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < e01_.module.dim(); ++i) {
    cols.push_back(to_coordinates(symbolic_dz(spec_, i), n, 2));
  }
  return Matrix::from_columns(spec_.p, e20_.module.dim(), cols);
}

Matrix BigradedPage::d11_symbolic() const {
  const std::size_t n = p();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < e01_.module.dim(); ++i) {
    const Multivector dz = symbolic_dz(spec_, i);
    for (std::size_t j = 0; j < n; ++j) {
      cols.push_back(to_coordinates(wedge(dz, {{{j}, 1}}, p()), n, 3));
    }
  }
  return Matrix::from_columns(spec_.p, e30_.module.dim(), cols);
}

bool is_equivariant(const Differential& d) {
  return d.matrix * d.source->module.sigma() == d.target->module.sigma() * d.matrix;
}

namespace {

// (ker d2^{0,1}) (x) Y inside E^{1,1}.
Subspace product_space_11(const BigradedPage& page, const Subspace& k01) {
  const std::size_t n = page.e10().module.dim();
  std::vector<Vec> products;
  for (const auto& k : k01.basis()) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = zero_vec(k.size() * n);
      for (std::size_t i = 0; i < k.size(); ++i) v[i * n + j] = k[i];
      products.push_back(std::move(v));
    }
  }
  return Subspace::span(page.spec().p, page.e11().module.dim(), products);
}

// L2(ker d2^{0,1}) inside E^{0,2}.
Subspace product_space_02(const BigradedPage& page, const Subspace& k01) {
  const Prime p = page.spec().p;
  const auto zpairs = exterior_basis(page.e01().module.dim(), 2);
  std::vector<Vec> wedges;
  const auto& kb = k01.basis();
  for (std::size_t a = 0; a < kb.size(); ++a) {
    for (std::size_t b = a + 1; b < kb.size(); ++b) {
      Vec v = zero_vec(zpairs.size());
      for (std::size_t c = 0; c < zpairs.size(); ++c) {
        const std::size_t i = zpairs[c][0], j = zpairs[c][1];
        v[c] = reduce_mod(static_cast<std::int64_t>(kb[a][i]) * kb[b][j] -
                              static_cast<std::int64_t>(kb[a][j]) * kb[b][i],
                          p);
      }
      wedges.push_back(std::move(v));
    }
  }
  return Subspace::span(p, zpairs.size(), wedges);
}

}  // namespace

E3Pieces e3_pieces(const BigradedPage& page) {
  const Subspace k01 = Subspace::kernel(page.d01().matrix);
  const Subspace k11 = Subspace::kernel(page.d11().matrix);
  const Subspace k02 = Subspace::kernel(page.d02().matrix);
  const Subspace im01 = Subspace::image(page.d01().matrix);
  const Subspace p11 = product_space_11(page, k01);
  const Subspace p02 = product_space_02(page, k01);
  // d2 is a derivation, so products of cycles are cycles.
  if (!k11.contains(p11) || !k02.contains(p02)) {
    throw MathError("d2 fails the Leibniz rule on products of cycles");
  }
  const ModuleMultiset ker11 = page.e11().module.submodule(k11).decompose();
  const ModuleMultiset ker02 = page.e02().module.submodule(k02).decompose();
  return E3Pieces{
      .ker_d01 = page.e01().module.submodule(k01).decompose(),
      .ker_d11 = ker11,
      .ker_d02 = ker02,
      .e3_20 = page.e20().module.quotient(im01).decompose(),
      .e3_11 = ker11,
      .e3_02 = ker02,
      .dec_11 = page.e11().module.submodule(p11).decompose(),
      .dec_02 = page.e02().module.submodule(p02).decompose(),
      .rank_d01 = im01.dim(),
      .rank_d11 = page.d11().matrix.rank(),
      .rank_d02 = page.d02().matrix.rank(),
      .ker_d01_space = k01,
      .ker_d11_space = k11,
      .ker_d02_space = k02,
      .im_d01_space = im01,
      .dec_11_space = p11,
      .dec_02_space = p02,
  };
}

bool check_decomposable(const BigradedPage& page, const E3Pieces& e3) {
  // E^{2,0} is L2 of the degree-one classes, and E_inf^{2,0} is its quotient.
  if (!(page.e20().module == exterior_square(page.e10().module))) return false;
  return e3.dec_11_space.contains(e3.ker_d11_space) && e3.dec_02_space.contains(e3.ker_d02_space);
}

bool check_decomposable(const BigradedPage& page) { return check_decomposable(page, e3_pieces(page)); }

CohomologyReport assemble(const BigradedPage& page) {
  const Prime p = page.spec().p;
  E3Pieces e3 = e3_pieces(page);
  const ModuleMultiset e10 = page.e10().module.decompose();

  SplittingCertificate cert;
  const std::size_t nonzero = !e3.e3_20.empty() + !e3.e3_11.empty() + !e3.e3_02.empty();
  if (nonzero <= 1) {
    cert.kind = "vanishing";
    cert.ok = true;
  } else {
    // phi scales y by 2^-1 and z by 4^-1.
    cert.kind = "phi-eigenvalues";
    const Residue l20 = inverse_mod(4, p), l11 = inverse_mod(8, p), l02 = inverse_mod(16, p);
    cert.eigenvalues = {{"E^{2,0}", l20}, {"E^{1,1}", l11}, {"E^{0,2}", l02}};
    cert.ok = l20 != l11 && l20 != l02 && l11 != l02;
  }

  // The phi-eigenspaces split the decomposable part too.
  std::optional<ModuleMultiset> h2, h2_dec;
  if (cert.ok) {
    h2 = e3.e3_20 + e3.e3_11 + e3.e3_02;
    h2_dec = e3.e3_20 + e3.dec_11 + e3.dec_02;
  }

  const bool decomposable = check_decomposable(page, e3);
  std::vector<std::string> notes;
  if (!decomposable) {
    const std::size_t extra11 = e3.ker_d11_space.dim() - e3.dec_11_space.dim();
    const std::size_t extra02 = e3.ker_d02_space.dim() - e3.dec_02_space.dim();
    notes.push_back("ker d2^{1,1} exceeds (ker d2^{0,1}).Y by " + std::to_string(extra11) +
                    " dimension(s); ker d2^{0,2} exceeds L2(ker d2^{0,1}) by " +
                    std::to_string(extra02));
    notes.push_back("sigma-fixed part of ker d2^{1,1} has dimension " +
                    std::to_string(page.e11().module.submodule(e3.ker_d11_space).fixed_submodule().dim()));
  }

  return CohomologyReport{
      .variant = page.spec().variant,
      .p = p.value(),
      .e_inf_10 = e10,
      .e_inf_01 = e3.ker_d01,
      .e_inf_20 = e3.e3_20,
      .e_inf_11 = e3.e3_11,
      .e_inf_02 = e3.e3_02,
      .h1 = e10 + e3.ker_d01,
      .h2 = std::move(h2),
      .h2_dec = std::move(h2_dec),
      .certificate = std::move(cert),
      .decomposable = decomposable,
      .e3 = std::move(e3),
      .notes = std::move(notes),
  };
}

DeltaCohomology delta_assembly(const ModuleMultiset& omega_h1, const ModuleMultiset& omega_h2,
                               std::size_t sigma_h1_dim, const ModuleMultiset& sigma_h2) {
  const Prime p = omega_h1.prime();
  require_same_prime(p, omega_h2.p(), "delta_assembly");
  require_same_prime(p, sigma_h2.p(), "delta_assembly");
  if (sigma_h2.dimension() != sigma_h2.count(1)) {
    throw MathError("Sigma carries the trivial action, so its H^2 must be a sum of M_1");
  }
  ModuleMultiset h1 = omega_h1;
  h1.set(1, h1.count(1) + sigma_h1_dim + 1);  // H^1(Sigma) and H^1(pZ_p)
  ModuleMultiset h2 = omega_h2 + sigma_h2 + omega_h1;
  h2.set(1, h2.count(1) + sigma_h1_dim);
  return {h1, h2};
}

}  // namespace tgk
