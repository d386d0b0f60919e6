#include "tgk/sigma_module.hpp"

#include <algorithm>
#include <sstream>

namespace tgk {

// ---------------------------------------------------------------------------
// ModuleMultiset

ModuleMultiset::ModuleMultiset(Prime p) : p_(p), m_(p.value() + 1, 0) {}

ModuleMultiset::ModuleMultiset(Prime p, const std::map<std::size_t, std::size_t>& blocks)
    : ModuleMultiset(p) {
  for (auto [size, mult] : blocks) set(size, mult);
}

std::size_t ModuleMultiset::count(std::size_t i) const {
  if (i == 0 || i > p()) throw MathError("block size out of range 1..p");
  return m_[i];
}

void ModuleMultiset::set(std::size_t i, std::size_t multiplicity) {
  if (i == 0 || i > p()) throw MathError("block size out of range 1..p");
  m_[i] = multiplicity;
}

std::size_t ModuleMultiset::dimension() const {
  std::size_t d = 0;
  for (std::size_t i = 1; i < m_.size(); ++i) d += i * m_[i];
  return d;
}

std::size_t ModuleMultiset::block_count() const {
  std::size_t n = 0;
  for (std::size_t i = 1; i < m_.size(); ++i) n += m_[i];
  return n;
}

std::map<std::size_t, std::size_t> ModuleMultiset::blocks() const {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t i = 1; i < m_.size(); ++i) {
    if (m_[i]) out[i] = m_[i];
  }
  return out;
}

ModuleMultiset& ModuleMultiset::operator+=(const ModuleMultiset& other) {
  require_same_prime(p(), other.p(), "multiset sum");
  for (std::size_t i = 1; i < m_.size(); ++i) m_[i] += other.m_[i];
  return *this;
}

std::string ModuleMultiset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [size, mult] : blocks()) {
    os << (first ? "" : ", ") << 'M' << size << ':' << mult;
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// SigmaModule

SigmaModule::SigmaModule(Matrix sigma) : sigma_(std::move(sigma)) {
  if (!sigma_.is_square()) throw MathError("sigma must be square");
  if (!sigma_.pow(sigma_.p()).is_identity()) {
    throw MathError("sigma^p is not the identity");
  }
}

SigmaModule SigmaModule::trivial(Prime p, std::size_t dim) {
  return SigmaModule(Matrix::identity(p, dim));
}

SigmaModule SigmaModule::jordan_block(Prime p, std::size_t size) {
  if (size == 0 || size > p.value()) throw MathError("Jordan block size must be in 1..p");
  Matrix s = Matrix::identity(p, size);
  for (std::size_t j = 0; j + 1 < size; ++j) s.set(j + 1, j, 1);
  return SigmaModule(std::move(s));
}

SigmaModule SigmaModule::from_multiset(const ModuleMultiset& m) {
  Matrix s(m.prime(), 0, 0);
  for (auto [size, mult] : m.blocks()) {
    const Matrix block = jordan_block(m.prime(), size).sigma();
    for (std::size_t k = 0; k < mult; ++k) s = s.block_diag(block);
  }
  return SigmaModule(std::move(s));
}

SigmaModule SigmaModule::cyclic_shift(Prime p, std::size_t n) {
  Matrix s(p, n, n);
  for (std::size_t i = 0; i < n; ++i) s.set((i + 1) % n, i, 1);
  return SigmaModule(std::move(s));
}

std::vector<std::size_t> SigmaModule::rank_profile() const {
  const std::size_t top = p() + 1;
  std::vector<std::size_t> r(top + 1, 0);
  r[0] = dim();
  const Matrix a = sigma_minus_one();
  Matrix power = a;
  for (std::size_t k = 1; k <= top; ++k) {
    r[k] = power.rank();
    if (r[k] == 0) break;
    power = power * a;
  }
  return r;
}

ModuleMultiset SigmaModule::decompose() const {
  const auto r = rank_profile();
  ModuleMultiset m(prime());
  for (std::size_t i = 1; i <= p(); ++i) {
    const auto count = static_cast<std::int64_t>(r[i - 1]) - 2 * static_cast<std::int64_t>(r[i]) +
                       static_cast<std::int64_t>(r[i + 1]);
    if (count < 0) throw MathError("rank profile is not convex");
    m.set(i, static_cast<std::size_t>(count));
  }
  return m;
}

Subspace SigmaModule::power_image(std::size_t k) const {
  if (k > p()) throw MathError("power_image exponent must be at most p");
  return Subspace::image(sigma_minus_one().pow(k));
}

Subspace SigmaModule::fixed_submodule() const { return Subspace::kernel(sigma_minus_one()); }

SigmaModule SigmaModule::submodule(const Subspace& w) const {
  if (w.ambient_dim() != dim()) throw MathError("submodule of a different ambient space");
  std::vector<Vec> cols;
  cols.reserve(w.dim());
  for (const auto& b : w.basis()) {
    const Vec image = sigma_.apply(b);
    if (!w.contains(image)) throw MathError("subspace is not sigma-invariant");
    cols.push_back(w.coordinates(image));
  }
  return SigmaModule(Matrix::from_columns(prime(), w.dim(), cols));
}

SigmaModule SigmaModule::quotient(const Subspace& w) const {
  if (w.ambient_dim() != dim()) throw MathError("quotient by a different ambient space");
  if (!w.is_invariant(sigma_)) throw MathError("subspace is not sigma-invariant");
  const auto comp = w.complement_coordinates();
  std::vector<Vec> cols;
  cols.reserve(comp.size());
  for (auto c : comp) {
    const Vec image = w.reduce(sigma_.apply(unit_vec(dim(), c)));
    Vec coords(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) coords[i] = image[comp[i]];
    cols.push_back(std::move(coords));
  }
  return SigmaModule(Matrix::from_columns(prime(), comp.size(), cols));
}

SigmaModule SigmaModule::dual() const { return SigmaModule(sigma_.inverse().transpose()); }

SigmaModule SigmaModule::conjugated(const Matrix& q) const {
  return SigmaModule(q * sigma_ * q.inverse());
}

SigmaModule direct_sum(const SigmaModule& a, const SigmaModule& b) {
  require_same_prime(a.p(), b.p(), "direct_sum");
  return SigmaModule(a.sigma().block_diag(b.sigma()));
}

SigmaModule tensor_product(const SigmaModule& a, const SigmaModule& b) {
  require_same_prime(a.p(), b.p(), "tensor_product");
  return SigmaModule(a.sigma().kron(b.sigma()));
}

// ---------------------------------------------------------------------------
// Exterior powers

std::vector<std::vector<std::size_t>> exterior_basis(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // Advance to the next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::size_t exterior_index(const std::vector<std::vector<std::size_t>>& basis,
                           const std::vector<std::size_t>& subset) {
  auto it = std::lower_bound(basis.begin(), basis.end(), subset);
  if (it == basis.end() || *it != subset) throw MathError("not a basis subset");
  return static_cast<std::size_t>(it - basis.begin());
}

SigmaModule exterior_power(const SigmaModule& a, std::size_t k) {
  const std::size_t n = a.dim();
  const auto basis = exterior_basis(n, k);
  const Matrix& s = a.sigma();
  Matrix out(a.prime(), basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (std::size_t row = 0; row < basis.size(); ++row) {
      out.set(row, col, s.select(basis[row], basis[col]).det());
    }
  }
  return SigmaModule(std::move(out));
}

SigmaModule exterior_square(const SigmaModule& a) { return exterior_power(a, 2); }

std::vector<std::string> exterior_labels(const std::vector<std::string>& labels, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& subset : exterior_basis(labels.size(), k)) {
    std::string s;
    for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "^" : "") + labels[subset[i]];
    out.push_back(std::move(s));
  }
  return out;
}

Multivector wedge(const Multivector& a, const Multivector& b, std::uint32_t p) {
  Multivector out;
  for (const auto& [ia, ca] : a) {
    for (const auto& [ib, cb] : b) {
      std::vector<std::size_t> merged;
      merged.reserve(ia.size() + ib.size());
      std::size_t inversions = 0;
      bool repeated = false;
      for (auto x : ia) {
        for (auto y : ib) {
          if (x == y) repeated = true;
          if (x > y) ++inversions;
        }
      }
      if (repeated) continue;
      std::merge(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(merged));
      std::uint64_t c = std::uint64_t{ca} * cb % p;
      if (inversions % 2) c = (p - c) % p;
      auto& slot = out[merged];
      slot = static_cast<Residue>((slot + c) % p);
      if (slot == 0) out.erase(merged);
    }
  }
  return out;
}

Vec to_coordinates(const Multivector& m, std::size_t n, std::size_t k) {
  const auto basis = exterior_basis(n, k);
  Vec v(basis.size(), 0);
  for (const auto& [subset, c] : m) {
    if (subset.size() != k) throw MathError("multivector has the wrong degree");
    v[exterior_index(basis, subset)] = c;
  }
  return v;
}

Multivector from_coordinates(std::span<const Residue> v, std::size_t n, std::size_t k) {
  const auto basis = exterior_basis(n, k);
  if (v.size() != basis.size()) throw MathError("coordinate vector has the wrong length");
  Multivector m;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (v[i]) m[basis[i]] = v[i];
  }
  return m;
}

}  // namespace tgk
