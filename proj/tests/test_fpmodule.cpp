#include <gtest/gtest.h>

#include <random>

#include "naive.hpp"
#include "tgk/kernels.hpp"
#include "tgk/sigma_module.hpp"
#include "tgk/tgroup.hpp"

using namespace tgk;

namespace {

ModuleMultiset ms(std::uint32_t p, std::map<std::size_t, std::size_t> blocks) {
  return ModuleMultiset(Prime(p), blocks);
}

Matrix random_matrix(Prime p, std::size_t r, std::size_t c, std::mt19937& rng) {
  Matrix m(p, r, c);
  std::uniform_int_distribution<int> d(0, static_cast<int>(p.value()) - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

Matrix random_invertible(Prime p, std::size_t n, std::mt19937& rng) {
  for (;;) {
    Matrix q = random_matrix(p, n, n, rng);
    if (q.det() != 0) return q;
  }
}

// Random multiset of total dimension <= max_dim.
ModuleMultiset random_multiset(Prime p, std::size_t max_dim, std::mt19937& rng) {
  std::map<std::size_t, std::size_t> blocks;
  std::size_t dim = 0;
  std::uniform_int_distribution<std::size_t> size(1, p.value());
  while (true) {
    const std::size_t s = size(rng);
    if (dim + s > max_dim) break;
    ++blocks[s];
    dim += s;
  }
  if (blocks.empty()) blocks[1] = 1;
  return ModuleMultiset(p, blocks);
}

}  // namespace

TEST(Matrix, EntriesAreReduced) {
  const Matrix m = Matrix::from_rows(Prime(5), {{-1, 7}, {12, 5}});
  EXPECT_EQ(m(0, 0), 4u);
  EXPECT_EQ(m(0, 1), 2u);
  EXPECT_EQ(m(1, 0), 2u);
  EXPECT_EQ(m(1, 1), 0u);
}

TEST(Matrix, RankMatchesTransposeAndNaive) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix m = random_matrix(Prime(p), 1 + trial % 6, 1 + (trial * 7) % 5, rng);
      EXPECT_EQ(m.rank(), m.transpose().rank());
      EXPECT_EQ(m.rank(), naive::rank(naive::from(m), p));
    }
  }
}

TEST(Matrix, MixedPrimeIsAnError) {
  EXPECT_THROW(Matrix::identity(Prime(3), 2) * Matrix::identity(Prime(5), 2), MathError);
  EXPECT_THROW(Prime(9), MathError);
}

TEST(Matrix, InverseTimesSelfIsIdentity) {
  std::mt19937 rng(5);
  const Matrix q = random_invertible(Prime(7), 6, rng);
  EXPECT_TRUE((q * q.inverse()).is_identity());
}

TEST(Kernels, SerialAndParallelAgree) {
  std::mt19937 rng(3);
  for (std::size_t n : {1u, 7u, 64u, 130u}) {
    const Matrix a = random_matrix(Prime(5), n, n + 3, rng);
    const Matrix b = random_matrix(Prime(5), n + 3, n, rng);
    std::vector<std::uint32_t> c1, c2;
    kernels::matmul_serial(a.data(), b.data(), c1, n, n + 3, n, 5);
    kernels::matmul_parallel(a.data(), b.data(), c2, n, n + 3, n, 5);
    EXPECT_EQ(c1, c2);

    std::vector<std::uint32_t> r1(a.data().begin(), a.data().end()), r2 = r1;
    EXPECT_EQ(kernels::rref_serial(r1, n, n + 3, 5), kernels::rref_parallel(r2, n, n + 3, 5));
    EXPECT_EQ(r1, r2);
  }
}

TEST(Subspace, KernelAndImageDimensions) {
  std::mt19937 rng(8);
  const Matrix m = random_matrix(Prime(3), 4, 7, rng);
  EXPECT_EQ(Subspace::kernel(m).dim() + Subspace::image(m).dim(), 7u);
  const Subspace k = Subspace::kernel(m);
  for (const auto& v : k.basis()) EXPECT_TRUE(is_zero(m.apply(v)));
}

TEST(SigmaModule, RejectsNonUnipotentSigma) {
  EXPECT_THROW(SigmaModule(Matrix::from_rows(Prime(5), {{2}})), MathError);
  EXPECT_THROW(SigmaModule(Matrix(Prime(5), 2, 3)), MathError);
}

TEST(Decompose, IdentityIsTrivial) {
  EXPECT_EQ(SigmaModule::trivial(Prime(5), 3).decompose(), ms(5, {{1, 3}}));
}

TEST(Decompose, CyclicShiftIsFree) {
  const SigmaModule m = SigmaModule::cyclic_shift(Prime(5), 5);
  EXPECT_EQ(m.decompose(), ms(5, {{5, 1}}));
  EXPECT_EQ(naive::jordan_blocks(naive::from(m.sigma()), 5), (std::map<std::size_t, std::size_t>{{5, 1}}));
}

TEST(Decompose, HeisenbergNIsM2) {
  EXPECT_EQ(heisenberg(Prime(5)).module().decompose(), ms(5, {{2, 1}}));
}

TEST(PowerImage, Extremes) {
  const SigmaModule m = SigmaModule::from_multiset(ms(5, {{2, 1}, {5, 1}}));
  EXPECT_EQ(m.power_image(0).dim(), 7u);
  EXPECT_EQ(m.power_image(5).dim(), 0u);
  const SigmaModule m5 = SigmaModule::jordan_block(Prime(5), 5);
  EXPECT_EQ(m5.power_image(4), m5.fixed_submodule());
  EXPECT_EQ(m5.power_image(4).dim(), 1u);
}

TEST(FixedSubmodule, Examples) {
  EXPECT_EQ(SigmaModule::trivial(Prime(5), 3).fixed_submodule().dim(), 3u);
  EXPECT_EQ(SigmaModule::jordan_block(Prime(5), 5).fixed_submodule().dim(), 1u);
  EXPECT_EQ(SigmaModule::from_multiset(ms(5, {{1, 2}, {2, 1}})).fixed_submodule().dim(), 3u);
}

TEST(DirectSum, IsAdditive) {
  const Prime p5(5);
  EXPECT_EQ(direct_sum(SigmaModule::trivial(p5, 1), SigmaModule::trivial(p5, 1)).decompose(), ms(5, {{1, 2}}));
  EXPECT_EQ(direct_sum(SigmaModule::jordan_block(p5, 2), SigmaModule::jordan_block(p5, 3)).decompose(),
            ms(5, {{2, 1}, {3, 1}}));
  EXPECT_EQ(direct_sum(SigmaModule::jordan_block(p5, 5), SigmaModule::jordan_block(p5, 4)).decompose(),
            ms(5, {{4, 1}, {5, 1}}));
  EXPECT_THROW(direct_sum(SigmaModule::trivial(p5, 1), SigmaModule::trivial(Prime(3), 1)), MathError);
}

TEST(TensorProduct, Examples) {
  const Prime p5(5);
  const SigmaModule m = SigmaModule::from_multiset(ms(5, {{2, 1}, {3, 1}}));
  EXPECT_EQ(tensor_product(SigmaModule::trivial(p5, 1), m).decompose(), m.decompose());
  EXPECT_EQ(tensor_product(SigmaModule::jordan_block(p5, 5), SigmaModule::jordan_block(p5, 4)).decompose(),
            ms(5, {{5, 4}}));
  EXPECT_EQ(tensor_product(SigmaModule::jordan_block(p5, 2), SigmaModule::jordan_block(p5, 5)).decompose(),
            ms(5, {{5, 2}}));
}

TEST(ExteriorSquare, Examples) {
  const Prime p5(5);
  const SigmaModule l2 = exterior_square(SigmaModule::cyclic_shift(p5, 5));
  EXPECT_EQ(l2.dim(), 10u);
  EXPECT_EQ(l2.decompose(), ms(5, {{5, 2}}));
  EXPECT_EQ(exterior_square(SigmaModule::jordan_block(p5, 2)).decompose(), ms(5, {{1, 1}}));
  EXPECT_EQ(exterior_square(SigmaModule::trivial(p5, 2)).decompose(), ms(5, {{1, 1}}));
  EXPECT_EQ(exterior_labels({"y0", "y1", "y2"}, 2), (std::vector<std::string>{"y0^y1", "y0^y2", "y1^y2"}));
}

TEST(Wedge, SignOfMergingPermutation) {
  const Multivector a{{{2}, 1}}, b{{{0, 1}, 1}};
  const Multivector ab = wedge(a, b, 5);  // y2 ^ y0 ^ y1 = + y0 ^ y1 ^ y2
  ASSERT_EQ(ab.size(), 1u);
  EXPECT_EQ(ab.at({0, 1, 2}), 1u);
  const Multivector c = wedge({{{1}, 1}}, {{{0, 2}, 1}}, 5);  // y1 ^ y0 ^ y2 = - y0 ^ y1 ^ y2
  EXPECT_EQ(c.at({0, 1, 2}), 4u);
  EXPECT_TRUE(wedge({{{1}, 1}}, {{{1, 2}, 1}}, 5).empty());
}

// Randomized structural properties.
TEST(DecomposeProperty, BasisIndependenceAndCounts) {
  std::mt19937 rng(2024);
  for (std::uint32_t pv : {2u, 3u, 5u, 7u}) {
    const Prime p(pv);
    for (int trial = 0; trial < 15; ++trial) {
      const ModuleMultiset m = random_multiset(p, 12, rng);
      const SigmaModule mod = SigmaModule::from_multiset(m);
      const Matrix q = random_invertible(p, mod.dim(), rng);
      const SigmaModule conj = mod.conjugated(q);
      EXPECT_EQ(conj.decompose(), m);
      EXPECT_EQ(naive::jordan_blocks(naive::from(conj.sigma()), pv), m.blocks());
      EXPECT_EQ(conj.fixed_submodule().dim(), m.block_count());
      EXPECT_EQ(m.dimension(), mod.dim());
      EXPECT_EQ(mod.dual().decompose(), m);
      EXPECT_TRUE(conj.sigma().pow(pv).is_identity());

      const auto r = conj.rank_profile();
      for (std::size_t k = 1; k + 1 < r.size(); ++k) {
        EXPECT_GE(r[k - 1] - r[k], r[k] - r[k + 1]);
      }
      for (std::size_t k = 0; k <= pv; ++k) {
        std::size_t expect = 0;
        for (const auto& [i, mult] : m.blocks()) expect += i > k ? (i - k) * mult : 0;
        EXPECT_EQ(conj.power_image(k).dim(), expect);
      }
    }
  }
}

TEST(DecomposeProperty, CharacteristicTwoHasSmallBlocks) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix s = random_matrix(Prime(2), 4, 4, rng);
    if (s.det() == 0 || !s.pow(2).is_identity()) continue;
    for (const auto& [size, mult] : SigmaModule(s).decompose().blocks()) EXPECT_LE(size, 2u);
  }
}
