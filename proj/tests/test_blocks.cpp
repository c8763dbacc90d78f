#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "berezin/blocks.hpp"
#include "berezin/linalg.hpp"
#include "support.hpp"

namespace berezin {
namespace {

DirectSumSpace discrete_pair(std::size_t m1, std::size_t m2) {
  return DirectSumSpace(KernelSpace::discrete(std::vector<std::string>(m1, "x"), Matrix::identity(m1)),
                        KernelSpace::discrete(std::vector<std::string>(m2, "y"), Matrix::identity(m2)));
}

TEST(Blocks, AssembleExamples) {
  const Matrix one{{1.0}};
  const Matrix zero(1, 1);
  EXPECT_EQ(assemble(BlockOperator::diagonal(one, one)), Matrix::identity(2));
  const Matrix t = assemble(BlockOperator::off_diagonal(Matrix{{1.0}}, Matrix{{2.0}}));
  EXPECT_EQ(t, (Matrix{{0.0, 1.0}, {2.0, 0.0}}));
  EXPECT_ERROR_KIND(assemble({one, Matrix(1, 2), Matrix(2, 1), one}), ErrorKind::DimensionMismatch);
}

TEST(Blocks, SplitRoundTrip) {
  std::mt19937_64 rng(1);
  const Matrix m = testing::gaussian(4, 4, rng);
  for (std::size_t n1 = 1; n1 < 4; ++n1) EXPECT_EQ(assemble(split(m, n1)), m);
  const auto off = BlockOperator::off_diagonal(testing::gaussian(2, 3, rng), testing::gaussian(3, 2, rng));
  const Matrix t = assemble(off);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(t(i, j), 0.0);
  EXPECT_ERROR_KIND(split(m, 0), ErrorKind::DimensionMismatch);
  EXPECT_ERROR_KIND(split(m, 4), ErrorKind::DimensionMismatch);
}

TEST(DirectSumKernel, Examples) {
  const DirectSumSpace hh(KernelSpace::hardy(2), KernelSpace::hardy(2));
  const auto k0 = direct_sum_kernel(hh, Complex(0.0), Complex(0.0));
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(k0.unit[0] - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k0.unit[2] - s), 0.0, 1e-15);
  EXPECT_EQ(k0.unit[1], 0.0);
  EXPECT_EQ(k0.unit[3], 0.0);
  EXPECT_NEAR(k0.mass_first, 0.5, 1e-15);

  const auto dd = discrete_pair(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(direct_sum_kernel(dd, i, j).mass_first, 0.5, 1e-15);

  const DirectSumSpace hb(KernelSpace::hardy(3), KernelSpace::bergman(2));
  const auto k = direct_sum_kernel(hb, Complex(0.5), Complex(0.0));
  EXPECT_NEAR(k.mass_first, (21.0 / 16.0) / (21.0 / 16.0 + 1.0), 1e-15);
  EXPECT_NEAR(norm(k.unit), 1.0, 1e-15);
  EXPECT_ERROR_KIND(direct_sum_kernel(hb, Complex(0.99), Complex(0.0)), ErrorKind::OutOfDomain);
}

TEST(ProductSampling, CrossProductAndDeterminism) {
  const auto dd = discrete_pair(3, 2);
  const auto plan = default_product_plan(dd, 10, 5);
  const auto sample = sample_product_domain(dd, plan);
  EXPECT_EQ(sample.pairs.size(), 6u);

  const DirectSumSpace hh(KernelSpace::hardy(3, 0.9), KernelSpace::bergman(2, 0.8));
  ProductPlan big = default_product_plan(hh, 100, 7);
  big.max_pairs = 500;
  const auto a = sample_product_domain(hh, big);
  const auto b = sample_product_domain(hh, big);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.pairs.size(), 500u);
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    const auto pp = a.pair_point(k);
    EXPECT_TRUE(hh.first().contains(pp.first));
    EXPECT_TRUE(hh.second().contains(pp.second));
    EXPECT_LT(a.pairs[k].first, a.first.size());
    EXPECT_LT(a.pairs[k].second, a.second.size());
  }
  big.max_pairs = 0;
  EXPECT_ERROR_KIND(sample_product_domain(hh, big), ErrorKind::InvalidPlan);
}

TEST(ProductEvaluator, DecompositionMatchesAssembledOperator) {
  std::mt19937_64 rng(2);
  const DirectSumSpace hb(KernelSpace::hardy(3), KernelSpace::bergman(2));
  ProductPlan plan = default_product_plan(hb, 16, 3);
  const auto sample = sample_product_domain(hb, plan);
  const ProductEvaluator ev(hb, sample);
  for (int rep = 0; rep < 10; ++rep) {
    const BlockOperator blk{testing::gaussian(3, 3, rng), testing::gaussian(3, 2, rng),
                            testing::gaussian(2, 3, rng), testing::gaussian(2, 2, rng)};
    const Matrix t = assemble(blk);
    const auto syms = ev.symbols(blk);
    ASSERT_EQ(syms.size(), ev.pair_count());
    for (std::size_t k = 0; k < ev.pair_count(); ++k) {
      const auto pp = ev.pair_point(k);
      const auto kk = direct_sum_kernel(hb, pp.first, pp.second);
      EXPECT_LT(std::abs(syms[k] - quadratic_form(t, kk.unit)), 1e-12);
      EXPECT_NEAR(ev.mass(k), kk.mass_first, 1e-15);
    }
    const auto diag = ev.diagonal_symbols(blk.a, blk.d);
    const auto full = ev.symbols(BlockOperator::diagonal(blk.a, blk.d));
    for (std::size_t k = 0; k < diag.size(); ++k) EXPECT_LT(std::abs(diag[k] - full[k]), 1e-13);
  }
}

TEST(BlockDiagBound, Examples) {
  const DirectSumSpace hh(KernelSpace::hardy(2), KernelSpace::hardy(2));
  const auto plan = default_product_plan(hh, 64, 1);
  auto c = check_block_diag_bound(hh, Matrix::identity(2), Matrix::identity(2), plan);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_NEAR(c.lhs, 1.0, 1e-12);
  EXPECT_NEAR(c.rhs, 1.0, 1e-12);

  c = check_block_diag_bound(hh, 2.0 * Matrix::identity(2), Matrix(2, 2), plan);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_NEAR(c.rhs, 2.0, 1e-12);
  EXPECT_LE(c.lhs, 2.0);
}

TEST(BlockDiagBound, RandomHermitianPairs) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n1 = 2 + rep % 3;
    const std::size_t n2 = 2 + (rep / 3) % 3;
    const DirectSumSpace sp(KernelSpace::hardy(n1), KernelSpace::bergman(n2));
    const auto c = check_block_diag_bound(sp, testing::hermitian(n1, rng), testing::hermitian(n2, rng),
                                          default_product_plan(sp, 36, rep));
    EXPECT_NE(c.status, Status::Fail) << rep;
  }
}

TEST(BlockOffdiagBound, Examples) {
  const DirectSumSpace hh(KernelSpace::hardy(2), KernelSpace::hardy(2));
  const auto plan = default_product_plan(hh, 64, 1);
  auto c = check_block_offdiag_bound(hh, Matrix(2, 2), Matrix(2, 2), plan);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_EQ(c.rhs, 0.0);
  c = check_block_offdiag_bound(hh, Matrix::identity(2), Matrix::identity(2), plan);
  EXPECT_EQ(c.status, Status::Pass);
  EXPECT_NEAR(c.rhs, 1.0, 1e-12);
  EXPECT_LE(c.lhs, 1.0 + 1e-12);
}

TEST(BlockOffdiagBound, RandomPairs) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const auto sp = discrete_pair(2 + rep % 3, 2 + rep % 2);
    const auto c = check_block_offdiag_bound(sp, testing::gaussian(sp.first_dim(), sp.second_dim(), rng),
                                             testing::gaussian(sp.second_dim(), sp.first_dim(), rng),
                                             default_product_plan(sp, 10, rep));
    EXPECT_EQ(c.status, Status::Pass) << rep;
    EXPECT_GE(c.worst_pointwise_slack, -c.abs_tolerance());
  }
}

}  // namespace
}  // namespace berezin
