#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "berezin/hilbert.hpp"
#include "berezin/linalg.hpp"
#include "support.hpp"

namespace berezin {
namespace {

TEST(KernelAt, HardyExamples) {
  const auto h = KernelSpace::hardy(3);
  const Vector k0 = h.kernel_at(Complex(0.0));
  EXPECT_EQ(k0, (Vector{1.0, 0.0, 0.0}));
  const Vector k = h.kernel_at(Complex(0.5));
  EXPECT_NEAR(std::abs(k[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k[2] - 0.25), 0.0, 1e-15);
  EXPECT_NEAR(norm(k) * norm(k), 21.0 / 16.0, 1e-15);
  const Vector u = h.normalized_kernel_at(Complex(0.5));
  const double c = std::sqrt(16.0 / 21.0);
  EXPECT_NEAR(std::abs(u[0] - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u[1] - 0.5 * c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u[2] - 0.25 * c), 0.0, 1e-15);
}

TEST(KernelAt, BergmanExample) {
  const auto b = KernelSpace::bergman(2);
  const Vector k = b.kernel_at(Complex(0.5));
  EXPECT_NEAR(std::abs(k[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k[1] - std::sqrt(2.0) / 2.0), 0.0, 1e-15);
}

TEST(KernelAt, HardyNormIdentity) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto h = KernelSpace::hardy(n);
    for (int rep = 0; rep < 20; ++rep) {
      const Complex z = testing::random_disk_point(0.95, rng);
      const double r2 = std::norm(z);
      const double closed = (1.0 - std::pow(r2, static_cast<double>(n))) / (1.0 - r2);
      const double k = norm(h.kernel_at(z));
      EXPECT_NEAR(k * k, closed, 1e-12);
      EXPECT_NEAR(norm(h.normalized_kernel_at(z)), 1.0, 1e-14);
    }
  }
}

TEST(KernelAt, OutOfDomain) {
  const auto h = KernelSpace::hardy(3, 0.9);
  EXPECT_ERROR_KIND(h.kernel_at(Complex(0.95)), ErrorKind::OutOfDomain);
  EXPECT_ERROR_KIND(h.kernel_at(std::size_t{0}), ErrorKind::OutOfDomain);
  const auto d = KernelSpace::discrete({"a", "b"}, Matrix::identity(2));
  EXPECT_ERROR_KIND(d.kernel_at(std::size_t{2}), ErrorKind::OutOfDomain);
  EXPECT_ERROR_KIND(d.kernel_at(Complex(0.0)), ErrorKind::OutOfDomain);
}

TEST(KernelAt, DegenerateDiscreteKernel) {
  // second point has the zero kernel
  const std::vector<double> g{1.0, 0.0};
  const auto d = KernelSpace::discrete({"a", "b"}, Matrix::diagonal(std::span<const double>(g)));
  EXPECT_EQ(d.dim(), 1u);
  EXPECT_ERROR_KIND(d.normalized_kernel_at(std::size_t{1}), ErrorKind::DegenerateKernel);
}

TEST(Discrete, ReproducingProperty) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 3 + rep % 6;
    const Matrix f = testing::gaussian(2 + rep % 3, m, rng);
    const Matrix k = hermitian_part(adjoint(f) * f);
    std::vector<std::string> labels(m, "p");
    const auto space = KernelSpace::discrete(labels, k);
    EXPECT_EQ(space.dim(), std::min<std::size_t>(m, 2 + rep % 3));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        EXPECT_LT(std::abs(inner(space.kernel_at(i), space.kernel_at(j)) - k(j, i)), 1e-10 * spectral_norm(k));
  }
}

TEST(GramEmbed, Examples) {
  const Matrix g = gram_embed(Matrix::identity(3));
  EXPECT_LT(testing::max_entry_diff(adjoint(g) * g, Matrix::identity(3)), 1e-14);
  const Matrix four{{4.0}};
  const Matrix e = gram_embed(four);
  EXPECT_EQ(e.rows(), 1u);
  EXPECT_NEAR(std::abs(e(0, 0)), 2.0, 1e-15);
  const std::vector<double> d{1.0, -1.0};
  EXPECT_ERROR_KIND(gram_embed(Matrix::diagonal(std::span<const double>(d))), ErrorKind::NotPSD);
}

TEST(GramEmbed, RandomFactor) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix f = testing::gaussian(1 + rep % 4, 6, rng);
    const Matrix k = hermitian_part(adjoint(f) * f);
    const Matrix g = gram_embed(k);
    EXPECT_EQ(g.rows(), f.rows());
    EXPECT_LE(frobenius_norm(adjoint(g) * g - k), 1e-10 * spectral_norm(k));
  }
}

TEST(Sampling, Counts) {
  const auto d = KernelSpace::discrete({"a", "b", "c", "d", "e"}, Matrix::identity(5));
  const auto pts = sample_domain(d, {SampleStrategy::Exhaustive, 1, 0});
  ASSERT_EQ(pts.size(), 5u);
  std::set<std::size_t> seen;
  for (const auto& p : pts) seen.insert(std::get<std::size_t>(p));
  EXPECT_EQ(seen.size(), 5u);

  const auto h = KernelSpace::hardy(3, 0.9);
  for (std::size_t count : {1u, 7u, 100u, 401u}) {
    for (auto strategy : {SampleStrategy::PolarGrid, SampleStrategy::UniformRandom}) {
      const auto grid = sample_domain(h, {strategy, count, 4});
      EXPECT_EQ(grid.size(), count);
      for (const auto& p : grid) EXPECT_LE(std::abs(std::get<Complex>(p)), 0.9);
    }
  }
}

TEST(Sampling, Deterministic) {
  const auto h = KernelSpace::hardy(3);
  const SamplePlan plan{SampleStrategy::UniformRandom, 50, 99};
  const auto a = sample_domain(h, plan);
  const auto b = sample_domain(h, plan);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(std::get<Complex>(a[i]), std::get<Complex>(b[i]));
}

TEST(Sampling, InvalidPlans) {
  const auto h = KernelSpace::hardy(3);
  const auto d = KernelSpace::discrete({"a", "b"}, Matrix::identity(2));
  EXPECT_ERROR_KIND(sample_domain(h, {SampleStrategy::Exhaustive, 10, 0}), ErrorKind::InvalidPlan);
  EXPECT_ERROR_KIND(sample_domain(d, {SampleStrategy::PolarGrid, 10, 0}), ErrorKind::InvalidPlan);
  EXPECT_ERROR_KIND(sample_domain(h, {SampleStrategy::PolarGrid, 0, 0}), ErrorKind::InvalidPlan);
  EXPECT_EQ(default_plan(d, 400).strategy, SampleStrategy::Exhaustive);
  EXPECT_EQ(default_plan(h, 400).strategy, SampleStrategy::PolarGrid);
}

TEST(Spaces, ConstructionErrors) {
  EXPECT_ERROR_KIND(KernelSpace::hardy(0), ErrorKind::BadParams);
  EXPECT_ERROR_KIND(KernelSpace::hardy(3, 1.0), ErrorKind::BadParams);
  EXPECT_ERROR_KIND(KernelSpace::discrete({"a"}, Matrix::identity(2)), ErrorKind::DimensionMismatch);
}

TEST(Spaces, ParseDiscrete) {
  const auto s = parse_discrete_space(
      R"({"points": ["x", "y"], "gram_re": [[2, 0], [0, 1]], "gram_im": [[0, 0], [0, 0]]})");
  EXPECT_EQ(s.point_count(), 2u);
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_NEAR(norm(s.kernel_at(std::size_t{0})), std::sqrt(2.0), 1e-14);
  EXPECT_ERROR_KIND(parse_discrete_space("{"), ErrorKind::IoFailure);
  EXPECT_ERROR_KIND(parse_discrete_space(R"({"points": ["x"], "gram_re": [[1, 0]]})"),
                    ErrorKind::DimensionMismatch);
  EXPECT_ERROR_KIND(load_discrete_space("/nonexistent/space.json"), ErrorKind::IoFailure);
}

}  // namespace
}  // namespace berezin
