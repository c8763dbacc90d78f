#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "berezin/error.hpp"
#include "berezin/linalg.hpp"
#include "support.hpp"

namespace berezin {
namespace {

using testing::gaussian;
using testing::hermitian;
using testing::psd;

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

TEST(Matrix, RejectsEmptyAndNonFinite) {
  EXPECT_ERROR_KIND(Matrix(0, 3), ErrorKind::BadMatrix);
  EXPECT_ERROR_KIND(Matrix(1, 2, {Complex(1.0), Complex(NAN)}), ErrorKind::BadMatrix);
  EXPECT_ERROR_KIND(Matrix(2, 2, {Complex(1.0)}), ErrorKind::BadMatrix);
}

TEST(Matrix, AdjointExamples) {
  EXPECT_EQ(adjoint(Matrix{{Complex(0, 1)}}), (Matrix{{Complex(0, -1)}}));
  EXPECT_EQ(adjoint(Matrix::identity(3)), Matrix::identity(3));
  const Matrix m{{1.0, Complex(0, 2)}, {0.0, 3.0}};
  EXPECT_EQ(adjoint(m), (Matrix{{1.0, 0.0}, {Complex(0, -2), 3.0}}));
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(Matrix, ArithmeticAndAdjoint) {
  const Matrix a{{1.0, Complex(0, 2)}, {3.0, 4.0}};
  const Matrix b = Matrix::identity(2);
  EXPECT_EQ(a * b, a);
  const Matrix adj = adjoint(a);
  EXPECT_EQ(adj(0, 1), 3.0);
  EXPECT_EQ(adj(1, 0), Complex(0, -2));
  EXPECT_THROW(a * Matrix(3, 3), Error);
  Matrix c = a;
  EXPECT_THROW(c += Matrix(3, 2), Error);
}

TEST(Matrix, InnerIsLinearInFirstSlot) {
  const Vector x{Complex(1, 1), 2.0};
  const Vector y{Complex(0, 1), 1.0};
  EXPECT_EQ(inner(x, y), Complex(1, 1) * Complex(0, -1) + 2.0);
}

TEST(HermitianEigen, MatchesEigenOracle) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const Matrix h = hermitian(n, rng);
      const auto mine = hermitian_eigen(h);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h));
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(mine.eigenvalues[k], oracle.eigenvalues()(k), 1e-10);
      // H V = V diag(w)
      Matrix hv = h * mine.eigenvectors;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          EXPECT_LT(std::abs(hv(i, k) - mine.eigenvectors(i, k) * mine.eigenvalues[k]), 1e-10);
      const Matrix vv = adjoint(mine.eigenvectors) * mine.eigenvectors;
      EXPECT_LT(testing::max_entry_diff(vv, Matrix::identity(n)), 1e-12);
    }
  }
}

TEST(HermitianEigen, RejectsNonHermitian) {
  const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
  EXPECT_ERROR_KIND(hermitian_eigen(a), ErrorKind::NotHermitian);
}

TEST(HermitianEigen, SmallExamples) {
  auto w = hermitian_eigen(Matrix{{0.0, 1.0}, {1.0, 0.0}}).eigenvalues;
  EXPECT_NEAR(w[0], -1.0, 1e-14);
  EXPECT_NEAR(w[1], 1.0, 1e-14);
  w = hermitian_eigen(Matrix{{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}}).eigenvalues;
  EXPECT_NEAR(w[0], 1.0, 1e-14);
  EXPECT_NEAR(w[1], 3.0, 1e-14);
}

TEST(HermitianEigen, ReconstructionOnRandomInput) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 1 + rep % 16;
    const Matrix h = hermitian(n, rng);
    const auto e = hermitian_eigen(h);
    const Matrix rebuilt =
        e.eigenvectors * Matrix::diagonal(std::span<const double>(e.eigenvalues)) * adjoint(e.eigenvectors);
    EXPECT_LE(frobenius_norm(h - rebuilt), 1e-10 * spectral_norm(h));
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
}

TEST(HermitianEigen, DiagonalInputIsSortedExactly) {
  const std::vector<double> d{3.0, -1.0, 2.0};
  const auto eig = hermitian_eigen(Matrix::diagonal(std::span<const double>(d)));
  EXPECT_EQ(eig.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(FunctionalCalculus, SquareRootSquaresBack) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 16; n += 3) {
    const Matrix p = psd(n, rng);
    const Matrix s = power_psd(p, 0.5);
    EXPECT_LT(frobenius_norm(s * s - p), 1e-10 * spectral_norm(p)) << n;
  }
}

TEST(FunctionalCalculus, PowerZeroIsIdentityAndNegativeRejected) {
  std::mt19937_64 rng(6);
  const Matrix p = psd(4, rng, 2);
  EXPECT_EQ(power_psd(p, 0.0), Matrix::identity(4));
  EXPECT_THROW(power_psd(p, -0.5), Error);
}

TEST(FunctionalCalculus, RejectsIndefinite) {
  const std::vector<double> d{1.0, -0.5};
  EXPECT_ERROR_KIND(PsdCalculus(Matrix::diagonal(std::span<const double>(d))), ErrorKind::NotPSD);
}

TEST(FunctionalCalculus, Examples) {
  const std::vector<double> d{4.0, 9.0};
  const Matrix p = Matrix::diagonal(std::span<const double>(d));
  const std::vector<double> r{2.0, 3.0};
  const Matrix root = Matrix::diagonal(std::span<const double>(r));
  EXPECT_LT(testing::max_entry_diff(func_calculus(p, ScalarFunction::sqrt()), root), 1e-14);
  EXPECT_LT(testing::max_entry_diff(power_psd(p, 0.5), root), 1e-14);
  const ScalarFunction sq("square", [](double t) { return t * t; });
  const Matrix m{{2.0, 1.0}, {1.0, 2.0}};
  const Matrix expect{{5.0, 4.0}, {4.0, 5.0}};
  EXPECT_LT(testing::max_entry_diff(func_calculus(m, sq), expect), 1e-12);
  EXPECT_LT(testing::max_entry_diff(power_psd(m, 2.0), expect), 1e-12);
  EXPECT_LT(testing::max_entry_diff(func_calculus(Matrix::identity(3), sq), Matrix::identity(3)), 1e-15);
  EXPECT_LT(testing::max_entry_diff(power_psd(m, 1.0), m), 1e-13);
}

TEST(FunctionalCalculus, PowersMultiply) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix p = psd(2 + rep % 5, rng);
    const PsdCalculus calc(p);
    const Matrix prod = calc.power(0.3) * calc.power(1.2);
    EXPECT_LT(frobenius_norm(prod - calc.power(1.5)), 1e-10 * std::max(1.0, spectral_norm(calc.power(1.5))));
  }
}

TEST(FunctionalCalculus, AbsExamples) {
  const Matrix t{{0.0, 2.0}, {0.0, 0.0}};
  const std::vector<double> d{0.0, 2.0};
  EXPECT_LT(testing::max_entry_diff(abs_op(t), Matrix::diagonal(std::span<const double>(d))), 1e-14);
  std::mt19937_64 rng(14);
  const Matrix p = psd(4, rng);
  EXPECT_LT(testing::max_entry_diff(abs_op(p), p), 1e-10 * spectral_norm(p));
  EXPECT_NEAR(spectral_norm(t), 2.0, 1e-14);
  const std::vector<double> d2{1.0, -3.0};
  EXPECT_NEAR(spectral_norm(Matrix::diagonal(std::span<const double>(d2))), 3.0, 1e-14);
}

TEST(FunctionalCalculus, ClampsRoundoffNegatives) {
  const std::vector<double> d{1.0, -1e-14};
  const PsdCalculus calc(Matrix::diagonal(std::span<const double>(d)));
  EXPECT_EQ(calc.spectrum()[0], 0.0);
}

TEST(FunctionalCalculus, AbsOfNormalOperator) {
  const Matrix u{{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_LT(testing::max_entry_diff(abs_op(2.0 * u), 2.0 * Matrix::identity(2)), 1e-12);
}

TEST(FunctionalCalculus, AbsEigenvaluesAreSingularValues) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 2; n <= 12; n += 2) {
    const Matrix t = gaussian(n, n, rng);
    const auto eig = hermitian_eigen(abs_op(t));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(t));
    const auto sv = svd.singularValues();
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(eig.eigenvalues[k], sv(n - 1 - k), 1e-10);
  }
}

TEST(ScalarFunction, PowerConventions) {
  EXPECT_EQ(ScalarFunction::power(0.0)(0.0), 1.0);
  EXPECT_EQ(ScalarFunction::power(2.0)(3.0), 9.0);
  EXPECT_THROW(ScalarFunction::power(-1.0), Error);
  const ScalarFunction bad("neg", [](double) { return -1.0; });
  EXPECT_THROW(bad(1.0), Error);
}

TEST(SpectralNorm, MatchesSvd) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix t = gaussian(3 + rep % 4, 2 + rep % 5, rng);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(t));
    EXPECT_NEAR(spectral_norm(t), svd.singularValues()(0), 1e-10);
  }
}

TEST(NumericalRadius, KnownValues) {
  EXPECT_NEAR(numerical_radius(Matrix::identity(3)), 1.0, 1e-12);
  // nilpotent Jordan block: w = 1/2
  const Matrix j{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_NEAR(numerical_radius(j), 0.5, 1e-9);
  // e^{i phi} I
  const Matrix rot = Complex(std::polar(1.0, 0.3)) * Matrix::identity(2);
  EXPECT_NEAR(numerical_radius(rot), 1.0, 1e-9);
  EXPECT_NEAR(numerical_radius(Matrix{{0.0, 2.0}, {0.0, 0.0}}), 1.0, 1e-9);
  EXPECT_NEAR(numerical_radius(Matrix{{Complex(0, 1), 0.0}, {0.0, Complex(0, -1)}}), 1.0, 1e-9);
}

TEST(NumericalRadius, HermitianEqualsNorm) {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    const Matrix h = hermitian(2 + rep % 7, rng);
    EXPECT_NEAR(numerical_radius(h), spectral_norm(h), 1e-9);
  }
}

TEST(NumericalRadius, BetweenHalfNormAndNorm) {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 30; ++rep) {
    const Matrix t = gaussian(2 + rep % 6, 2 + rep % 6, rng);
    const double w = numerical_radius(t);
    const double n = spectral_norm(t);
    EXPECT_LE(w, n + 1e-9);
    EXPECT_GE(w, 0.5 * n - n * 2.0 * std::numbers::pi / kDefaultThetaSteps);
  }
}

TEST(NumericalRadius, ArgumentChecks) {
  EXPECT_ERROR_KIND(numerical_radius(Matrix(2, 3)), ErrorKind::DimensionMismatch);
  EXPECT_THROW(numerical_radius(Matrix::identity(2), 4), Error);
}

}  // namespace
}  // namespace berezin
