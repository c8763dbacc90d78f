#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "berezin/matrix.hpp"

namespace berezin {

/// Eigenvalues ascending; eigenvectors are the matching columns of a
/// unitary matrix.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

inline constexpr double kDefaultHermitianTol = 1e-10;
inline constexpr double kDefaultClamp = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffTol = 1e-13;

/// Cyclic two-sided Jacobi on a Hermitian matrix. Throws NotHermitian when
/// ||H - H*|| > tol_herm * ||H|| and NoConvergence after kJacobiMaxSweeps.
HermitianEigen hermitian_eigen(const Matrix& h, double tol_herm = kDefaultHermitianTol);

/// A rule t -> f(t) on [0, inf). When `nonnegative` is set every evaluation
/// is checked and a negative value raises BadParams.
class ScalarFunction {
 public:
  ScalarFunction(std::string name, std::function<double(double)> rule, bool nonnegative = true);

  /// t^s, with 0^0 = 1.
  static ScalarFunction power(double exponent);
  static ScalarFunction sqrt();

  double operator()(double t) const;
  const std::string& name() const noexcept { return name_; }
  bool nonnegative() const noexcept { return nonnegative_; }

 private:
  std::string name_;
  std::function<double(double)> rule_;
  bool nonnegative_;
};

/// Spectral decomposition of a positive semidefinite matrix, reusable for
/// several functions of the same operator. Eigenvalues in
/// [-clamp * ||P||, 0) are set to zero; anything below raises NotPSD.
class PsdCalculus {
 public:
  explicit PsdCalculus(const Matrix& p, double clamp = kDefaultClamp);

  Matrix apply(const ScalarFunction& f) const;
  /// P^s for s >= 0; s == 0 gives the identity exactly.
  Matrix power(double s) const;

  std::span<const double> spectrum() const noexcept { return spectrum_; }
  const Matrix& eigenvectors() const noexcept { return eigen_.eigenvectors; }
  std::size_t dim() const noexcept { return spectrum_.size(); }

 private:
  Matrix rebuild(std::span<const double> values) const;

  HermitianEigen eigen_;
  std::vector<double> spectrum_;
};

Matrix func_calculus(const Matrix& p, const ScalarFunction& f, double clamp = kDefaultClamp);

/// |T| = (T*T)^{1/2}.
Matrix abs_op(const Matrix& t);

Matrix power_psd(const Matrix& p, double s);

/// Largest singular value.
double spectral_norm(const Matrix& t);

inline constexpr int kDefaultThetaSteps = 720;
inline constexpr int kDefaultRadiusRefineIters = 60;

/// Largest eigenvalue of Re(e^{i theta} T) = (e^{i theta} T + e^{-i theta} T*) / 2.
double rotated_top_eigenvalue(const Matrix& t, double theta);

/// max_theta lambda_max(Re(e^{i theta} T)) over a uniform grid of
/// `theta_steps` angles, followed by golden-section search on the bracket
/// around the best grid angle. Every evaluated value is a lower bound on
/// w(T), and the grid maximum is within ||T|| * 2 pi / theta_steps of it.
double numerical_radius(const Matrix& t, int theta_steps = kDefaultThetaSteps,
                        int refine_iters = kDefaultRadiusRefineIters);

}  // namespace berezin
