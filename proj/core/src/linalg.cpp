#include "berezin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "berezin/error.hpp"

namespace berezin {

namespace {

double off_diagonal_norm(const Matrix& d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j) acc += std::norm(d(i, j));
  return std::sqrt(acc);
}

// Zeroes d(p, q) with the unitary U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on coordinates (p, q), then accumulates U into v.
void jacobi_rotate(Matrix& d, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = d(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase_conj = std::conj(apq / mag);

  const double app = d(p, p).real();
  const double aqq = d(q, q).real();
  const double zeta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(zeta) > 1e150) {
    t = 0.5 / zeta;
  } else {
    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex u_pp = c;
  const Complex u_pq = s;
  const Complex u_qp = -s * phase_conj;
  const Complex u_qq = c * phase_conj;

  const std::size_t n = d.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex dkp = d(k, p);
    const Complex dkq = d(k, q);
    d(k, p) = dkp * u_pp + dkq * u_qp;
    d(k, q) = dkp * u_pq + dkq * u_qq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex dpk = d(p, k);
    const Complex dqk = d(q, k);
    d(p, k) = std::conj(u_pp) * dpk + std::conj(u_qp) * dqk;
    d(q, k) = std::conj(u_pq) * dpk + std::conj(u_qq) * dqk;
  }
  d(p, q) = 0.0;
  d(q, p) = 0.0;
  d(p, p) = d(p, p).real();
  d(q, q) = d(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * u_pp + vkq * u_qp;
    v(k, q) = vkp * u_pq + vkq * u_qq;
  }
}

double spectral_scale(std::span<const double> values) {
  double s = 0.0;
  for (double w : values) s = std::max(s, std::abs(w));
  return s;
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix& h, double tol_herm) {
  if (!h.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermitian_eigen needs a square matrix");
  const double scale = frobenius_norm(h);
  if (frobenius_norm(h - adjoint(h)) > tol_herm * scale) {
    throw Error(ErrorKind::NotHermitian, "||H - H*|| exceeds tolerance");
  }

  const std::size_t n = h.rows();
  Matrix d = hermitian_part(h);
  Matrix v = Matrix::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(d) <= kJacobiOffTol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(d, v, p, q);
  }
  if (!converged && off_diagonal_norm(d) > kJacobiOffTol * scale) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweeps exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d(a, a).real() < d(b, b).real(); });

  HermitianEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = d(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ScalarFunction::ScalarFunction(std::string name, std::function<double(double)> rule,
                               bool nonnegative)
    : name_(std::move(name)), rule_(std::move(rule)), nonnegative_(nonnegative) {}

ScalarFunction ScalarFunction::power(double exponent) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw Error(ErrorKind::BadExponent, "power exponent must be finite and >= 0");
  }
  return ScalarFunction("t^" + std::to_string(exponent),
                        [exponent](double t) { return std::pow(t, exponent); });
}

ScalarFunction ScalarFunction::sqrt() {
  return ScalarFunction("sqrt", [](double t) { return std::sqrt(t); });
}

double ScalarFunction::operator()(double t) const {
  const double value = rule_(t);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::BadParams, name_ + " is not finite at t=" + std::to_string(t));
  }
  if (nonnegative_ && value < 0.0) {
    throw Error(ErrorKind::BadParams, name_ + " is negative at t=" + std::to_string(t));
  }
  return value;
}

PsdCalculus::PsdCalculus(const Matrix& p, double clamp) : eigen_(hermitian_eigen(p)) {
  const double scale = spectral_scale(eigen_.eigenvalues);
  spectrum_.reserve(eigen_.eigenvalues.size());
  for (double w : eigen_.eigenvalues) {
    if (w < -clamp * scale) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(w) + " below -clamp*||P||");
    }
    spectrum_.push_back(std::max(w, 0.0));
  }
}

Matrix PsdCalculus::rebuild(std::span<const double> values) const {
  const std::size_t n = dim();
  const Matrix& v = eigen_.eigenvectors;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * values[k] * std::conj(v(j, k));
      if (i == j) {
        out(i, i) = acc.real();
      } else {
        out(i, j) = acc;
        out(j, i) = std::conj(acc);
      }
    }
  }
  return out;
}

Matrix PsdCalculus::apply(const ScalarFunction& f) const {
  std::vector<double> values;
  values.reserve(dim());
  for (double w : spectrum_) values.push_back(f(w));
  return rebuild(values);
}

Matrix PsdCalculus::power(double s) const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorKind::BadExponent, "power must be >= 0");
  if (s == 0.0) return Matrix::identity(dim());
  std::vector<double> values;
  values.reserve(dim());
  for (double w : spectrum_) values.push_back(std::pow(w, s));
  return rebuild(values);
}

Matrix func_calculus(const Matrix& p, const ScalarFunction& f, double clamp) {
  return PsdCalculus(p, clamp).apply(f);
}

Matrix abs_op(const Matrix& t) { return PsdCalculus(adjoint(t) * t).power(0.5); }

Matrix power_psd(const Matrix& p, double s) { return PsdCalculus(p).power(s); }

double spectral_norm(const Matrix& t) {
  const Matrix gram = t.rows() < t.cols() ? t * adjoint(t) : adjoint(t) * t;
  const auto eig = hermitian_eigen(gram);
  return std::sqrt(std::max(0.0, eig.eigenvalues.back()));
}

double rotated_top_eigenvalue(const Matrix& t, double theta) {
  const Complex rot = std::polar(1.0, theta);
  const std::size_t n = t.rows();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (rot * t(i, j) + std::conj(rot * t(j, i)));
  return hermitian_eigen(h).eigenvalues.back();
}

double numerical_radius(const Matrix& t, int theta_steps, int refine_iters) {
  if (!t.is_square()) throw Error(ErrorKind::DimensionMismatch, "numerical_radius needs a square matrix");
  if (theta_steps < 8) throw Error(ErrorKind::BadParams, "theta_steps must be >= 8");

  const double step = 2.0 * std::numbers::pi / theta_steps;
  double best = -std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < theta_steps; ++k) {
    const double value = rotated_top_eigenvalue(t, k * step);
    if (value > best) {
      best = value;
      best_k = k;
    }
  }

  // Golden-section search on [theta_best - step, theta_best + step].
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = (best_k - 1) * step;
  double hi = (best_k + 1) * step;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = rotated_top_eigenvalue(t, x1);
  double f2 = rotated_top_eigenvalue(t, x2);
  best = std::max({best, f1, f2});
  for (int it = 0; it < refine_iters; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = rotated_top_eigenvalue(t, x2);
      best = std::max(best, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = rotated_top_eigenvalue(t, x1);
      best = std::max(best, f1);
    }
  }
  return std::max(best, 0.0);
}

}  // namespace berezin
