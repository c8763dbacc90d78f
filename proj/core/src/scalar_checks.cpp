#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "berezin/error.hpp"
#include "berezin/inequalities.hpp"

namespace berezin {

namespace {

// Keeps the worst relative slack and the sample with the largest lhs/rhs.
// Slacks are divided by max(1, |lhs|, |rhs|) because the scalar layer mixes
// values from 1e-6 up to 1e12.
struct Tally {
  double worst = std::numeric_limits<double>::infinity();
  double best_ratio = -1.0;
  Link tightest{0.0, 0.0};
  Link tightest_raw{0.0, 0.0};
  std::size_t sample = 0;

  void add(double lhs, double rhs, std::size_t index) {
    const double n = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const double slack = (rhs - lhs) / n;
    worst = std::min(worst, slack);
    double ratio;
    if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else {
      ratio = lhs <= 0.0 ? 0.0 : std::numeric_limits<double>::max();
    }
    if (ratio > best_ratio) {
      best_ratio = ratio;
      tightest = {lhs / n, rhs / n};
      tightest_raw = {lhs, rhs};
      sample = index;
    }
  }
};

InequalityCheck conclude(std::string id, const CheckParams& params, const Tally& tally,
                         std::vector<Matrix> operators) {
  InequalityCheck check;
  check.check_id = std::move(id);
  check.params = params;
  check.robustness = Robustness::PointwiseRobust;
  const Link links[] = {tally.tightest};
  settle(check, 1.0, tally.worst, links);
  check.witness = {std::move(operators), std::monostate{}};
  check.notes["tightest_lhs"] = tally.tightest_raw.lhs;
  check.notes["tightest_rhs"] = tally.tightest_raw.rhs;
  check.notes["tightest_sample"] = static_cast<double>(tally.sample);
  return check;
}

void require_samples(std::span<const std::pair<double, double>> samples) {
  if (samples.empty()) throw Error(ErrorKind::BadParams, "no samples");
  for (const auto& [a, b] : samples) {
    if (!(a >= 0.0 && b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw Error(ErrorKind::BadParams, "samples must be finite and nonnegative");
    }
  }
}

Matrix pair_matrix(double a, double b) { return Matrix(1, 2, {Complex(a), Complex(b)}); }

Matrix as_column(const Vector& v) { return Matrix(v.size(), 1, v); }

}  // namespace

InequalityCheck check_young_scalar(std::span<const std::pair<double, double>> samples, const CheckParams& params) {
  validate_params("young", params);
  require_samples(samples);
  const double al = params.alpha;
  const double r = params.r;
  const double p = params.p;
  const double q = params.q;
  Tally tally;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [a, b] = samples[i];
    const double geo = std::pow(a, al) * std::pow(b, 1.0 - al);
    const double arith = al * a + (1.0 - al) * b;
    const double power_mean = std::pow(al * std::pow(a, r) + (1.0 - al) * std::pow(b, r), 1.0 / r);
    tally.add(geo, arith, i);
    tally.add(arith, power_mean, i);

    const double prod = a * b;
    const double young = std::pow(a, p) / p + std::pow(b, q) / q;
    const double lifted = std::pow(std::pow(a, p * r) / p + std::pow(b, q * r) / q, 1.0 / r);
    tally.add(prod, young, i);
    tally.add(young, lifted, i);
  }
  const auto& s = samples[tally.sample];
  return conclude("young", params, tally, {pair_matrix(s.first, s.second)});
}

InequalityCheck check_refined_young(std::span<const std::pair<double, double>> samples, const CheckParams& params) {
  validate_params("refined_young", params);
  require_samples(samples);
  const double al = params.alpha;
  const double r0 = std::min(al, 1.0 - al);
  Tally tally;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [a, b] = samples[i];
    const double d = std::sqrt(a) - std::sqrt(b);
    tally.add(std::pow(a, al) * std::pow(b, 1.0 - al), al * a + (1.0 - al) * b - r0 * d * d, i);
  }
  const auto& s = samples[tally.sample];
  return conclude("refined_young", params, tally, {pair_matrix(s.first, s.second)});
}

InequalityCheck check_mixed_schwarz(const Matrix& t, std::span<const std::pair<Vector, Vector>> samples,
                                    const CheckParams& params, const ScalarFunction& f, const ScalarFunction& g) {
  validate_params("mixed_schwarz", params);
  if (!t.is_square()) throw Error(ErrorKind::DimensionMismatch, "T must be square");
  if (samples.empty()) throw Error(ErrorKind::BadParams, "no samples");
  const PsdCalculus right(adjoint(t) * t);
  const PsdCalculus left(t * adjoint(t));

  std::vector<double> singular;
  for (double w : right.spectrum()) singular.push_back(std::sqrt(w));
  for (double w : left.spectrum()) singular.push_back(std::sqrt(w));
  require_fg_product(f, g, singular);

  const Matrix abs_pow = right.power(params.alpha);
  const Matrix adj_pow = left.power(1.0 - params.alpha);
  const Matrix f_abs = right.apply(ScalarFunction(f.name() + "(sqrt)", [&f](double w) { return f(std::sqrt(w)); }));
  const Matrix g_adj = left.apply(ScalarFunction(g.name() + "(sqrt)", [&g](double w) { return g(std::sqrt(w)); }));

  Tally tally;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [x, y] = samples[i];
    if (x.size() != t.cols() || y.size() != t.rows()) {
      throw Error(ErrorKind::DimensionMismatch, "sample vectors do not match T");
    }
    const double txy = std::abs(inner(t * x, y));
    tally.add(txy * txy, quadratic_form(abs_pow, x).real() * quadratic_form(adj_pow, y).real(), i);
    tally.add(txy, norm(f_abs * x) * norm(g_adj * y), i);
  }
  const auto& s = samples[tally.sample];
  return conclude("mixed_schwarz", params, tally, {t, as_column(s.first), as_column(s.second)});
}

InequalityCheck check_mccarthy(const Matrix& t, std::span<const Vector> samples, const CheckParams& params) {
  validate_params("mccarthy", params);
  if (samples.empty()) throw Error(ErrorKind::BadParams, "no samples");
  const PsdCalculus calc(t);
  const Matrix tr = calc.power(params.r);
  Tally tally;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& x = samples[i];
    if (x.size() != t.rows()) throw Error(ErrorKind::DimensionMismatch, "sample vector does not match T");
    if (std::abs(norm(x) - 1.0) > 1e-10) throw Error(ErrorKind::BadParams, "sample vector is not a unit vector");
    const double base = std::pow(std::max(quadratic_form(t, x).real(), 0.0), params.r);
    const double lifted = quadratic_form(tr, x).real();
    if (params.r >= 1.0) tally.add(base, lifted, i);
    if (params.r <= 1.0) tally.add(lifted, base, i);
  }
  return conclude("mccarthy", params, tally, {t, as_column(samples[tally.sample])});
}

}  // namespace berezin
