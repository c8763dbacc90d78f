#include "berezin/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "berezin/error.hpp"
#include "form.hpp"

namespace berezin {

using detail::Aggregate;
using detail::PointForm;
using detail::Side;
using detail::Term;
using detail::abs_form;
using detail::real_form;

namespace {

void bad(const std::string& what) { throw Error(ErrorKind::BadParams, what); }

void need_alpha(const CheckParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) bad("alpha must lie in [0, 1]");
}

void need_conjugate(const CheckParams& p) {
  if (!(p.p > 1.0 && p.q > 1.0) || !std::isfinite(p.p) || !std::isfinite(p.q)) bad("p, q must exceed 1");
  if (std::abs(1.0 / p.p + 1.0 / p.q - 1.0) > 1e-12) bad("p and q are not conjugate");
}

void need_r_at_least(const CheckParams& p, double lo) {
  if (!(p.r >= lo) || !std::isfinite(p.r)) bad("r must be >= " + std::to_string(lo));
}

// pr >= 2 and qr >= 2 with a little slack for grids like p = 3, r = 2/3.
void need_young_powers(const CheckParams& p) {
  if (p.p * p.r < 2.0 - 1e-12) bad("pr must be >= 2");
  if (p.q * p.r < 2.0 - 1e-12) bad("qr must be >= 2");
}

void require_on(const KernelSpace& space, const Matrix& m, const char* name) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(name) + " must be " + std::to_string(space.dim()) + "x" + std::to_string(space.dim()));
  }
}

double norm_scale(std::initializer_list<const Matrix*> ops) {
  double s = 0.0;
  for (const Matrix* m : ops) s = std::max(s, spectral_norm(*m));
  return s;
}

InequalityCheck finish(std::string id, const CheckParams& params, Robustness robustness, double input_scale,
                       const detail::FormOutcome& out, std::vector<Matrix> operators) {
  InequalityCheck check;
  check.check_id = std::move(id);
  check.params = params;
  check.robustness = robustness;
  settle(check, input_scale, out.worst_pointwise, out.links);
  check.witness = {std::move(operators), out.location};
  if (out.extra_rounds > 0) check.notes["suspect_rounds"] = out.extra_rounds;
  return check;
}

// Two-term form |<L k,k>| <= <R k,k> used by several checks.
PointForm simple_form(Matrix lhs_op, Matrix rhs_op) {
  PointForm form;
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}};
  form.evaluate = [l = std::move(lhs_op), r = std::move(rhs_op)](const Vector& u, std::span<double> out) {
    out[0] = abs_form(l, u);
    out[1] = real_form(r, u);
  };
  form.point_lhs = [](std::span<const double> v) { return v[0]; };
  form.point_rhs = [](std::span<const double> v) { return v[1]; };
  form.chain = [](std::span<const double> g) { return std::vector<Link>{{g[0], g[1]}}; };
  return form;
}

// B*|X|^{2a}B + A*|X*|^{2(1-a)}A, shared by the a = 1/2 product check and its
// weighted generalisation so that both produce identical numbers.
Matrix weighted_sandwich(const Matrix& a, const Matrix& b, const Matrix& x, double alpha) {
  const Matrix left = power_psd(adjoint(x) * x, alpha);
  const Matrix right = power_psd(x * adjoint(x), 1.0 - alpha);
  return adjoint(b) * left * b + adjoint(a) * right * a;
}

InequalityCheck product_alpha(std::string id, const KernelSpace& space, const Matrix& a, const Matrix& b,
                              const Matrix& x, double alpha, const SamplePlan& plan, const CheckParams& params,
                              const RefineConfig& refine) {
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  const PointForm form = simple_form(adjoint(a) * x * b, 0.5 * weighted_sandwich(a, b, x, alpha));
  const double scale = norm_scale({&a, &b, &x});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  return finish(std::move(id), params, Robustness::PointwiseRobust, scale, out, {a, b, x});
}

}  // namespace

CheckParams with_conjugate(CheckParams params, double p) {
  params.p = p;
  params.q = p / (p - 1.0);
  return params;
}

void validate_params(std::string_view id, const CheckParams& p) {
  if (!(p.tolerance > 0.0) || !std::isfinite(p.tolerance)) bad("tolerance must be positive");
  need_alpha(p);

  if (id == "eq111" || id == "eq1" || id == "commutator" || id == "eq4" || id == "thm2ii" || id == "eq5" ||
      id == "remark1" || id == "remark2" || id == "refined_young" || id == "mixed_schwarz" || id == "lemma9a" ||
      id == "lemma9b" || id == "full_cor") {
    return;
  }
  if (id == "thm2i") {
    need_conjugate(p);
    if (!(p.r > 0.0)) bad("r must be positive");
    need_young_powers(p);
    return;
  }
  if (id == "eq10" || id == "heinz") {
    need_r_at_least(p, 2.0);
    return;
  }
  if (id == "eq7") {
    need_conjugate(p);
    if (p.p < p.q) bad("eq7 needs p >= q");
    need_r_at_least(p, 1.0);
    need_young_powers(p);
    return;
  }
  if (id == "eq7cor" || id == "eq14") {
    need_r_at_least(p, 1.0);
    return;
  }
  if (id == "tuple_berp") {
    if (!(p.p >= 2.0) || !std::isfinite(p.p)) bad("p must be >= 2");
    return;
  }
  if (id == "young") {
    need_conjugate(p);
    need_r_at_least(p, 1.0);
    return;
  }
  if (id == "mccarthy") {
    if (!(p.r > 0.0) || !std::isfinite(p.r)) bad("r must be positive");
    return;
  }
  throw Error(ErrorKind::UnknownChecker, std::string(id));
}

void require_fg_product(const ScalarFunction& f, const ScalarFunction& g, std::span<const double> spectrum) {
  for (double t : spectrum) {
    const double prod = f(t) * g(t);
    if (!(std::abs(prod - t) <= 1e-10 * std::max(1.0, t))) {
      throw Error(ErrorKind::FGProductMismatch, f.name() + " * " + g.name() + " differs from t at t = " +
                                                    std::to_string(t));
    }
  }
}

InequalityCheck check_chain_111(const KernelSpace& space, const Matrix& a, const SamplePlan& plan,
                                const CheckParams& params, const RefineConfig& refine) {
  validate_params("eq111", params);
  require_on(space, a, "A");
  const double op_norm = spectral_norm(a);
  const double w = numerical_radius(a);
  // every grid evaluation is a lower bound; the grid misses w by at most this
  const double grid_gap = op_norm * 2.0 * std::numbers::pi / kDefaultThetaSteps;

  PointForm form;
  form.terms = {Term{Side::Lhs}};
  form.evaluate = [&a](const Vector& u, std::span<double> out) { out[0] = abs_form(a, u); };
  form.point_lhs = [](std::span<const double> v) { return v[0]; };
  form.point_rhs = [w, grid_gap](std::span<const double>) { return w + grid_gap; };
  form.chain = [w, grid_gap, op_norm](std::span<const double> g) {
    return std::vector<Link>{{g[0], w + grid_gap}, {w, op_norm}};
  };
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, op_norm);
  auto check = finish("eq111", params, Robustness::PointwiseRobust, op_norm, out, {a});
  check.notes["numerical_radius"] = w;
  check.notes["ber"] = out.aggregates[0];
  return check;
}

InequalityCheck check_prior_product(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                    const SamplePlan& plan, const CheckParams& params, const RefineConfig& refine) {
  validate_params("eq1", params);
  return product_alpha("eq1", space, a, b, x, 0.5, plan, params, refine);
}

InequalityCheck check_thm_product_alpha(const KernelSpace& space, const Matrix& a, const Matrix& b,
                                        const Matrix& x, const SamplePlan& plan, const CheckParams& params,
                                        const RefineConfig& refine) {
  validate_params("thm2ii", params);
  return product_alpha("thm2ii", space, a, b, x, params.alpha, plan, params, refine);
}

InequalityCheck check_prior_commutator(const KernelSpace& space, const Matrix& a, const Matrix& x, int sign,
                                       const SamplePlan& plan, const CheckParams& params,
                                       const RefineConfig& refine) {
  validate_params("commutator", params);
  if (sign != 1 && sign != -1) bad("sign must be +1 or -1");
  require_on(space, a, "A");
  require_on(space, x, "X");
  Matrix comm = a * x;
  if (sign > 0) {
    comm += x * a;
  } else {
    comm -= x * a;
  }
  const Matrix sa = adjoint(a) * a + a * adjoint(a);
  const Matrix sx = adjoint(x) * x + x * adjoint(x);

  PointForm form;
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}, Term{Side::Rhs}};
  form.evaluate = [&](const Vector& u, std::span<double> out) {
    out[0] = abs_form(comm, u);
    out[1] = real_form(sa, u);
    out[2] = real_form(sx, u);
  };
  form.chain = [](std::span<const double> g) {
    return std::vector<Link>{{g[0], std::sqrt(std::max(g[1], 0.0) * std::max(g[2], 0.0))}};
  };
  const double scale = norm_scale({&a, &x});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::SupEstimated, scale);
  auto check = finish("commutator", params, Robustness::SupEstimated, scale, out, {a, x});
  check.notes["sign"] = sign;
  return check;
}

InequalityCheck check_prior_sandwich(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                     const Matrix& y, const SamplePlan& plan, const CheckParams& params,
                                     const RefineConfig& refine) {
  validate_params("eq4", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  require_on(space, y, "Y");
  const Matrix lhs_op = adjoint(a) * x * b + adjoint(b) * y * a;
  const Matrix bb = adjoint(b) * b;
  const Matrix aa = a * adjoint(a);
  const double factor = 2.0 * std::sqrt(spectral_norm(x) * spectral_norm(y));

  PointForm form;
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}, Term{Side::Rhs}};
  form.evaluate = [&](const Vector& u, std::span<double> out) {
    out[0] = abs_form(lhs_op, u);
    out[1] = real_form(bb, u);
    out[2] = real_form(aa, u);
  };
  form.chain = [factor](std::span<const double> g) {
    return std::vector<Link>{{g[0], factor * std::sqrt(std::max(g[1], 0.0) * std::max(g[2], 0.0))}};
  };
  const double scale = norm_scale({&a, &b, &x, &y});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::SupEstimated, scale);
  return finish("eq4", params, Robustness::SupEstimated, scale, out, {a, b, x, y});
}

InequalityCheck check_thm_product_young(const KernelSpace& space, const Matrix& a, const Matrix& b,
                                        const Matrix& x, const SamplePlan& plan, const CheckParams& params,
                                        const RefineConfig& refine) {
  validate_params("thm2i", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  const double r = params.r;
  const Matrix lhs_op = adjoint(a) * x * b;
  const Matrix rhs_op = (1.0 / params.p) * power_psd(adjoint(a) * a, params.p * r / 2.0) +
                        (1.0 / params.q) * power_psd(adjoint(b) * b, params.q * r / 2.0);
  const double xr = std::pow(spectral_norm(x), r);

  PointForm form;
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}};
  form.evaluate = [&](const Vector& u, std::span<double> out) {
    out[0] = abs_form(lhs_op, u);
    out[1] = real_form(rhs_op, u);
  };
  form.point_lhs = [r](std::span<const double> v) { return std::pow(v[0], r); };
  form.point_rhs = [xr](std::span<const double> v) { return xr * v[1]; };
  form.chain = [r, xr](std::span<const double> g) { return std::vector<Link>{{std::pow(g[0], r), xr * g[1]}}; };
  const double scale = std::max(norm_scale({&a, &b, &x}), xr);
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  return finish("thm2i", params, Robustness::PointwiseRobust, scale, out, {a, b, x});
}

InequalityCheck check_thm_sym(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                              const Matrix& y, const SamplePlan& plan, const CheckParams& params,
                              const RefineConfig& refine) {
  validate_params("eq5", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  require_on(space, y, "Y");
  const Matrix lhs_op = adjoint(a) * x * b + adjoint(b) * y * a;
  // the Y half has the roles of A and B exchanged
  const Matrix rhs_op = 0.5 * (weighted_sandwich(a, b, x, params.alpha) + weighted_sandwich(b, a, y, params.alpha));
  const PointForm form = simple_form(lhs_op, rhs_op);
  const double scale = norm_scale({&a, &b, &x, &y});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  return finish("eq5", params, Robustness::PointwiseRobust, scale, out, {a, b, x, y});
}

namespace {

// |<L k,k>| <= (s1 + s2)/2 pointwise; published as
// ber(L) <= 1/2 ber(S1 + S2) <= 1/2 (ber(S1) + ber(S2)).
PointForm split_form(Matrix lhs_op, Matrix s1, Matrix s2) {
  PointForm form;
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}, Term{Side::Rhs}, Term{Side::Rhs}};
  form.evaluate = [l = std::move(lhs_op), s1 = std::move(s1), s2 = std::move(s2)](const Vector& u,
                                                                                  std::span<double> out) {
    out[0] = abs_form(l, u);
    out[1] = real_form(s1, u);
    out[2] = real_form(s2, u);
    out[3] = out[1] + out[2];
  };
  form.point_lhs = [](std::span<const double> v) { return v[0]; };
  form.point_rhs = [](std::span<const double> v) { return 0.5 * v[3]; };
  form.chain = [](std::span<const double> g) {
    return std::vector<Link>{{g[0], 0.5 * g[3]}, {0.5 * g[3], 0.5 * (g[1] + g[2])}};
  };
  return form;
}

}  // namespace

InequalityCheck check_sym_split(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                const Matrix& y, const SamplePlan& plan, const CheckParams& params,
                                const RefineConfig& refine) {
  validate_params("remark1", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  require_on(space, y, "Y");
  const PointForm form = split_form(adjoint(a) * x * b + adjoint(b) * y * a, weighted_sandwich(a, b, x, 0.5),
                                    weighted_sandwich(b, a, y, 0.5));
  const double scale = norm_scale({&a, &b, &x, &y});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  return finish("remark1", params, Robustness::PointwiseRobust, scale, out, {a, b, x, y});
}

InequalityCheck check_sym_abs(const KernelSpace& space, const Matrix& a, const Matrix& b, const SamplePlan& plan,
                              const CheckParams& params, const RefineConfig& refine) {
  validate_params("remark2", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  const Matrix both = abs_op(a) + abs_op(adjoint(a));
  const PointForm form = split_form(a * b + adjoint(b) * a, both, adjoint(b) * both * b);
  const double scale = norm_scale({&a, &b});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  return finish("remark2", params, Robustness::PointwiseRobust, scale, out, {a, b});
}

InequalityCheck check_thm_alpha_power(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                      const SamplePlan& plan, const CheckParams& params,
                                      const RefineConfig& refine) {
  validate_params("eq10", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  const double r = params.r;
  const double alpha = params.alpha;
  const double r0 = std::min(alpha, 1.0 - alpha);
  const PsdCalculus ca(a);
  const PsdCalculus cb(b);
  const Matrix t = ca.power(alpha) * x * cb.power(1.0 - alpha);
  const Matrix ar = ca.power(r);
  const Matrix br = cb.power(r);
  const double xr = std::pow(spectral_norm(x), r);

  PointForm form;
  // |T~|, <(aA^r + (1-a)B^r)k,k>, eta
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}, Term{Side::Rhs, Aggregate::Min}};
  form.evaluate = [&](const Vector& u, std::span<double> out) {
    const double av = std::max(real_form(ar, u), 0.0);
    const double bv = std::max(real_form(br, u), 0.0);
    out[0] = abs_form(t, u);
    out[1] = alpha * av + (1.0 - alpha) * bv;
    const double d = std::sqrt(av) - std::sqrt(bv);
    out[2] = r0 * d * d;
  };
  form.point_lhs = [r, xr](std::span<const double> v) { return std::pow(v[0], r) + xr * v[2]; };
  form.point_rhs = [xr](std::span<const double> v) { return xr * v[1]; };
  form.chain = [r, xr](std::span<const double> g) {
    return std::vector<Link>{{std::pow(g[0], r), xr * (g[1] - g[2])}};
  };
  const double scale = std::max({norm_scale({&a, &b, &x}), xr, spectral_norm(ar), spectral_norm(br)});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  auto check = finish("eq10", params, Robustness::PointwiseRobust, scale, out, {a, b, x});
  check.notes["inf_eta"] = out.aggregates[2];
  return check;
}

InequalityCheck check_thm_heinz(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                const SamplePlan& plan, const CheckParams& params, const RefineConfig& refine) {
  validate_params("heinz", params);
  require_on(space, a, "A");
  require_on(space, b, "B");
  require_on(space, x, "X");
  const double r = params.r;
  const double alpha = params.alpha;
  const PsdCalculus ca(a);
  const PsdCalculus cb(b);
  const Matrix h = 0.5 * (ca.power(alpha) * x * cb.power(1.0 - alpha) + ca.power(1.0 - alpha) * x * cb.power(alpha));
  const Matrix ar = ca.power(r);
  const Matrix br = cb.power(r);
  const double half_xr = 0.5 * std::pow(spectral_norm(x), r);

  PointForm form;
  // |H~|, <(A^r + B^r)k,k>, <(aA^r + (1-a)B^r)k,k>, <((1-a)A^r + aB^r)k,k>
  form.terms = {Term{Side::Lhs}, Term{Side::Rhs}, Term{Side::Rhs}, Term{Side::Rhs}};
  form.evaluate = [&](const Vector& u, std::span<double> out) {
    const double av = real_form(ar, u);
    const double bv = real_form(br, u);
    out[0] = abs_form(h, u);
    out[1] = av + bv;
    out[2] = alpha * av + (1.0 - alpha) * bv;
    out[3] = (1.0 - alpha) * av + alpha * bv;
  };
  form.point_lhs = [r](std::span<const double> v) { return std::pow(v[0], r); };
  form.point_rhs = [half_xr](std::span<const double> v) { return half_xr * v[1]; };
  form.chain = [r, half_xr](std::span<const double> g) {
    return std::vector<Link>{{std::pow(g[0], r), half_xr * g[1]}, {half_xr * g[1], half_xr * (g[2] + g[3])}};
  };
  const double scale =
      std::max({norm_scale({&a, &b, &x}), 2.0 * half_xr, spectral_norm(ar), spectral_norm(br)});
  const auto out = detail::run_form(space, form, plan, refine, params, Robustness::PointwiseRobust, scale);
  auto check = finish("heinz", params, Robustness::PointwiseRobust, scale, out, {a, b, x});

  // the other way of reading the final bound: only the first ber is scaled
  const double literal = half_xr * out.aggregates[2] + out.aggregates[3];
  const double lhs = std::pow(out.aggregates[0], r);
  check.notes["literal_rhs"] = literal;
  check.notes["literal_reading_holds"] = lhs <= literal + check.abs_tolerance() ? 1.0 : 0.0;
  return check;
}

}  // namespace berezin
