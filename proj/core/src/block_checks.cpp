#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "berezin/error.hpp"
#include "berezin/inequalities.hpp"

namespace berezin {

namespace {

constexpr int kSuspectRounds = 3;

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " must be " + std::to_string(rows) + "x" +
                                                  std::to_string(cols));
  }
}

void require_offdiag(const DirectSumSpace& space, const Matrix& b, const Matrix& c) {
  require_shape(b, space.first_dim(), space.second_dim(), "B");
  require_shape(c, space.second_dim(), space.first_dim(), "C");
}

// Sampled ber on one component: the component sample set of the product
// plan, optionally widened by doubled plans for the suspect protocol.
class ComponentBer {
 public:
  ComponentBer(const KernelSpace& space, const KernelTable& base, const SamplePlan& plan)
      : space_(space), base_(base), plan_(plan) {}

  double operator()(const Matrix& m) const {
    double best = base_.max_abs_symbol(m).first;
    for (const auto& t : extra_) best = std::max(best, t.max_abs_symbol(m).first);
    return best;
  }

  bool extend(int round) {
    if (!space_.is_disk()) return false;
    SamplePlan bigger = plan_;
    bigger.count = plan_.count << round;
    bigger.seed = plan_.seed + static_cast<std::uint64_t>(round);
    extra_.emplace_back(space_, sample_domain(space_, bigger));
    return true;
  }

 private:
  const KernelSpace& space_;
  const KernelTable& base_;
  SamplePlan plan_;
  std::vector<KernelTable> extra_;
};

// t X~(l1) + (1 - t) Y~(l2) for Hermitian X, Y.
std::vector<double> diag_values(const ProductEvaluator& eval, const Matrix& x, const Matrix& y) {
  const auto s = eval.diagonal_symbols(x, y);
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k].real();
  return out;
}

std::vector<double> abs_pow(const std::vector<Complex>& s, double r) {
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = std::pow(std::abs(s[k]), r);
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

struct Worst {
  double slack = std::numeric_limits<double>::infinity();
  std::size_t at = 0;
};

Worst worst_gap(const std::vector<double>& lhs, const std::vector<double>& rhs) {
  Worst w;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (rhs[k] - lhs[k] < w.slack) {
      w.slack = rhs[k] - lhs[k];
      w.at = k;
    }
  }
  return w;
}

double link_slack(std::span<const Link> links) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& l : links) s = std::min(s, l.rhs - l.lhs);
  return s;
}

bool violated(std::span<const Link> links, const CheckParams& params, double input_scale) {
  const double scale = std::max({1.0, input_scale, std::abs(links.back().rhs)});
  return link_slack(links) < -params.tolerance * scale;
}

// Pointwise: lhs(pair) <= factor <diag(M1, M2) k,k>.
// Published: max lhs <= factor max{ber(M1), ber(M2)}.
InequalityCheck diag_bounded(std::string id, const DirectSumSpace& space, const ProductPlan& plan,
                             const ProductSample& sample, const ProductEvaluator& eval,
                             const std::vector<double>& lhs, const Matrix& m1, const Matrix& m2, double factor,
                             const CheckParams& params, double input_scale, std::vector<Matrix> operators) {
  std::vector<double> rhs = diag_values(eval, m1, m2);
  for (double& v : rhs) v *= factor;
  const Worst w = worst_gap(lhs, rhs);
  const double lhs_sup = max_of(lhs);
  const double rhs_pairs = max_of(rhs);

  ComponentBer ber1(space.first(), eval.first_table(), plan.first);
  ComponentBer ber2(space.second(), eval.second_table(), plan.second);
  auto links_now = [&] {
    return std::vector<Link>{{lhs_sup, rhs_pairs}, {rhs_pairs, factor * std::max(ber1(m1), ber2(m2))}};
  };
  std::vector<Link> links = links_now();
  const double scale = std::max({input_scale, spectral_norm(m1), spectral_norm(m2)});
  int rounds = 0;
  if (params.mode != CheckMode::Pointwise) {
    while (rounds < kSuspectRounds && violated(links, params, scale)) {
      ++rounds;
      const bool grew = ber1.extend(rounds) | ber2.extend(rounds);
      if (!grew) break;
      links = links_now();
    }
  }

  InequalityCheck check;
  check.check_id = std::move(id);
  check.params = params;
  check.robustness = Robustness::PointwiseRobust;
  settle(check, scale, w.slack, links);
  check.witness = {std::move(operators), sample.pair_point(w.at)};
  if (rounds > 0) check.notes["suspect_rounds"] = rounds;
  return check;
}

Matrix fg_power(const PsdCalculus& gram, const ScalarFunction& h, double exponent) {
  return gram.apply(ScalarFunction(h.name() + "^e", [&h, exponent](double w) {
    return std::pow(h(std::sqrt(w)), exponent);
  }));
}

InequalityCheck offdiag_core(std::string id, const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                             const ScalarFunction& f, const ScalarFunction& g, const ProductPlan& plan,
                             const CheckParams& params, double p, double q, double factor) {
  require_offdiag(space, b, c);
  const PsdCalculus cc(adjoint(c) * c);  // |C|^2 on H1
  const PsdCalculus bb_adj(b * adjoint(b));  // |B*|^2 on H1
  const PsdCalculus bb(adjoint(b) * b);  // |B|^2 on H2
  const PsdCalculus cc_adj(c * adjoint(c));  // |C*|^2 on H2

  std::vector<double> singular;
  for (const PsdCalculus* calc : {&cc, &bb_adj, &bb, &cc_adj})
    for (double w : calc->spectrum()) singular.push_back(std::sqrt(w));
  require_fg_product(f, g, singular);

  const double pr = p * params.r;
  const double qr = q * params.r;
  const Matrix m1 = (1.0 / p) * fg_power(cc, f, pr) + (1.0 / q) * fg_power(bb_adj, g, qr);
  const Matrix m2 = (1.0 / p) * fg_power(bb, f, pr) + (1.0 / q) * fg_power(cc_adj, g, qr);

  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);
  const auto lhs = abs_pow(eval.symbols(BlockOperator::off_diagonal(b, c)), params.r);
  const double scale = std::pow(std::max(spectral_norm(b), spectral_norm(c)), params.r);
  return diag_bounded(std::move(id), space, plan, sample, eval, lhs, (1.0 / factor) * m1, (1.0 / factor) * m2,
                      factor, params, scale, {b, c});
}

}  // namespace

InequalityCheck check_offdiag_fg(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                 const ScalarFunction& f, const ScalarFunction& g, const ProductPlan& plan,
                                 const CheckParams& params) {
  validate_params("eq7", params);
  return offdiag_core("eq7", space, b, c, f, g, plan, params, params.p, params.q, 1.0);
}

InequalityCheck check_offdiag_power(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                    const ProductPlan& plan, const CheckParams& params) {
  validate_params("eq7cor", params);
  CheckParams fixed = with_conjugate(params, 2.0);
  // 1/2 f^{2r}(.) + 1/2 g^{2r}(.), reported with the 1/2 pulled out
  return offdiag_core("eq7cor", space, b, c, ScalarFunction::power(params.alpha),
                      ScalarFunction::power(1.0 - params.alpha), plan, fixed, 2.0, 2.0, 0.5);
}

InequalityCheck check_tuple_berp(const DirectSumSpace& space, std::span<const std::pair<Matrix, Matrix>> pairs,
                                 const ProductPlan& plan, const CheckParams& params) {
  validate_params("tuple_berp", params);
  if (pairs.empty()) throw Error(ErrorKind::BadParams, "no operator pairs");
  const double p = params.p;
  const double al = params.alpha;
  Matrix m1(space.first_dim(), space.first_dim());
  Matrix m2(space.second_dim(), space.second_dim());
  double scale = 0.0;
  std::vector<Matrix> operators;
  for (const auto& [b, c] : pairs) {
    require_offdiag(space, b, c);
    m1 += al * power_psd(adjoint(c) * c, p / 2.0) + (1.0 - al) * power_psd(b * adjoint(b), p / 2.0);
    m2 += al * power_psd(adjoint(b) * b, p / 2.0) + (1.0 - al) * power_psd(c * adjoint(c), p / 2.0);
    scale = std::max({scale, spectral_norm(b), spectral_norm(c)});
    operators.push_back(b);
    operators.push_back(c);
  }

  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);
  std::vector<double> lhs(eval.pair_count(), 0.0);
  for (const auto& [b, c] : pairs) {
    const auto s = eval.symbols(BlockOperator::off_diagonal(b, c));
    for (std::size_t k = 0; k < s.size(); ++k) lhs[k] += std::pow(std::abs(s[k]), p);
  }
  return diag_bounded("tuple_berp", space, plan, sample, eval, lhs, m1, m2, 1.0, params,
                      std::pow(scale, p) * static_cast<double>(pairs.size()), std::move(operators));
}

InequalityCheck check_diag_prop(const DirectSumSpace& space, const Matrix& a, const Matrix& d,
                                const ProductPlan& plan, const CheckParams& params) {
  validate_params("eq14", params);
  require_shape(a, space.first_dim(), space.first_dim(), "A");
  require_shape(d, space.second_dim(), space.second_dim(), "D");
  const double r = params.r;
  const Matrix m1 = power_psd(adjoint(a) * a, r / 2.0) + power_psd(a * adjoint(a), r / 2.0);
  const Matrix m2 = power_psd(adjoint(d) * d, r / 2.0) + power_psd(d * adjoint(d), r / 2.0);

  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);
  const auto lhs = abs_pow(eval.diagonal_symbols(a, d), r);
  const double scale = std::pow(std::max(spectral_norm(a), spectral_norm(d)), r);
  return diag_bounded("eq14", space, plan, sample, eval, lhs, m1, m2, 0.5, params, scale, {a, d});
}

InequalityCheck check_full_matrix_cor(const DirectSumSpace& space, const BlockOperator& t, const ProductPlan& plan,
                                      const CheckParams& params) {
  validate_params("full_cor", params);
  const std::size_t n1 = space.first_dim();
  const std::size_t n2 = space.second_dim();
  require_shape(t.a, n1, n1, "A");
  require_shape(t.b, n1, n2, "B");
  require_shape(t.c, n2, n1, "C");
  require_shape(t.d, n2, n2, "D");

  const Matrix p1 = abs_op(t.c) + abs_op(adjoint(t.b));
  const Matrix p2 = abs_op(t.b) + abs_op(adjoint(t.c));
  const Matrix q1 = abs_op(t.a) + abs_op(adjoint(t.a));
  const Matrix q2 = abs_op(t.d) + abs_op(adjoint(t.d));

  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);
  const auto sym = eval.symbols(t);
  std::vector<double> lhs(sym.size());
  for (std::size_t k = 0; k < sym.size(); ++k) lhs[k] = std::abs(sym[k]);
  const auto off = diag_values(eval, p1, p2);
  const auto on = diag_values(eval, q1, q2);
  std::vector<double> rhs(lhs.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = 0.5 * (off[k] + on[k]);

  std::size_t arg = 0;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    if (lhs[k] > lhs[arg]) arg = k;
  const double lhs_sup = lhs[arg];
  const double rhs_pairs = max_of(rhs);

  const bool symmetric = n1 == n2 && t.c == t.b && t.d == t.a && sample.first == sample.second;

  ComponentBer ber1(space.first(), eval.first_table(), plan.first);
  ComponentBer ber2(space.second(), eval.second_table(), plan.second);
  double general = 0.0;
  auto links_now = [&] {
    general = 0.5 * std::max(ber1(p1), ber2(p2)) + 0.5 * std::max(ber1(q1), ber2(q2));
    std::vector<Link> links{{lhs_sup, rhs_pairs}, {rhs_pairs, general}};
    if (symmetric) {
      const double special = 0.5 * (ber1(abs_op(t.a) + abs_op(adjoint(t.a))) + ber1(abs_op(t.b) + abs_op(adjoint(t.b))));
      links.push_back({general, special});
    }
    return links;
  };
  std::vector<Link> links = links_now();
  double scale = 0.0;
  for (const Matrix* m : {&t.a, &t.b, &t.c, &t.d}) scale = std::max(scale, spectral_norm(*m));
  int rounds = 0;
  while (rounds < kSuspectRounds && violated(links, params, scale)) {
    ++rounds;
    const bool grew = ber1.extend(rounds) | ber2.extend(rounds);
    if (!grew) break;
    links = links_now();
  }

  InequalityCheck check;
  check.check_id = "full_cor";
  check.params = params;
  check.robustness = Robustness::SupEstimated;
  settle(check, scale, std::nullopt, links);
  check.witness = {{t.a, t.b, t.c, t.d}, sample.pair_point(arg)};
  check.notes["symmetric"] = symmetric ? 1.0 : 0.0;
  check.notes["general_rhs"] = general;
  check.notes["worst_pair_slack"] = worst_gap(lhs, rhs).slack;
  if (rounds > 0) check.notes["suspect_rounds"] = rounds;
  return check;
}

}  // namespace berezin
