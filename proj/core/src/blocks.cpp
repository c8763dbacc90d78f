#include "berezin/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "berezin/error.hpp"
#include "berezin/linalg.hpp"

namespace berezin {

namespace {

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + ", expected " +
                                                  std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_fits(const DirectSumSpace& space, const BlockOperator& blk) {
  const std::size_t n1 = space.first_dim();
  const std::size_t n2 = space.second_dim();
  require_shape(blk.a, n1, n1, "A");
  require_shape(blk.b, n1, n2, "B");
  require_shape(blk.c, n2, n1, "C");
  require_shape(blk.d, n2, n2, "D");
}

bool is_zero(const Matrix& m) { return max_abs_entry(m) == 0.0; }

}  // namespace

DirectSumSpace::DirectSumSpace(KernelSpace first, KernelSpace second)
    : first_(std::move(first)), second_(std::move(second)) {}

BlockOperator BlockOperator::diagonal(Matrix a, Matrix d) {
  Matrix b(a.rows(), d.cols());
  Matrix c(d.rows(), a.cols());
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

BlockOperator BlockOperator::off_diagonal(Matrix b, Matrix c) {
  Matrix a(b.rows(), b.rows());
  Matrix d(c.rows(), c.rows());
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

Matrix assemble(const BlockOperator& blk) {
  const std::size_t n1 = blk.a.rows();
  const std::size_t n2 = blk.d.rows();
  require_shape(blk.a, n1, n1, "A");
  require_shape(blk.b, n1, n2, "B");
  require_shape(blk.c, n2, n1, "C");
  require_shape(blk.d, n2, n2, "D");
  Matrix out(n1 + n2, n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) out(i, j) = blk.a(i, j);
    for (std::size_t j = 0; j < n2; ++j) out(i, n1 + j) = blk.b(i, j);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n1; ++j) out(n1 + i, j) = blk.c(i, j);
    for (std::size_t j = 0; j < n2; ++j) out(n1 + i, n1 + j) = blk.d(i, j);
  }
  return out;
}

BlockOperator split(const Matrix& m, std::size_t first_dim) {
  if (!m.is_square() || first_dim == 0 || first_dim >= m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "split needs a square matrix and 0 < n1 < n");
  }
  const std::size_t n1 = first_dim;
  const std::size_t n2 = m.rows() - n1;
  BlockOperator blk{Matrix(n1, n1), Matrix(n1, n2), Matrix(n2, n1), Matrix(n2, n2)};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const bool top = i < n1;
      const bool left = j < n1;
      Matrix& target = top ? (left ? blk.a : blk.b) : (left ? blk.c : blk.d);
      target(top ? i : i - n1, left ? j : j - n1) = m(i, j);
    }
  }
  return blk;
}

DirectSumKernel direct_sum_kernel(const DirectSumSpace& space, const Point& first, const Point& second) {
  const Vector k1 = space.first().kernel_at(first);
  const Vector k2 = space.second().kernel_at(second);
  const double m1 = norm(k1) * norm(k1);
  const double m2 = norm(k2) * norm(k2);
  const double total = std::sqrt(m1 + m2);
  if (!(total > kDefaultKernelEps)) {
    throw Error(ErrorKind::DegenerateKernel, "direct-sum kernel vanishes");
  }
  Vector unit;
  unit.reserve(k1.size() + k2.size());
  for (const auto& e : k1) unit.push_back(e / total);
  for (const auto& e : k2) unit.push_back(e / total);
  return {std::move(unit), m1 / (m1 + m2)};
}

ProductPlan default_product_plan(const DirectSumSpace& space, std::size_t count, std::uint64_t seed) {
  ProductPlan plan;
  plan.first = default_plan(space.first(), count, seed);
  plan.second = default_plan(space.second(), count, seed + 1);
  plan.seed = seed + 2;
  return plan;
}

ProductSample sample_product_domain(const DirectSumSpace& space, const ProductPlan& plan) {
  if (plan.max_pairs == 0) throw Error(ErrorKind::InvalidPlan, "max_pairs must be >= 1");
  ProductSample out;
  out.first = sample_domain(space.first(), plan.first);
  out.second = sample_domain(space.second(), plan.second);
  const std::size_t n1 = out.first.size();
  const std::size_t n2 = out.second.size();
  if (n1 * n2 <= plan.max_pairs) {
    out.pairs.reserve(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) out.pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(plan.seed);
    std::uniform_int_distribution<std::size_t> pick1(0, n1 - 1);
    std::uniform_int_distribution<std::size_t> pick2(0, n2 - 1);
    out.pairs.reserve(plan.max_pairs);
    for (std::size_t k = 0; k < plan.max_pairs; ++k) {
      const std::size_t i = pick1(rng);
      out.pairs.emplace_back(i, pick2(rng));
    }
  }
  return out;
}

ProductEvaluator::ProductEvaluator(const DirectSumSpace& space, const ProductSample& sample)
    : first_(space.first(), sample.first), second_(space.second(), sample.second), pairs_(sample.pairs) {
  mass_.reserve(pairs_.size());
  for (const auto& [i, j] : pairs_) {
    const double m1 = first_.kernel_norm(i) * first_.kernel_norm(i);
    const double m2 = second_.kernel_norm(j) * second_.kernel_norm(j);
    mass_.push_back(m1 / (m1 + m2));
  }
}

ProductPoint ProductEvaluator::pair_point(std::size_t k) const {
  return {first_.point(pairs_[k].first), second_.point(pairs_[k].second)};
}

std::vector<Complex> ProductEvaluator::diagonal_symbols(const Matrix& p, const Matrix& q) const {
  const auto sp = first_.symbols(p);
  const auto sq = second_.symbols(q);
  std::vector<Complex> out(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const double t = mass_[k];
    out[k] = t * sp[pairs_[k].first] + (1.0 - t) * sq[pairs_[k].second];
  }
  return out;
}

std::vector<Complex> ProductEvaluator::symbols(const BlockOperator& blk) const {
  std::vector<Complex> out = diagonal_symbols(blk.a, blk.d);
  if (is_zero(blk.b) && is_zero(blk.c)) return out;

  const Matrix c_adj = adjoint(blk.c);
  std::vector<Vector> b_u2(second_.size());
  std::vector<Vector> cadj_u2(second_.size());
  for (std::size_t j = 0; j < second_.size(); ++j) {
    b_u2[j] = blk.b * second_.kernel(j);
    cadj_u2[j] = c_adj * second_.kernel(j);
  }
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const auto [i, j] = pairs_[k];
    const Vector& u1 = first_.kernel(i);
    const Complex cross = inner(b_u2[j], u1) + std::conj(inner(cadj_u2[j], u1));
    const double t = mass_[k];
    out[k] += std::sqrt(t * (1.0 - t)) * cross;
  }
  return out;
}

InequalityCheck check_block_diag_bound(const DirectSumSpace& space, const Matrix& a, const Matrix& d,
                                       const ProductPlan& plan, const CheckParams& params) {
  const BlockOperator blk = BlockOperator::diagonal(a, d);
  require_fits(space, blk);
  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);

  const auto sa = eval.first_table().symbols(a);
  const auto sd = eval.second_table().symbols(d);
  const auto st = eval.diagonal_symbols(a, d);

  double lhs = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_at = 0;
  for (std::size_t k = 0; k < eval.pair_count(); ++k) {
    const auto [i, j] = sample.pairs[k];
    const double value = std::abs(st[k]);
    const double bound = std::max(std::abs(sa[i]), std::abs(sd[j]));
    lhs = std::max(lhs, value);
    if (bound - value < worst) {
      worst = bound - value;
      worst_at = k;
    }
  }
  double ber_a = 0.0;
  for (const auto& s : sa) ber_a = std::max(ber_a, std::abs(s));
  double ber_d = 0.0;
  for (const auto& s : sd) ber_d = std::max(ber_d, std::abs(s));

  InequalityCheck check;
  check.check_id = "lemma9a";
  check.params = params;
  check.robustness = Robustness::PointwiseRobust;
  check.notes["ber_first"] = ber_a;
  check.notes["ber_second"] = ber_d;
  const Link links[] = {{lhs, std::max(ber_a, ber_d)}};
  settle(check, std::max(spectral_norm(a), spectral_norm(d)), worst, links);
  check.witness = {{a, d}, eval.pair_point(worst_at)};
  return check;
}

InequalityCheck check_block_offdiag_bound(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                          const ProductPlan& plan, const CheckParams& params) {
  const BlockOperator blk = BlockOperator::off_diagonal(b, c);
  require_fits(space, blk);
  const ProductSample sample = sample_product_domain(space, plan);
  const ProductEvaluator eval(space, sample);
  const auto st = eval.symbols(blk);

  const double norm_b = spectral_norm(b);
  const double norm_c = spectral_norm(c);
  const double bound = 0.5 * (norm_b + norm_c);

  double lhs = 0.0;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (std::abs(st[k]) > lhs) {
      lhs = std::abs(st[k]);
      arg = k;
    }
  }

  InequalityCheck check;
  check.check_id = "lemma9b";
  check.params = params;
  check.robustness = Robustness::PointwiseRobust;
  const Link links[] = {{lhs, bound}};
  settle(check, std::max(norm_b, norm_c), bound - lhs, links);
  check.witness = {{b, c}, eval.pair_point(arg)};
  return check;
}

}  // namespace berezin
