#include "berezin/berezin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "berezin/error.hpp"

namespace berezin {

namespace {

void require_operator_fits(const KernelSpace& space, const Matrix& a) {
  if (!a.is_square() || a.rows() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " but the space has dimension " + std::to_string(space.dim()));
  }
}

Complex project_to_disk(Complex z, double radius) {
  const double r = std::abs(z);
  if (r <= radius) return z;
  z *= radius / r;
  while (std::abs(z) > radius) z *= std::nextafter(1.0, 0.0);
  return z;
}

// Shared driver for ber and ber_p: `pointwise` maps a unit kernel to the
// nonnegative quantity whose supremum is estimated.
BerezinEstimate estimate_sup(const KernelSpace& space, const SamplePlan& plan,
                             const RefineConfig& refine,
                             const std::function<double(const Vector&)>& pointwise) {
  const auto points = sample_domain(space, plan);
  std::vector<double> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = pointwise(space.normalized_kernel_at(points[i]));

  BerezinEstimate est;
  est.plan = plan;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  est.value = values[best];
  est.argmax = points[best];

  std::vector<std::pair<Point, double>> kept;
  if (refine.keep_pointwise) {
    kept.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) kept.emplace_back(points[i], values[i]);
  }

  if (refine.enabled && space.is_disk() && refine.iterations > 0) {
    const double radius = space.radius();
    const double step = simplex_step_for(radius, points.size());
    const auto objective = [&](Complex z) { return pointwise(space.normalized_kernel_at(z)); };
    for (std::size_t idx : top_indices(values, refine.starts)) {
      const auto res = simplex_maximize(objective, std::get<Complex>(points[idx]), radius, step,
                                        refine.iterations, refine.tolerance);
      if (refine.keep_pointwise) kept.emplace_back(res.point, res.value);
      if (res.value > est.value) {
        est.value = res.value;
        est.argmax = res.point;
        est.refined = true;
      }
    }
  }
  if (refine.keep_pointwise) est.pointwise_values = std::move(kept);
  return est;
}

}  // namespace

Complex symbol_at(const Matrix& a, const Vector& unit_kernel) { return quadratic_form(a, unit_kernel); }

Complex symbol(const KernelSpace& space, const Matrix& a, const Point& lambda) {
  require_operator_fits(space, a);
  return symbol_at(a, space.normalized_kernel_at(lambda));
}

BerezinSetSample berezin_set(const KernelSpace& space, const Matrix& a, const SamplePlan& plan) {
  require_operator_fits(space, a);
  const auto points = sample_domain(space, plan);
  BerezinSetSample out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p, symbol_at(a, space.normalized_kernel_at(p))});
  return out;
}

BerezinEstimate berezin_number(const KernelSpace& space, const Matrix& a, const SamplePlan& plan,
                               const RefineConfig& refine) {
  require_operator_fits(space, a);
  return estimate_sup(space, plan, refine, [&](const Vector& k) { return std::abs(symbol_at(a, k)); });
}

BerezinEstimate euclidean_berezin(const KernelSpace& space, std::span<const Matrix> ops, double p,
                                  const SamplePlan& plan, const RefineConfig& refine) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::BadExponent, "ber_p needs finite p >= 1");
  if (ops.empty()) throw Error(ErrorKind::BadParams, "ber_p needs at least one operator");
  for (const auto& op : ops) require_operator_fits(space, op);
  return estimate_sup(space, plan, refine, [&](const Vector& k) {
    double acc = 0.0;
    for (const auto& op : ops) acc += std::pow(std::abs(symbol_at(op, k)), p);
    return std::pow(acc, 1.0 / p);
  });
}

KernelTable::KernelTable(const KernelSpace& space, std::vector<Point> points) {
  points_.reserve(points.size());
  kernels_.reserve(points.size());
  norms_.reserve(points.size());
  for (const auto& p : points) append(space, p);
}

void KernelTable::append(const KernelSpace& space, const Point& lambda) {
  const Vector raw = space.kernel_at(lambda);
  kernels_.push_back(space.normalized_kernel_at(lambda));
  norms_.push_back(norm(raw));
  points_.push_back(lambda);
}

std::vector<Complex> KernelTable::symbols(const Matrix& a) const {
  std::vector<Complex> out(kernels_.size());
  for (std::size_t i = 0; i < kernels_.size(); ++i) out[i] = symbol_at(a, kernels_[i]);
  return out;
}

std::pair<double, std::size_t> KernelTable::max_abs_symbol(const Matrix& a) const {
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < kernels_.size(); ++i) {
    const double v = std::abs(symbol_at(a, kernels_[i]));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  return {std::max(best, 0.0), arg};
}

double simplex_step_for(double radius, std::size_t count) {
  const double spacing = 2.0 * radius / std::sqrt(static_cast<double>(std::max<std::size_t>(count, 1)));
  return std::clamp(spacing, 1e-3, 0.2 * radius);
}

SimplexResult simplex_maximize(const std::function<double(Complex)>& objective, Complex start,
                               double radius, double initial_step, int iterations, double tolerance) {
  struct Vertex {
    Complex z;
    double f;
  };
  auto eval = [&](Complex z) {
    z = project_to_disk(z, radius);
    return Vertex{z, objective(z)};
  };

  std::array<Vertex, 3> s{eval(start), eval(start + initial_step),
                          eval(start + Complex(0.0, initial_step))};
  auto sort_desc = [&] { std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; }); };
  sort_desc();

  for (int it = 0; it < iterations; ++it) {
    if (std::abs(s[0].f - s[2].f) <= tolerance * std::max(1.0, std::abs(s[0].f))) break;
    const Complex centroid = 0.5 * (s[0].z + s[1].z);
    const Vertex reflected = eval(centroid + (centroid - s[2].z));
    if (reflected.f > s[0].f) {
      const Vertex expanded = eval(centroid + 2.0 * (centroid - s[2].z));
      s[2] = expanded.f > reflected.f ? expanded : reflected;
    } else if (reflected.f > s[1].f) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.f > s[2].f;
      const Vertex contracted =
          outside ? eval(centroid + 0.5 * (reflected.z - centroid)) : eval(centroid + 0.5 * (s[2].z - centroid));
      if (contracted.f > std::max(outside ? reflected.f : s[2].f, s[2].f)) {
        s[2] = contracted;
      } else {
        s[1] = eval(s[0].z + 0.5 * (s[1].z - s[0].z));
        s[2] = eval(s[0].z + 0.5 * (s[2].z - s[0].z));
      }
    }
    sort_desc();
  }
  return {s[0].z, s[0].f};
}

std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
  idx.resize(k);
  return idx;
}

}  // namespace berezin
