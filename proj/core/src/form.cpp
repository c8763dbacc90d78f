#include "form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace berezin::detail {

namespace {

struct PointStore {
  std::vector<Point> points;
  std::vector<double> values;  // row-major, terms per point
  std::vector<bool> rhs_only;
  std::size_t width;

  explicit PointStore(std::size_t w) : width(w) {}

  std::size_t size() const { return points.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * width, width}; }

  void add(const Point& p, const Vector& u, const PointForm& form, bool extra) {
    const std::size_t at = values.size();
    values.resize(at + width);
    form.evaluate(u, std::span<double>(values.data() + at, width));
    points.push_back(p);
    rhs_only.push_back(extra);
  }
};

bool has_pointwise(const PointForm& form) { return form.point_lhs && form.point_rhs; }

double sign_for(Aggregate a) { return a == Aggregate::Max ? 1.0 : -1.0; }

// Runs the simplex from the best `starts` points of `score` and appends the
// optima to the store.
void polish(const KernelSpace& space, const PointForm& form, PointStore& store, const RefineConfig& refine,
            std::size_t grid_count, const std::function<double(std::span<const double>)>& score,
            bool extra) {
  std::vector<double> scores(store.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.rhs_only[i] && !extra) continue;
    scores[i] = score(store.row(i));
  }
  const auto starts = top_indices(scores, refine.starts);
  std::vector<double> scratch(store.width);
  auto objective = [&](Complex z) {
    form.evaluate(space.normalized_kernel_at(z), scratch);
    return score(scratch);
  };
  const double step = simplex_step_for(space.radius(), grid_count);
  std::vector<Complex> found;
  for (std::size_t idx : starts) {
    const Complex start = std::get<Complex>(store.points[idx]);
    found.push_back(
        simplex_maximize(objective, start, space.radius(), step, refine.iterations, refine.tolerance).point);
  }
  for (const auto& z : found) store.add(z, space.normalized_kernel_at(z), form, extra);
}

void aggregate(const PointForm& form, const PointStore& store, FormOutcome& out) {
  const std::size_t w = store.width;
  out.aggregates.assign(w, 0.0);
  for (std::size_t t = 0; t < w; ++t) {
    const bool is_max = form.terms[t].aggregate == Aggregate::Max;
    double acc = is_max ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (store.rhs_only[i] && form.terms[t].side == Side::Lhs) continue;
      const double v = store.row(i)[t];
      acc = is_max ? std::max(acc, v) : std::min(acc, v);
    }
    out.aggregates[t] = acc;
  }
  out.links = form.chain(out.aggregates);

  if (has_pointwise(form)) {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t i = 0; i < store.size(); ++i) {
      const auto row = store.row(i);
      const double s = form.point_rhs(row) - form.point_lhs(row);
      if (s < worst) {
        worst = s;
        at = i;
      }
    }
    out.worst_pointwise = worst;
    out.location = store.points[at];
  } else {
    std::size_t at = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (store.rhs_only[i]) continue;
      if (store.row(i)[0] > best) {
        best = store.row(i)[0];
        at = i;
      }
    }
    out.location = store.points[at];
  }
}

bool sup_violated(const FormOutcome& out, const CheckParams& params, double input_scale) {
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& l : out.links) slack = std::min(slack, l.rhs - l.lhs);
  const double scale = std::max({1.0, input_scale, std::abs(out.links.back().rhs)});
  return slack < -params.tolerance * scale;
}

}  // namespace

double real_form(const Matrix& m, const Vector& u) { return quadratic_form(m, u).real(); }
double abs_form(const Matrix& m, const Vector& u) { return std::abs(quadratic_form(m, u)); }

FormOutcome run_form(const KernelSpace& space, const PointForm& form, const SamplePlan& plan,
                     const RefineConfig& refine, const CheckParams& params, Robustness robustness,
                     double input_scale) {
  PointStore store(form.terms.size());
  {
    const auto pts = sample_domain(space, plan);
    const KernelTable table(space, pts);
    for (std::size_t i = 0; i < table.size(); ++i) store.add(table.point(i), table.kernel(i), form, false);
  }
  const bool refine_here = refine.enabled && space.is_disk() && refine.starts > 0;
  if (refine_here) {
    if (has_pointwise(form)) {
      polish(space, form, store, refine, plan.count,
             [&](std::span<const double> v) { return form.point_lhs(v) - form.point_rhs(v); }, false);
    }
    for (std::size_t t = 0; t < form.terms.size(); ++t) {
      if (form.terms[t].side != Side::Lhs) continue;
      const double sgn = sign_for(form.terms[t].aggregate);
      polish(space, form, store, refine, plan.count, [t, sgn](std::span<const double> v) { return sgn * v[t]; },
             false);
    }
  }

  FormOutcome out;
  aggregate(form, store, out);

  const bool sup_active = params.mode != CheckMode::Pointwise || !has_pointwise(form) ||
                          robustness == Robustness::SupEstimated;
  if (!sup_active || !space.is_disk()) return out;

  for (int k = 1; k <= kSuspectRounds && sup_violated(out, params, input_scale); ++k) {
    SamplePlan bigger = plan;
    bigger.count = plan.count << k;
    bigger.seed = plan.seed + static_cast<std::uint64_t>(k);
    const auto pts = sample_domain(space, bigger);
    const KernelTable table(space, pts);
    for (std::size_t i = 0; i < table.size(); ++i) store.add(table.point(i), table.kernel(i), form, true);
    if (refine_here) {
      for (std::size_t t = 0; t < form.terms.size(); ++t) {
        if (form.terms[t].side != Side::Rhs) continue;
        const double sgn = sign_for(form.terms[t].aggregate);
        polish(space, form, store, refine, bigger.count,
               [t, sgn](std::span<const double> v) { return sgn * v[t]; }, true);
      }
    }
    aggregate(form, store, out);
    out.extra_rounds = k;
  }
  return out;
}

}  // namespace berezin::detail
