#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "berezin/hilbert.hpp"
#include "berezin/matrix.hpp"

namespace berezin {

/// Local polish of grid maxima on disk domains: a Nelder-Mead simplex in
/// (Re lambda, Im lambda) started from the `starts` best grid points,
/// projected back into the disk after every move.
struct RefineConfig {
  bool enabled = true;
  std::size_t starts = 5;
  int iterations = 50;
  double tolerance = 1e-10;
  bool keep_pointwise = false;
};

/// A lower bound on ber(A) = sup |A~(lambda)|, realised at `argmax`.
struct BerezinEstimate {
  double value = 0.0;
  Point argmax = Complex{};
  SamplePlan plan;
  bool refined = false;
  std::optional<std::vector<std::pair<Point, double>>> pointwise_values;
};

struct SymbolSample {
  Point point;
  Complex value;
};
using BerezinSetSample = std::vector<SymbolSample>;

/// <A k, k> for a unit kernel vector.
Complex symbol_at(const Matrix& a, const Vector& unit_kernel);

/// A~(lambda) = <A k^_lambda, k^_lambda>.
Complex symbol(const KernelSpace& space, const Matrix& a, const Point& lambda);

BerezinSetSample berezin_set(const KernelSpace& space, const Matrix& a, const SamplePlan& plan);

BerezinEstimate berezin_number(const KernelSpace& space, const Matrix& a, const SamplePlan& plan,
                               const RefineConfig& refine = {});

/// ber_p(T_1, ..., T_k) = sup_lambda (sum_i |T_i~(lambda)|^p)^{1/p}, p >= 1.
BerezinEstimate euclidean_berezin(const KernelSpace& space, std::span<const Matrix> ops, double p,
                                  const SamplePlan& plan, const RefineConfig& refine = {});

/// Normalized kernels at a fixed list of points, kept for repeated
/// evaluation of many symbols on identical samples.
class KernelTable {
 public:
  KernelTable(const KernelSpace& space, std::vector<Point> points);

  void append(const KernelSpace& space, const Point& lambda);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const Vector& kernel(std::size_t i) const { return kernels_[i]; }
  /// ||k_lambda|| before normalization.
  double kernel_norm(std::size_t i) const { return norms_[i]; }

  std::vector<Complex> symbols(const Matrix& a) const;
  /// max_i |A~(lambda_i)|, first maximiser in point order.
  std::pair<double, std::size_t> max_abs_symbol(const Matrix& a) const;

 private:
  std::vector<Point> points_;
  std::vector<Vector> kernels_;
  std::vector<double> norms_;
};

/// Result of one simplex run.
struct SimplexResult {
  Complex point;
  double value;
};

/// Maximises `objective` over the closed disk of `radius` from `start`.
SimplexResult simplex_maximize(const std::function<double(Complex)>& objective, Complex start,
                               double radius, double initial_step, int iterations, double tolerance);

/// Initial simplex size matched to the spacing of a grid of `count` points.
double simplex_step_for(double radius, std::size_t count);

/// Indices of the k largest entries, ties broken by position.
std::vector<std::size_t> top_indices(std::span<const double> values, std::size_t k);

}  // namespace berezin
