#pragma once

// Shared evaluation loop for single-space checkers.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/check.hpp"
#include "berezin/hilbert.hpp"

namespace berezin::detail {

enum class Side { Lhs, Rhs };
enum class Aggregate { Max, Min };

struct Term {
  Side side = Side::Lhs;
  Aggregate aggregate = Aggregate::Max;
};

/// Per-lambda scalar terms plus the ways of combining them. Pointwise
/// lhs/rhs are optional; `chain` maps the aggregated terms to the links of
/// the supremum-level statement.
struct PointForm {
  std::vector<Term> terms;
  std::function<void(const Vector& unit_kernel, std::span<double> out)> evaluate;
  std::function<double(std::span<const double>)> point_lhs;
  std::function<double(std::span<const double>)> point_rhs;
  std::function<std::vector<Link>(std::span<const double>)> chain;
};

struct FormOutcome {
  std::vector<double> aggregates;
  std::optional<double> worst_pointwise;
  Point location = Complex{};
  std::vector<Link> links;
  int extra_rounds = 0;
};

inline constexpr int kSuspectRounds = 3;

/// Samples, refines and aggregates. Left-hand terms are aggregated over the
/// original sample set and its refinements; right-hand terms additionally
/// see the points added by the suspect protocol (doubling the sample count
/// up to kSuspectRounds times).
FormOutcome run_form(const KernelSpace& space, const PointForm& form, const SamplePlan& plan,
                     const RefineConfig& refine, const CheckParams& params, Robustness robustness,
                     double input_scale);

double real_form(const Matrix& m, const Vector& u);
double abs_form(const Matrix& m, const Vector& u);

}  // namespace berezin::detail
