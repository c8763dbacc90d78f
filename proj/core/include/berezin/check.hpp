#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "berezin/hilbert.hpp"
#include "berezin/matrix.hpp"

namespace berezin {

enum class Status { Pass, Suspect, Fail };

/// Which forms a checker evaluates: the per-lambda inequality from the
/// proof, the published supremum-level statement, or both.
enum class CheckMode { Pointwise, Sup, Both };

/// PointwiseRobust checkers can only FAIL through a violated pointwise form,
/// which is sound under sampling. SupEstimated checkers compare sampled
/// suprema on both sides; they can be SUSPECT but never FAIL.
enum class Robustness { PointwiseRobust, SupEstimated };

struct CheckParams {
  double r = 1.0;
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.5;
  double tolerance = 1e-9;
  CheckMode mode = CheckMode::Both;
};

using Location = std::variant<std::monostate, Point, ProductPoint>;

struct Witness {
  std::vector<Matrix> operators;
  Location location;
};

/// One comparison lhs <= rhs inside a chain of inequalities.
struct Link {
  double lhs;
  double rhs;
};

struct InequalityCheck {
  std::string check_id;
  CheckParams params;
  Robustness robustness = Robustness::PointwiseRobust;
  /// Left side of the first link and right side of the last link of the
  /// published (supremum-level) chain.
  double lhs = 0.0;
  double rhs = 0.0;
  /// Smallest rhs - lhs over the links of the chain.
  double slack = 0.0;
  /// Smallest pointwise rhs(lambda) - lhs(lambda); equals `slack` for
  /// checkers without a pointwise form.
  double worst_pointwise_slack = 0.0;
  /// Tolerances are params.tolerance * scale.
  double scale = 1.0;
  Status status = Status::Pass;
  Witness witness;
  /// Auxiliary readings that are recorded but never asserted.
  std::map<std::string, double> notes;

  double abs_tolerance() const noexcept { return params.tolerance * scale; }
  /// lhs / rhs; zero when both sides vanish within tolerance.
  double ratio() const noexcept;
};

std::string_view to_string(Status status) noexcept;
std::string_view to_string(Robustness robustness) noexcept;
std::string_view to_string(CheckMode mode) noexcept;
std::string to_string(const Location& location);

/// Fills lhs/rhs/slack/scale/status from the chain links and the worst
/// pointwise slack (if the checker has a pointwise form).
void settle(InequalityCheck& check, double input_scale, std::optional<double> worst_pointwise,
            std::span<const Link> links);

/// 16 hex digits identifying the witness operators and location.
std::string witness_digest(const Witness& witness);

}  // namespace berezin
