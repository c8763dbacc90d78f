#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/blocks.hpp"
#include "berezin/check.hpp"
#include "berezin/config.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/operators.hpp"
#include "berezin/report.hpp"

namespace berezin {

enum class CheckDomain { Single, Product, Scalar };

struct CheckerInfo {
  std::string id;
  std::string statement;
  std::string hypotheses;
  Robustness robustness;
  CheckDomain domain;
  bool uses_alpha = false;
  bool uses_r = false;
  bool uses_p = false;
};

/// Every registered check, in report order.
const std::vector<CheckerInfo>& checker_catalog();
/// Throws UnknownChecker.
const CheckerInfo& checker_info(std::string_view id);
std::vector<std::string> all_check_ids();

/// Parameter combinations from the config grid that satisfy the check's
/// hypotheses. Throws BadConfig if none do.
std::vector<CheckParams> parameter_grid(std::string_view id, const TrialConfig& config);

/// 64-bit mix of (master seed, check id, family, dim, trial index).
std::uint64_t trial_seed(std::uint64_t master, std::string_view id, SpaceFamily family, std::size_t dim,
                         std::size_t index);

/// Everything needed to rerun one trial.
struct Instance {
  std::string check_id;
  SpaceFamily family = SpaceFamily::Hardy;
  std::size_t dim = 2;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  CheckParams params;
  /// commutator: sign; full_cor: 1 for the [[A, B], [B, A]] shape
  int variant = 0;
  std::vector<OperatorRecipe> recipes;
  std::vector<OperatorDraw> draws;
  std::optional<KernelSpace> space;
  std::optional<DirectSumSpace> pair_space;
  SamplePlan plan;
  ProductPlan product_plan;
};

Instance make_instance(std::string_view id, const TrialConfig& config, SpaceFamily family, std::size_t dim,
                       std::size_t index);

std::vector<Matrix> realize_all(const Instance& instance);
InequalityCheck evaluate(const Instance& instance, const TrialConfig& config);

/// Runs config.trials trials of every listed check for every family and
/// dimension. Results do not depend on config.jobs.
Report run_suite(const TrialConfig& config, const std::vector<std::string>& check_ids);

struct SharpnessResult {
  std::string check_id;
  std::vector<double> trajectory;  // best ratio after each step
  double best_ratio = 0.0;
  InequalityCheck best;
  std::vector<Matrix> witness;
};

/// Hill climbing on lhs/rhs from the first trial of the first family and
/// dimension: Gaussian perturbations of the raw draws, step halved after 10
/// consecutive non-improvements.
SharpnessResult sharpness_search(std::string_view id, const TrialConfig& config, int steps);

}  // namespace berezin
