#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/operators.hpp"

namespace berezin {

/// hardy, bergman: truncated spaces on the disk of radius `radius`.
/// discrete: 2 * dim points with a random rank-dim Gram matrix.
/// orthonormal: dim points with K = I.
enum class SpaceFamily { Hardy, Bergman, Discrete, Orthonormal };

std::string_view to_string(SpaceFamily family) noexcept;
SpaceFamily space_family_from_string(std::string_view name);

struct ParamGrid {
  std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> rs{1.0, 1.5, 2.0, 3.0};
  /// q is always p / (p - 1)
  std::vector<double> ps{2.0, 3.0, 4.0, 1.5};

  bool operator==(const ParamGrid&) const = default;
};

inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 32;

struct TrialConfig {
  std::vector<SpaceFamily> families{SpaceFamily::Hardy, SpaceFamily::Discrete};
  std::vector<std::size_t> dims{2, 3, 4, 8};
  /// per checker, per family and per dimension
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  ParamGrid grid;
  double tolerance = 1e-9;
  std::size_t samples = 400;
  double radius = kDefaultDiskRadius;
  RefineConfig refine;
  std::size_t max_pairs = 4096;
  /// replaces the kind of every "general" operator slot
  std::optional<OperatorKind> kind_override;
  /// worker threads; does not affect results
  unsigned jobs = 1;
};

/// Throws BadConfig on empty lists, dims outside [kMinDim, kMaxDim],
/// trials == 0 and similar.
void validate_config(const TrialConfig& config);

}  // namespace berezin
