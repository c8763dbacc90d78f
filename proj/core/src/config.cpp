#include "berezin/config.hpp"

#include <string>

#include "berezin/error.hpp"

namespace berezin {

std::string_view to_string(SpaceFamily family) noexcept {
  switch (family) {
    case SpaceFamily::Hardy: return "hardy";
    case SpaceFamily::Bergman: return "bergman";
    case SpaceFamily::Discrete: return "discrete";
    case SpaceFamily::Orthonormal: return "orthonormal";
  }
  return "?";
}

SpaceFamily space_family_from_string(std::string_view name) {
  for (auto f : {SpaceFamily::Hardy, SpaceFamily::Bergman, SpaceFamily::Discrete, SpaceFamily::Orthonormal}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorKind::BadConfig, "unknown space family '" + std::string(name) + "'");
}

void validate_config(const TrialConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::BadConfig, m); };
  if (c.families.empty()) fail("no space families");
  if (c.dims.empty()) fail("no dimensions");
  for (auto d : c.dims) {
    if (d < kMinDim || d > kMaxDim) fail("dimension " + std::to_string(d) + " outside [2, 32]");
  }
  if (c.trials == 0) fail("trials must be >= 1");
  if (c.samples == 0) fail("samples must be >= 1");
  if (!(c.tolerance > 0.0)) fail("tolerance must be positive");
  if (!(c.radius > 0.0 && c.radius < 1.0)) fail("radius must lie in (0, 1)");
  if (c.max_pairs == 0) fail("max_pairs must be >= 1");
  if (c.grid.alphas.empty() || c.grid.rs.empty() || c.grid.ps.empty()) fail("empty parameter grid");
  for (double p : c.grid.ps) {
    if (!(p > 1.0)) fail("grid p values must exceed 1");
  }
}

}  // namespace berezin
