#include "berezin/check.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

namespace berezin {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 29;
  return h;
}

}  // namespace

double InequalityCheck::ratio() const noexcept {
  const double tol = abs_tolerance();
  if (rhs > 1e-12 * scale) return lhs / rhs;
  if (lhs <= tol) return 0.0;
  return std::numeric_limits<double>::max();
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Suspect: return "SUSPECT";
    case Status::Fail: return "FAIL";
  }
  return "?";
}

std::string_view to_string(Robustness robustness) noexcept {
  return robustness == Robustness::PointwiseRobust ? "pointwise-robust" : "sup-estimated";
}

std::string_view to_string(CheckMode mode) noexcept {
  switch (mode) {
    case CheckMode::Pointwise: return "pointwise";
    case CheckMode::Sup: return "sup";
    case CheckMode::Both: return "both";
  }
  return "?";
}

std::string to_string(const Location& location) {
  if (const auto* p = std::get_if<Point>(&location)) return to_string(*p);
  if (const auto* pp = std::get_if<ProductPoint>(&location)) {
    return "(" + to_string(pp->first) + "," + to_string(pp->second) + ")";
  }
  return "-";
}

void settle(InequalityCheck& check, double input_scale, std::optional<double> worst_pointwise,
            std::span<const Link> links) {
  check.lhs = links.front().lhs;
  check.rhs = links.back().rhs;
  check.slack = std::numeric_limits<double>::infinity();
  for (const auto& link : links) check.slack = std::min(check.slack, link.rhs - link.lhs);
  check.worst_pointwise_slack = worst_pointwise.value_or(check.slack);
  check.scale = std::max({1.0, input_scale, std::abs(check.rhs)});

  const double tol = check.abs_tolerance();
  const CheckMode mode = check.params.mode;
  const bool pointwise_active = worst_pointwise.has_value() && mode != CheckMode::Sup &&
                                check.robustness == Robustness::PointwiseRobust;
  const bool sup_active = mode != CheckMode::Pointwise || !worst_pointwise.has_value();

  if (pointwise_active && *worst_pointwise < -tol) {
    check.status = Status::Fail;
  } else if (sup_active && check.slack < -tol) {
    check.status = Status::Suspect;
  } else {
    check.status = Status::Pass;
  }
}

std::string witness_digest(const Witness& witness) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const auto& op : witness.operators) {
    h = mix(h, op.rows());
    h = mix(h, op.cols());
    for (const auto& e : op.entries()) {
      h = mix(h, std::bit_cast<std::uint64_t>(e.real()));
      h = mix(h, std::bit_cast<std::uint64_t>(e.imag()));
    }
  }
  for (char c : to_string(witness.location)) h = mix(h, static_cast<unsigned char>(c));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace berezin
