#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "berezin/config.hpp"

namespace berezin {

struct CheckAggregate {
  std::size_t trials = 0;
  std::size_t pass = 0;
  std::size_t suspect = 0;
  /// includes `errors`
  std::size_t fail = 0;
  /// trials that threw; counted as failures
  std::size_t errors = 0;
  /// min over trials of min(slack, worst pointwise slack)
  double min_slack = 0.0;
  double mean_slack = 0.0;
  double max_ratio = 0.0;
  /// witness of the trial with the largest ratio
  std::string witness_digest;
  /// heinz only: trials where the single-scaled reading of the final bound fails
  std::optional<std::size_t> literal_violations;

  bool operator==(const CheckAggregate&) const = default;
};

struct Report {
  std::string version;
  std::uint64_t seed = 0;
  TrialConfig config;
  std::map<std::string, CheckAggregate> checks;
  double wall_ms = 0.0;

  bool any_fail() const noexcept;
  bool any_suspect() const noexcept;
  /// 0 all pass, 2 some suspect, 1 some failure
  int exit_code() const noexcept;
};

/// Field-wise equality; `jobs` is not part of a report and is ignored.
bool same_content(const Report& a, const Report& b, bool compare_wall_time = true);

enum class ReportFormat { Json, CsvSummary };

std::string to_json(const Report& report);
std::string to_csv_summary(const Report& report);
Report report_from_json(const std::string& text);

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);
Report read_report(const std::filesystem::path& path);

}  // namespace berezin
