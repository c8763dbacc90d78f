#include "berezin/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "berezin/error.hpp"

namespace berezin {

using nlohmann::json;

namespace {

json config_echo(const TrialConfig& c) {
  json families = json::array();
  for (auto f : c.families) families.push_back(std::string(to_string(f)));
  json out;
  out["families"] = families;
  out["dims"] = c.dims;
  out["trials"] = c.trials;
  out["samples"] = c.samples;
  out["radius"] = c.radius;
  out["tolerance"] = c.tolerance;
  out["grid"] = {{"alphas", c.grid.alphas}, {"rs", c.grid.rs}, {"ps", c.grid.ps}};
  out["refine"] = {{"enabled", c.refine.enabled},
                   {"starts", c.refine.starts},
                   {"iterations", c.refine.iterations},
                   {"tolerance", c.refine.tolerance}};
  out["max_pairs"] = c.max_pairs;
  out["kind_override"] = c.kind_override ? json(std::string(to_string(*c.kind_override))) : json(nullptr);
  return out;
}

TrialConfig config_from(const json& j, std::uint64_t seed) {
  TrialConfig c;
  c.families.clear();
  for (const auto& f : j.at("families")) c.families.push_back(space_family_from_string(f.get<std::string>()));
  c.dims = j.at("dims").get<std::vector<std::size_t>>();
  c.trials = j.at("trials").get<std::size_t>();
  c.samples = j.at("samples").get<std::size_t>();
  c.radius = j.at("radius").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.grid.alphas = j.at("grid").at("alphas").get<std::vector<double>>();
  c.grid.rs = j.at("grid").at("rs").get<std::vector<double>>();
  c.grid.ps = j.at("grid").at("ps").get<std::vector<double>>();
  const json& rf = j.at("refine");
  c.refine.enabled = rf.at("enabled").get<bool>();
  c.refine.starts = rf.at("starts").get<std::size_t>();
  c.refine.iterations = rf.at("iterations").get<int>();
  c.refine.tolerance = rf.at("tolerance").get<double>();
  c.max_pairs = j.at("max_pairs").get<std::size_t>();
  if (!j.at("kind_override").is_null()) {
    c.kind_override = operator_kind_from_string(j.at("kind_override").get<std::string>());
  }
  c.seed = seed;
  return c;
}

bool same_config(const TrialConfig& a, const TrialConfig& b) {
  return a.families == b.families && a.dims == b.dims && a.trials == b.trials && a.seed == b.seed &&
         a.grid == b.grid && a.tolerance == b.tolerance && a.samples == b.samples && a.radius == b.radius &&
         a.refine.enabled == b.refine.enabled && a.refine.starts == b.refine.starts &&
         a.refine.iterations == b.refine.iterations && a.refine.tolerance == b.refine.tolerance &&
         a.max_pairs == b.max_pairs && a.kind_override == b.kind_override;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

bool Report::any_fail() const noexcept {
  for (const auto& [id, agg] : checks)
    if (agg.fail > 0) return true;
  return false;
}

bool Report::any_suspect() const noexcept {
  for (const auto& [id, agg] : checks)
    if (agg.suspect > 0) return true;
  return false;
}

int Report::exit_code() const noexcept {
  if (any_fail()) return 1;
  if (any_suspect()) return 2;
  return 0;
}

bool same_content(const Report& a, const Report& b, bool compare_wall_time) {
  return a.version == b.version && a.seed == b.seed && same_config(a.config, b.config) && a.checks == b.checks &&
         (!compare_wall_time || a.wall_ms == b.wall_ms);
}

std::string to_json(const Report& report) {
  json checks = json::object();
  for (const auto& [id, agg] : report.checks) {
    json c = {{"trials", agg.trials},          {"pass", agg.pass},
              {"suspect", agg.suspect},        {"fail", agg.fail},
              {"errors", agg.errors},          {"min_slack", agg.min_slack},
              {"mean_slack", agg.mean_slack},  {"max_ratio", agg.max_ratio},
              {"witness_digest", agg.witness_digest}};
    if (agg.literal_violations) c["literal_violations"] = *agg.literal_violations;
    checks[id] = c;
  }
  json doc;
  doc["version"] = report.version;
  doc["seed"] = report.seed;
  doc["config"] = config_echo(report.config);
  doc["checks"] = checks;
  doc["wall_ms"] = report.wall_ms;
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Report r;
    r.version = doc.at("version").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.config = config_from(doc.at("config"), r.seed);
    for (const auto& [id, c] : doc.at("checks").items()) {
      CheckAggregate agg;
      agg.trials = c.at("trials").get<std::size_t>();
      agg.pass = c.at("pass").get<std::size_t>();
      agg.suspect = c.at("suspect").get<std::size_t>();
      agg.fail = c.at("fail").get<std::size_t>();
      agg.errors = c.value("errors", std::size_t{0});
      agg.min_slack = c.at("min_slack").get<double>();
      agg.mean_slack = c.at("mean_slack").get<double>();
      agg.max_ratio = c.at("max_ratio").get<double>();
      agg.witness_digest = c.at("witness_digest").get<std::string>();
      if (c.contains("literal_violations")) agg.literal_violations = c["literal_violations"].get<std::size_t>();
      r.checks[id] = agg;
    }
    r.wall_ms = doc.at("wall_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadConfig, std::string("malformed report: ") + e.what());
  }
}

std::string to_csv_summary(const Report& report) {
  std::ostringstream out;
  out << "check,trials,pass,suspect,fail,min_slack,mean_slack,max_ratio,witness_digest\n";
  for (const auto& [id, agg] : report.checks) {
    out << id << ',' << agg.trials << ',' << agg.pass << ',' << agg.suspect << ',' << agg.fail << ','
        << fmt(agg.min_slack) << ',' << fmt(agg.mean_slack) << ',' << fmt(agg.max_ratio) << ','
        << agg.witness_digest << '\n';
  }
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
  out << (format == ReportFormat::Json ? to_json(report) : to_csv_summary(report));
  if (!out) throw Error(ErrorKind::IoFailure, "write to " + path.string() + " failed");
}

Report read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

}  // namespace berezin
