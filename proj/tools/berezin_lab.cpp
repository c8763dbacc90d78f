// berezin_lab: randomized verification of Berezin number inequalities.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "berezin/berezin.hpp"
#include "berezin/error.hpp"
#include "berezin/harness.hpp"
#include "berezin/io.hpp"
#include "berezin/report.hpp"

namespace {

using namespace berezin;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BEREZIN_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring BEREZIN_LAB_SEED='" << env << "'\n";
    }
  }
  return 0;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

KernelSpace symbol_space(const std::string& name, std::size_t dim, double radius, const std::string& gram_file) {
  if (name == "hardy") return KernelSpace::hardy(dim, radius);
  if (name == "bergman") return KernelSpace::bergman(dim, radius);
  if (name == "discrete") {
    if (gram_file.empty()) throw Error(ErrorKind::BadConfig, "--space discrete needs --gram-file");
    return load_discrete_space(gram_file);
  }
  throw Error(ErrorKind::BadConfig, "unknown space '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of Berezin number inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BEREZIN_LAB_VERSION);

  // verify
  auto* verify = app.add_subcommand("verify", "run the randomized suite and write a report");
  std::string suite;
  std::string checks;
  std::vector<std::string> spaces{"hardy", "discrete"};
  std::vector<std::size_t> dims{2, 3, 4, 8};
  std::size_t samples = 400;
  std::size_t trials = 500;
  std::uint64_t seed = default_seed();
  double tol = 1e-9;
  std::string out_path;
  std::string format = "json";
  unsigned jobs = 1;
  bool no_refine = false;
  std::string kind;
  auto* suite_opt = verify->add_option("--suite", suite, "named suite: all")->check(CLI::IsMember({"all"}));
  verify->add_option("--checks", checks, "comma separated check ids")->excludes(suite_opt);
  verify->add_option("--space", spaces, "space families: hardy bergman discrete orthonormal")
      ->check(CLI::IsMember({"hardy", "bergman", "discrete", "orthonormal"}));
  verify->add_option("--dim", dims, "dimensions (2..32)");
  verify->add_option("--samples", samples, "sample points per disk domain")->check(CLI::PositiveNumber);
  verify->add_option("--trials", trials, "trials per check, family and dimension")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "master seed (default: $BEREZIN_LAB_SEED or 0)");
  verify->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "report path (default: stdout)");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--no-refine", no_refine, "skip simplex refinement of grid maxima");
  verify->add_option("--kind", kind, "replace general operators by this kind");

  // explore
  auto* explore = app.add_subcommand("explore", "hill-climb lhs/rhs for one check");
  std::string explore_check;
  int steps = 200;
  std::string explore_space = "hardy";
  std::size_t explore_dim = 3;
  explore->add_option("--check", explore_check, "check id")->required();
  explore->add_option("--steps", steps, "search steps")->check(CLI::NonNegativeNumber);
  explore->add_option("--space", explore_space, "space family")
      ->check(CLI::IsMember({"hardy", "bergman", "discrete", "orthonormal"}));
  explore->add_option("--dim", explore_dim, "dimension");
  explore->add_option("--seed", seed, "master seed");
  explore->add_option("--samples", samples, "sample points per disk domain")->check(CLI::PositiveNumber);
  explore->add_option("--kind", kind, "replace general operators by this kind");

  // symbol
  auto* symbol = app.add_subcommand("symbol", "dump the Berezin symbol of an operator on a grid as CSV");
  std::string op_file;
  std::size_t grid = 400;
  std::string symbol_space_name = "hardy";
  double radius = kDefaultDiskRadius;
  std::string gram_file;
  symbol->add_option("--op-file", op_file, "operator JSON {rows, cols, re, im}")->required();
  symbol->add_option("--grid", grid, "number of polar grid points")->check(CLI::PositiveNumber);
  symbol->add_option("--space", symbol_space_name, "hardy, bergman or discrete")
      ->check(CLI::IsMember({"hardy", "bergman", "discrete"}));
  symbol->add_option("--radius", radius, "disk radius");
  symbol->add_option("--gram-file", gram_file, "discrete space JSON {points, gram_re, gram_im}");
  symbol->add_option("--out", out_path, "CSV path (default: stdout)");

  auto* list = app.add_subcommand("list-checks", "print check ids, statements and hypotheses");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& info : checker_catalog()) {
        std::cout << info.id << "\t" << to_string(info.robustness) << "\t" << info.statement << "\t["
                  << info.hypotheses << "]\n";
      }
      return 0;
    }

    TrialConfig config;
    config.seed = seed;
    config.samples = samples;
    if (!kind.empty()) config.kind_override = operator_kind_from_string(kind);

    if (*verify) {
      config.families.clear();
      for (const auto& s : spaces) config.families.push_back(space_family_from_string(s));
      config.dims = dims;
      config.trials = trials;
      config.tolerance = tol;
      config.jobs = jobs;
      config.refine.enabled = !no_refine;
      std::vector<std::string> ids = checks.empty() ? all_check_ids() : split_ids(checks);
      if (!suite.empty() && !checks.empty()) throw Error(ErrorKind::BadConfig, "--suite and --checks conflict");
      const Report report = run_suite(config, ids);
      const ReportFormat fmt = format == "csv" ? ReportFormat::CsvSummary : ReportFormat::Json;
      if (out_path.empty()) {
        std::cout << (fmt == ReportFormat::Json ? to_json(report) : to_csv_summary(report));
      } else {
        write_report(report, out_path, fmt);
      }
      return report.exit_code();
    }

    if (*explore) {
      config.families = {space_family_from_string(explore_space)};
      config.dims = {explore_dim};
      const SharpnessResult r = sharpness_search(explore_check, config, steps);
      nlohmann::json doc;
      doc["check"] = r.check_id;
      doc["best_ratio"] = r.best_ratio;
      doc["trajectory"] = r.trajectory;
      doc["status"] = std::string(to_string(r.best.status));
      doc["location"] = to_string(r.best.witness.location);
      nlohmann::json ops = nlohmann::json::array();
      for (const auto& m : r.witness) ops.push_back(nlohmann::json::parse(operator_to_json(m)));
      doc["witness"] = ops;
      std::cout << doc.dump(2) << "\n";
      return r.best.status == Status::Fail ? 1 : 0;
    }

    if (*symbol) {
      const Matrix a = load_operator(op_file);
      const KernelSpace space = symbol_space(symbol_space_name, a.rows(), radius, gram_file);
      const auto set = berezin_set(space, a, default_plan(space, grid, seed));
      const std::string csv = symbol_csv(set);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + out_path);
        out << csv;
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "berezin_lab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "berezin_lab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
