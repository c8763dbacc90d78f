#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "berezin/harness.hpp"
#include "berezin/inequalities.hpp"
#include "berezin/io.hpp"
#include "berezin/linalg.hpp"
#include "support.hpp"

namespace berezin {
namespace {

bool kind_holds(OperatorKind kind, const Matrix& m, double scale_max) {
  const std::size_t n = m.rows();
  switch (kind) {
    case OperatorKind::General:
      return spectral_norm(m) <= scale_max * (1 + 1e-12);
    case OperatorKind::Hermitian:
      return max_abs_entry(m - adjoint(m)) <= 1e-10;
    case OperatorKind::Positive: {
      if (max_abs_entry(m - adjoint(m)) > 1e-10) return false;
      return hermitian_eigen(m).eigenvalues.front() >= -1e-10 * scale_max;
    }
    case OperatorKind::Contraction:
      return spectral_norm(m) <= 1.0 + 1e-10;
    case OperatorKind::Unitary:
      return max_abs_entry(adjoint(m) * m - Matrix::identity(n)) <= 1e-10;
    case OperatorKind::NilpotentShift:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j + 1 && m(i, j) != 0.0) return false;
      return true;
    case OperatorKind::Diagonal:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && m(i, j) != 0.0) return false;
      return true;
    case OperatorKind::UnitVector:
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (std::abs(norm(column(m, j)) - 1.0) > 1e-12) return false;
      return true;
    case OperatorKind::ScalarBox:
      for (const auto& e : m.entries())
        if (e.imag() != 0.0 || e.real() < 0.0 || e.real() > scale_max) return false;
      return true;
  }
  return false;
}

TEST(Generators, KindPropertyHolds) {
  const OperatorKind kinds[] = {OperatorKind::General,     OperatorKind::Hermitian,      OperatorKind::Positive,
                                OperatorKind::Contraction, OperatorKind::Unitary,        OperatorKind::NilpotentShift,
                                OperatorKind::Diagonal,    OperatorKind::UnitVector,     OperatorKind::ScalarBox};
  for (auto kind : kinds) {
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      OperatorRecipe recipe{kind, 2 + seed % 5};
      if (kind == OperatorKind::UnitVector) recipe.cols = 3;
      const Matrix m = gen_operator(recipe, seed);
      ASSERT_TRUE(kind_holds(kind, m, recipe.scale_max)) << to_string(kind) << " seed " << seed;
    }
  }
}

TEST(Generators, DeterministicAndNamed) {
  const OperatorRecipe r{OperatorKind::Positive, 4};
  EXPECT_EQ(gen_operator(r, 42), gen_operator(r, 42));
  EXPECT_NE(gen_operator(r, 42), gen_operator(r, 43));
  EXPECT_EQ(operator_kind_from_string("nilpotent-shift"), OperatorKind::NilpotentShift);
  EXPECT_EQ(to_string(OperatorKind::UnitVector), "unit-vector");
  EXPECT_ERROR_KIND(operator_kind_from_string("skew"), ErrorKind::BadConfig);
}

TEST(Catalog, CompleteAndClassified) {
  const auto ids = all_check_ids();
  EXPECT_EQ(ids.size(), 22u);
  const std::set<std::string> expected{"eq111",  "eq1",        "commutator", "eq4",      "thm2i",        "thm2ii",
                                       "eq5",    "remark1",    "remark2",    "eq10",     "heinz",        "eq7",
                                       "eq7cor", "tuple_berp", "eq14",       "full_cor", "young",        "refined_young",
                                       "mixed_schwarz", "mccarthy", "lemma9a", "lemma9b"};
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()), expected);
  const std::set<std::string> sup{"commutator", "eq4", "full_cor"};
  for (const auto& info : checker_catalog()) {
    EXPECT_EQ(info.robustness == Robustness::SupEstimated, sup.count(info.id) == 1) << info.id;
    EXPECT_FALSE(info.statement.empty());
  }
  EXPECT_ERROR_KIND(checker_info("nope"), ErrorKind::UnknownChecker);
}

TEST(Catalog, ResultRobustnessMatchesMetadata) {
  TrialConfig config;
  config.samples = 64;
  for (const auto& info : checker_catalog()) {
    const auto inst = make_instance(info.id, config, SpaceFamily::Hardy, 2, 0);
    const auto check = evaluate(inst, config);
    EXPECT_EQ(check.robustness, info.robustness) << info.id;
    EXPECT_EQ(check.check_id, info.id);
  }
}

TEST(ParameterGrid, RespectsHypotheses) {
  TrialConfig config;
  for (const auto& id : all_check_ids()) {
    const auto grid = parameter_grid(id, config);
    EXPECT_FALSE(grid.empty());
    for (const auto& p : grid) EXPECT_NO_THROW(validate_params(id, p)) << id;
  }
  config.grid.rs = {1.0};
  EXPECT_ERROR_KIND(parameter_grid("eq10", config), ErrorKind::BadConfig);
}

TEST(TrialSeed, DependsOnEveryField) {
  const auto base = trial_seed(1, "eq1", SpaceFamily::Hardy, 2, 0);
  EXPECT_EQ(base, trial_seed(1, "eq1", SpaceFamily::Hardy, 2, 0));
  EXPECT_NE(base, trial_seed(2, "eq1", SpaceFamily::Hardy, 2, 0));
  EXPECT_NE(base, trial_seed(1, "eq4", SpaceFamily::Hardy, 2, 0));
  EXPECT_NE(base, trial_seed(1, "eq1", SpaceFamily::Discrete, 2, 0));
  EXPECT_NE(base, trial_seed(1, "eq1", SpaceFamily::Hardy, 3, 0));
  EXPECT_NE(base, trial_seed(1, "eq1", SpaceFamily::Hardy, 2, 1));
}

TEST(Config, Validation) {
  TrialConfig c;
  EXPECT_NO_THROW(validate_config(c));
  c.trials = 0;
  EXPECT_ERROR_KIND(validate_config(c), ErrorKind::BadConfig);
  c = {};
  c.dims = {1};
  EXPECT_ERROR_KIND(validate_config(c), ErrorKind::BadConfig);
  c = {};
  c.dims = {33};
  EXPECT_ERROR_KIND(validate_config(c), ErrorKind::BadConfig);
  c = {};
  c.families.clear();
  EXPECT_ERROR_KIND(validate_config(c), ErrorKind::BadConfig);
  EXPECT_EQ(space_family_from_string("bergman"), SpaceFamily::Bergman);
  EXPECT_ERROR_KIND(space_family_from_string("sobolev"), ErrorKind::BadConfig);
}

TrialConfig small_config() {
  TrialConfig c;
  c.trials = 3;
  c.dims = {2, 3};
  c.samples = 49;
  c.seed = 7;
  return c;
}

TEST(RunSuite, ErrorsOnBadSelection) {
  EXPECT_ERROR_KIND(run_suite(small_config(), {}), ErrorKind::BadConfig);
  EXPECT_ERROR_KIND(run_suite(small_config(), {"eq111", "bogus"}), ErrorKind::UnknownChecker);
}

TEST(RunSuite, CountsAndDeterminism) {
  auto c = small_config();
  const std::vector<std::string> ids{"eq111", "eq1", "lemma9b", "young", "eq111"};
  const Report a = run_suite(c, ids);
  EXPECT_EQ(a.checks.size(), 4u);
  for (const auto& [id, agg] : a.checks) {
    EXPECT_EQ(agg.trials, 3u * 2u * 2u) << id;
    EXPECT_EQ(agg.pass + agg.suspect + agg.fail, agg.trials) << id;
    EXPECT_EQ(agg.fail, 0u) << id;
    EXPECT_LE(agg.max_ratio, 1.0 + 1e-9) << id;
    EXPECT_EQ(agg.witness_digest.size(), 16u);
  }
  c.jobs = 4;
  const Report b = run_suite(c, ids);
  EXPECT_TRUE(same_content(a, b, false));
  EXPECT_EQ(a.exit_code(), 0);
}

TEST(Report, JsonRoundTripAndCsv) {
  const Report r = run_suite(small_config(), {"eq111", "heinz", "mccarthy"});
  const Report back = report_from_json(to_json(r));
  EXPECT_TRUE(same_content(r, back));
  EXPECT_EQ(to_json(back), to_json(r));
  EXPECT_TRUE(back.checks.at("heinz").literal_violations.has_value());

  const std::string csv = to_csv_summary(r);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 1 + r.checks.size());
  EXPECT_EQ(lines[0], "check,trials,pass,suspect,fail,min_slack,mean_slack,max_ratio,witness_digest");

  const auto dir = std::filesystem::temp_directory_path() / "berezin_report_test";
  std::filesystem::create_directories(dir);
  write_report(r, dir / "r.json", ReportFormat::Json);
  EXPECT_TRUE(same_content(read_report(dir / "r.json"), r));
  EXPECT_ERROR_KIND(write_report(r, "/nonexistent/dir/r.json", ReportFormat::Json), ErrorKind::IoFailure);
  EXPECT_ERROR_KIND(report_from_json("[1,2]"), ErrorKind::BadConfig);
  std::filesystem::remove_all(dir);
}

TEST(Report, ExitCodes) {
  Report r;
  r.checks["a"] = {.trials = 1, .pass = 1};
  EXPECT_EQ(r.exit_code(), 0);
  r.checks["b"] = {.trials = 1, .suspect = 1};
  EXPECT_EQ(r.exit_code(), 2);
  r.checks["c"] = {.trials = 1, .fail = 1, .errors = 1};
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Sharpness, StaysBelowOneOnRobustChecks) {
  TrialConfig c = small_config();
  for (const char* id : {"eq1", "lemma9b", "refined_young", "mccarthy"}) {
    const auto res = sharpness_search(id, c, 30);
    EXPECT_EQ(res.trajectory.size(), 30u);
    EXPECT_LE(res.best_ratio, 1.0 + 1e-9) << id;
    EXPECT_TRUE(std::is_sorted(res.trajectory.begin(), res.trajectory.end()));
    EXPECT_FALSE(res.witness.empty());
  }
  EXPECT_ERROR_KIND(sharpness_search("nope", c, 5), ErrorKind::UnknownChecker);
}

TEST(Sharpness, OrthonormalDiagonalReachesNorm) {
  TrialConfig c;
  c.families = {SpaceFamily::Orthonormal};
  c.dims = {3};
  c.kind_override = OperatorKind::Diagonal;
  const auto res = sharpness_search("eq111", c, 20);
  EXPECT_GE(res.best_ratio, 0.999);
  EXPECT_LE(res.best_ratio, 1.0 + 1e-9);
}

TEST(Io, OperatorRoundTrip) {
  std::mt19937_64 rng(3);
  const Matrix m = testing::gaussian(2, 3, rng);
  EXPECT_EQ(parse_operator(operator_to_json(m)), m);
  const Matrix real = parse_operator(R"({"rows": 1, "cols": 2, "re": [[1, 2]]})");
  EXPECT_EQ(real, (Matrix{{1.0, 2.0}}));
  EXPECT_ERROR_KIND(parse_operator(R"({"rows": 2, "cols": 2, "re": [[1, 2]]})"), ErrorKind::BadMatrix);
  EXPECT_ERROR_KIND(parse_operator("not json"), ErrorKind::BadMatrix);
  EXPECT_ERROR_KIND(load_operator("/nonexistent/op.json"), ErrorKind::IoFailure);
}

TEST(Io, SymbolCsv) {
  const auto d = KernelSpace::discrete({"a", "b"}, Matrix::identity(2));
  const std::vector<double> diag{2.0, -1.0};
  const auto set = berezin_set(d, Matrix::diagonal(std::span<const double>(diag)), default_plan(d, 1));
  const std::string csv = symbol_csv(set);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda_re,lambda_im,sym_re,sym_im,abs");
  EXPECT_NE(csv.find("1,0,-1,0,1"), std::string::npos);
}

}  // namespace
}  // namespace berezin
