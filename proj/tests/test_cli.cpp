#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BEREZIN_LAB_EXE) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("berezin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST_F(Cli, ListChecks) {
  const auto r = run("list-checks");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  EXPECT_GE(lines, 22);
  EXPECT_NE(r.out.find("full_cor"), std::string::npos);
}

TEST_F(Cli, VerifyIsReproducible) {
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  EXPECT_EQ(run("verify --checks eq111 --trials 5 --seed 7 --out " + a.string()).code, 0);
  EXPECT_EQ(run("verify --checks eq111 --trials 5 --seed 7 --out " + b.string()).code, 0);
  auto ja = nlohmann::json::parse(slurp(a));
  auto jb = nlohmann::json::parse(slurp(b));
  EXPECT_EQ(ja["checks"]["eq111"]["trials"], 5 * 2 * 4);
  ja.erase("wall_ms");
  jb.erase("wall_ms");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST_F(Cli, CsvFormat) {
  const auto out = dir / "s.csv";
  EXPECT_EQ(run("verify --checks young,eq1 --trials 2 --dim 2 --out " + out.string() + " --format csv").code, 0);
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("check,trials,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(Cli, SuspectExitCode) {
  // the sandwich bound breaks on some draws; 2 means SUSPECT, never FAIL
  const auto r = run("verify --checks eq4 --trials 500 --dim 2 --space hardy --seed 0");
  EXPECT_TRUE(r.code == 0 || r.code == 2) << r.code;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_NE(run("verify --checks nonexistent --trials 1").code, 0);
  EXPECT_NE(run("verify --trials 0").code, 0);
  EXPECT_NE(run("frobnicate").code, 0);
  EXPECT_NE(run("symbol --op-file /nonexistent.json").code, 0);
}

TEST_F(Cli, SymbolDump) {
  const auto op = dir / "op.json";
  std::ofstream(op) << R"({"rows": 2, "cols": 2, "re": [[1, 0], [0, 3]]})";
  const auto gram = dir / "g.json";
  std::ofstream(gram) << R"({"points": ["a", "b"], "gram_re": [[1, 0], [0, 1]]})";
  const auto r = run("symbol --op-file " + op.string() + " --space discrete --gram-file " + gram.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lambda_re,lambda_im,sym_re,sym_im,abs"), std::string::npos);
  EXPECT_NE(r.out.find("1,0,3,0,3"), std::string::npos);

  const auto h = run("symbol --op-file " + op.string() + " --grid 25");
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(std::count(h.out.begin(), h.out.end(), '\n'), 26);
}

TEST_F(Cli, Explore) {
  const auto r = run("explore --check eq1 --steps 15 --dim 2 --samples 49");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["best_ratio"].get<double>(), 1.0 + 1e-9);
}

TEST_F(Cli, SeedFromEnvironment) {
  const auto a = dir / "a.json";
  const std::string cmd = "env BEREZIN_LAB_SEED=99 " + std::string(BEREZIN_LAB_EXE) +
                          " verify --checks eq111 --trials 1 --dim 2 --out " + a.string() + " >/dev/null 2>&1";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(a))["seed"], 99);
}

}  // namespace
