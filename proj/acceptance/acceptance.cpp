// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "berezin/harness.hpp"
#include "berezin/inequalities.hpp"
#include "berezin/linalg.hpp"

using namespace berezin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  return m;
}

Complex disk_point(double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * 3.14159265358979323846 * u(rng));
}

Vector unit_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  double s = 0.0;
  for (auto& e : v) {
    const double re = g(rng);
    e = Complex(re, g(rng));
    s += std::norm(e);
  }
  for (auto& e : v) e /= std::sqrt(s);
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- 1, 2: default randomized suite ---------------------------------------

const Report& default_run() {
  static const Report report = [] {
    TrialConfig config;
    config.jobs = worker_count();
    return run_suite(config, all_check_ids());
  }();
  return report;
}

Outcome robust_suite() {
  const Report& r = default_run();
  Outcome o;
  std::size_t trials = 0;
  std::size_t fails = 0;
  std::size_t errors = 0;
  std::string where;
  for (const auto& [id, agg] : r.checks) {
    trials += agg.trials;
    fails += agg.fail;
    errors += agg.errors;
    if (agg.fail > 0) where += " " + id;
  }
  o.pass = fails == 0 && r.checks.size() == all_check_ids().size();
  o.detail = std::to_string(fails) + " FAIL (" + std::to_string(errors) + " errors) over " +
             std::to_string(trials) + " trials, " + std::to_string(r.checks.size()) + " checks" + where;
  return o;
}

Outcome sup_suite() {
  const Report& r = default_run();
  Outcome o;
  for (const char* id : {"commutator", "eq4", "eq10", "full_cor"}) {
    const auto& agg = r.checks.at(id);
    o.pass = o.pass && agg.fail == 0 && agg.suspect == 0;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += std::string(id) + " fail " + std::to_string(agg.fail) + " suspect " + std::to_string(agg.suspect) +
                "/" + std::to_string(agg.trials) + " max_ratio " + fmt(agg.max_ratio);
  }
  return o;
}

// ---- 3: exhaustive ber against brute-force enumeration -----------------------

double brute_force_ber(const Matrix& embedding, const Matrix& a) {
  double best = -1.0;
  const std::size_t n = embedding.rows();
  for (std::size_t i = 0; i < embedding.cols(); ++i) {
    std::vector<Complex> u(n);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::norm(embedding(j, i));
    const double len = std::sqrt(s);
    for (std::size_t j = 0; j < n; ++j) u[j] = embedding(j, i) / len;
    Complex form{};
    for (std::size_t r = 0; r < n; ++r) {
      Complex y{};
      for (std::size_t c = 0; c < n; ++c) y += a(r, c) * u[c];
      form += y * std::conj(u[r]);
    }
    const double v = std::abs(form);
    if (v > best) best = v;
  }
  return best;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  Outcome o;
  int mismatches = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 2 + rep % 11;
    const std::size_t rank = 1 + rng() % m;
    const Matrix f = gaussian(rank, m, rng);
    const Matrix k = hermitian_part(adjoint(f) * f);
    const auto space = KernelSpace::discrete(std::vector<std::string>(m, "p"), k);
    const Matrix a = gaussian(space.dim(), space.dim(), rng);
    const double lib = berezin_number(space, a, default_plan(space, m)).value;
    const double ref = brute_force_ber(gram_embed(k), a);
    if (lib != ref) ++mismatches;
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(100 - mismatches) + "/100 bit-identical";
  return o;
}

// ---- 4: closed forms on the truncated Hardy space ---------------------------

Outcome closed_forms() {
  std::mt19937_64 rng(4);
  double worst_symbol = 0.0;
  double worst_norm = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto h = KernelSpace::hardy(n);
    Matrix s(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) s(j + 1, j) = 1.0;
    for (int rep = 0; rep < 100; ++rep) {
      const Complex z = disk_point(0.95, rng);
      const double r2 = std::norm(z);
      double num = 0.0;
      double den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double t = std::pow(r2, static_cast<double>(j));
        den += t;
        if (j + 2 <= n) num += t;
      }
      worst_symbol = std::max(worst_symbol, std::abs(symbol(h, s, z) - z * (num / den)));
      const double kn = norm(h.kernel_at(z));
      const double closed = (1.0 - std::pow(r2, static_cast<double>(n))) / (1.0 - r2);
      worst_norm = std::max(worst_norm, std::abs(kn * kn - closed));
    }
  }
  return {worst_symbol <= 1e-12 && worst_norm <= 1e-12,
          "max symbol error " + fmt(worst_symbol) + ", max squared-norm error " + fmt(worst_norm) + " (700 points)"};
}

// ---- 5: functional calculus --------------------------------------------------

Outcome functional_calculus() {
  std::mt19937_64 rng(5);
  double worst_sqrt = 0.0;
  double worst_sv = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rep % 16;
    const Matrix g = gaussian(1 + rng() % n, n, rng);
    const Matrix p = hermitian_part(adjoint(g) * g);
    const Matrix root = power_psd(p, 0.5);
    worst_sqrt = std::max(worst_sqrt, spectral_norm(root * root - p) / spectral_norm(p));

    const Matrix t = gaussian(n, n, rng);
    const auto eig = hermitian_eigen(abs_op(t));
    Eigen::MatrixXcd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = t(i, j);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues();
    const double scale = std::max(1.0, sv(0));
    for (std::size_t k = 0; k < n; ++k)
      worst_sv = std::max(worst_sv, std::abs(eig.eigenvalues[k] - sv(n - 1 - k)) / scale);
  }
  return {worst_sqrt <= 1e-10 && worst_sv <= 1e-10,
          "max ||R^2-P||/||P|| " + fmt(worst_sqrt) + ", max singular value error " + fmt(worst_sv) +
              " (relative to max(1,||T||))"};
}

// ---- 6: scalar and vector layer ---------------------------------------------

Outcome scalar_layer() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> box(0.0, 10.0);
  std::vector<std::pair<double, double>> samples(10000);
  for (auto& s : samples) s = {box(rng), box(rng)};

  std::size_t violations = 0;
  std::size_t runs = 0;
  const auto tally = [&](const InequalityCheck& c) {
    ++runs;
    if (c.status == Status::Fail) ++violations;
  };
  for (double al : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CheckParams ry;
    ry.alpha = al;
    tally(check_refined_young(samples, ry));
    for (double p : {1.5, 2.0, 3.0}) {
      for (double r : {1.0, 2.0, 3.0}) {
        CheckParams y = with_conjugate({}, p);
        y.alpha = al;
        y.r = r;
        tally(check_young_scalar(samples, y));
      }
    }
  }

  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const Matrix t = gaussian(n, n, rng);
    std::vector<std::pair<Vector, Vector>> pairs{{unit_vector(n, rng), unit_vector(n, rng)}};
    CheckParams ms;
    ms.alpha = 0.25 * (rep % 5);
    tally(check_mixed_schwarz(t, pairs, ms, ScalarFunction::power(ms.alpha), ScalarFunction::power(1.0 - ms.alpha)));

    const Matrix g = gaussian(n, n, rng);
    const Matrix pos = hermitian_part(adjoint(g) * g);
    const std::vector<Vector> xs{unit_vector(n, rng)};
    CheckParams mc;
    mc.r = std::uniform_real_distribution<double>(0.1, 4.0)(rng);
    tally(check_mccarthy(pos, xs, mc));
  }

  // equality cases
  double worst_eq = 0.0;
  const std::vector<std::pair<double, double>> diagonal{{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}, {7.0, 7.0}, {10.0, 10.0}};
  for (double al : {0.0, 0.3, 0.5, 1.0}) {
    CheckParams ry;
    ry.alpha = al;
    worst_eq = std::max(worst_eq, std::abs(check_refined_young(diagonal, ry).slack));
    for (double p : {1.5, 2.0, 3.0}) {
      CheckParams y = with_conjugate({}, p);
      y.alpha = al;
      worst_eq = std::max(worst_eq, std::abs(check_young_scalar(std::vector<std::pair<double, double>>{{1.0, 1.0}}, y).slack));
    }
  }
  for (double al : {0.0, 1.0}) {
    for (std::size_t i = 0; i < 2000; ++i) {
      const auto [a, b] = samples[i];
      worst_eq = std::max(worst_eq, std::abs(std::pow(a, al) * std::pow(b, 1.0 - al) - (al * a + (1.0 - al) * b)) /
                                        std::max(1.0, std::max(a, b)));
    }
  }
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const Matrix g = gaussian(n, n, rng);
    const Matrix pos = hermitian_part(adjoint(g) * g);
    const std::vector<Vector> xs{unit_vector(n, rng), unit_vector(n, rng)};
    CheckParams one;
    one.r = 1.0;
    const auto c = check_mccarthy(pos, xs, one);
    worst_eq = std::max(worst_eq, std::abs(c.slack));
  }
  const bool ok = violations == 0 && worst_eq <= 1e-12;
  return {ok, std::to_string(violations) + " violations in " + std::to_string(runs) +
                  " check runs (10^4 scalar samples, 500 operator samples); max equality-case gap " + fmt(worst_eq)};
}

// ---- 7: ber <= w <= ||A|| ----------------------------------------------------

Outcome chain() {
  std::mt19937_64 rng(7);
  std::size_t bad = 0;
  double worst_gap = -1e300;
  const OperatorKind kinds[] = {OperatorKind::General, OperatorKind::Hermitian, OperatorKind::Positive,
                                OperatorKind::Unitary, OperatorKind::NilpotentShift, OperatorKind::Diagonal};
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const Matrix a = gen_operator({kinds[rep % 6], n}, rng());
    const KernelSpace space = rep % 2 == 0 ? KernelSpace::hardy(n) : KernelSpace::bergman(n);
    const auto c = check_chain_111(space, a, default_plan(space, 400));
    const double w = c.notes.at("numerical_radius");
    const double ber = c.notes.at("ber");
    const double norm_a = spectral_norm(a);
    const double grid = norm_a * 2.0 * 3.14159265358979323846 / kDefaultThetaSteps;
    const bool ok = ber <= w + grid && w <= norm_a + 1e-9 && c.status == Status::Pass;
    if (!ok) ++bad;
    worst_gap = std::max(worst_gap, ber - (w + grid));
  }
  double worst_herm = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 15;
    const Matrix h = hermitian_part(gaussian(n, n, rng));
    worst_herm = std::max(worst_herm, std::abs(numerical_radius(h) - spectral_norm(h)));
  }
  return {bad == 0 && worst_herm <= 1e-9, std::to_string(bad) + "/500 chain violations, max ber-(w+grid) " +
                                               fmt(worst_gap) + "; Hermitian |w-||H||| max " + fmt(worst_herm)};
}

// ---- 8: sample-level algebra ---------------------------------------------------

Outcome sample_algebra() {
  std::mt19937_64 rng(8);
  RefineConfig off;
  off.enabled = false;
  std::size_t argmax_changes = 0;
  double worst_scale = 0.0;
  double worst_sub = -1e300;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 7;
    KernelSpace space = KernelSpace::hardy(n);
    if (rep % 2 == 1) {
      const Matrix g = gaussian(n, 2 * n, rng);
      space = KernelSpace::discrete(std::vector<std::string>(2 * n, "p"), hermitian_part(adjoint(g) * g));
    }
    const SamplePlan plan = default_plan(space, 200, rep);
    const Matrix a = gaussian(n, n, rng);
    const Matrix b = gaussian(n, n, rng);
    const Complex s(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));

    const auto ea = berezin_number(space, a, plan, off);
    const auto es = berezin_number(space, s * a, plan, off);
    worst_scale = std::max(worst_scale, std::abs(es.value - std::abs(s) * ea.value));
    if (to_string(es.argmax) != to_string(ea.argmax)) ++argmax_changes;
    worst_sub = std::max(worst_sub, berezin_number(space, a + b, plan, off).value - ea.value -
                                        berezin_number(space, b, plan, off).value);

    const std::vector<Matrix> t1{a, b};
    const std::vector<Matrix> t2{gaussian(n, n, rng), gaussian(n, n, rng)};
    const std::vector<Matrix> scaled{s * a, s * b};
    const std::vector<Matrix> sum{t1[0] + t2[0], t1[1] + t2[1]};
    for (double p : {1.0, 2.0, 3.5}) {
      const auto p1 = euclidean_berezin(space, t1, p, plan, off);
      const auto ps = euclidean_berezin(space, scaled, p, plan, off);
      worst_scale = std::max(worst_scale, std::abs(ps.value - std::abs(s) * p1.value));
      if (to_string(ps.argmax) != to_string(p1.argmax)) ++argmax_changes;
      worst_sub = std::max(worst_sub, euclidean_berezin(space, sum, p, plan, off).value - p1.value -
                                          euclidean_berezin(space, t2, p, plan, off).value);
    }
  }
  return {worst_scale <= 1e-12 && worst_sub <= 1e-12 && argmax_changes == 0,
          "max homogeneity error " + fmt(worst_scale) + ", max subadditivity excess " + fmt(worst_sub) + ", " +
              std::to_string(argmax_changes) + " argmax changes (800 comparisons)"};
}

// ---- 9: CLI determinism across --jobs ----------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BEREZIN_LAB_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string without_timing(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::string out;
  while (std::getline(in, line))
    if (line.find("\"wall_ms\"") == std::string::npos) out += line + "\n";
  return out;
}

Outcome cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "berezin_acceptance";
  std::filesystem::create_directories(dir);
  const std::string common = "verify --suite all --trials 10 --seed 31 --format json";
  const int c1 = run_cli(common + " --jobs 1 --out " + (dir / "j1.json").string());
  const int c8 = run_cli(common + " --jobs 8 --out " + (dir / "j8.json").string());
  const std::string a = without_timing(dir / "j1.json");
  const std::string b = without_timing(dir / "j8.json");
  std::filesystem::remove_all(dir);
  const bool ok = c1 == c8 && c1 >= 0 && !a.empty() && a == b;
  return {ok, std::string(a == b ? "byte-identical" : "different") + " reports (" + std::to_string(a.size()) +
                  " bytes), exit codes " + std::to_string(c1) + "/" + std::to_string(c8)};
}

// ---- 10: sharpness search -----------------------------------------------------

Outcome sharpness() {
  TrialConfig config;
  double worst = 0.0;
  std::string worst_id;
  std::size_t searched = 0;
  for (const auto& info : checker_catalog()) {
    if (info.robustness != Robustness::PointwiseRobust) continue;
    const auto res = sharpness_search(info.id, config, 200);
    ++searched;
    if (res.best_ratio > worst) {
      worst = res.best_ratio;
      worst_id = info.id;
    }
  }
  TrialConfig ortho;
  ortho.families = {SpaceFamily::Orthonormal};
  ortho.dims = {4};
  ortho.kind_override = OperatorKind::Diagonal;
  const double diag = sharpness_search("eq111", ortho, 200).best_ratio;
  return {worst <= 1.0 + 1e-9 && diag >= 0.999, std::to_string(searched) + " robust checks, max ratio " +
                                                     fmt(worst) + " (" + worst_id + "); diagonal eq111 ratio " +
                                                     fmt(diag)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"pointwise-robust suite, zero FAIL", robust_suite},
      {"sup-estimated checks, zero FAIL and zero SUSPECT", sup_suite},
      {"exhaustive ber equals brute-force enumeration", oracle_equivalence},
      {"Hardy shift symbol and kernel norm closed forms", closed_forms},
      {"square root and |T| against an independent SVD", functional_calculus},
      {"scalar and vector inequalities", scalar_layer},
      {"ber <= w <= ||A|| chain", chain},
      {"homogeneity and subadditivity on fixed samples", sample_algebra},
      {"verify output independent of --jobs", cli_determinism},
      {"sharpness search bounded by 1", sharpness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu  %s  %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
