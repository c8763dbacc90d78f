#include "berezin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "berezin/error.hpp"

#ifndef BEREZIN_VERSION
#define BEREZIN_VERSION "0.0.0"
#endif

namespace berezin {

namespace {

struct Job {
  std::size_t check;
  SpaceFamily family;
  std::size_t dim;
  std::size_t index;
};

struct Outcome {
  Status status = Status::Pass;
  bool error = false;
  double slack = 0.0;
  double ratio = 0.0;
  std::string digest;
  bool literal_violation = false;
};

Outcome run_one(const std::string& id, const Job& job, const TrialConfig& config) {
  Outcome out;
  try {
    const Instance inst = make_instance(id, config, job.family, job.dim, job.index);
    const InequalityCheck check = evaluate(inst, config);
    out.status = check.status;
    out.slack = std::min(check.slack, check.worst_pointwise_slack);
    out.ratio = check.ratio();
    out.digest = witness_digest(check.witness);
    const auto it = check.notes.find("literal_reading_holds");
    out.literal_violation = it != check.notes.end() && it->second == 0.0;
  } catch (const Error&) {
    out.status = Status::Fail;
    out.error = true;
  }
  return out;
}

}  // namespace

Report run_suite(const TrialConfig& config, const std::vector<std::string>& check_ids) {
  validate_config(config);
  if (check_ids.empty()) throw Error(ErrorKind::BadConfig, "empty check list");
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& id : check_ids) {
    checker_info(id);
    parameter_grid(id, config);
    if (seen.insert(id).second) ids.push_back(id);
  }

  const auto started = std::chrono::steady_clock::now();
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < ids.size(); ++c)
    for (auto fam : config.families)
      for (auto dim : config.dims)
        for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({c, fam, dim, t});

  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) outcomes[k] = run_one(ids[jobs[k].check], jobs[k], config);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Report report;
  report.version = BEREZIN_VERSION;
  report.seed = config.seed;
  report.config = config;
  for (std::size_t c = 0; c < ids.size(); ++c) {
    CheckAggregate agg;
    agg.min_slack = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t counted = 0;
    bool have_ratio = false;
    std::size_t literal = 0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      if (jobs[k].check != c) continue;
      const Outcome& o = outcomes[k];
      ++agg.trials;
      switch (o.status) {
        case Status::Pass: ++agg.pass; break;
        case Status::Suspect: ++agg.suspect; break;
        case Status::Fail: ++agg.fail; break;
      }
      if (o.error) {
        ++agg.errors;
        continue;
      }
      agg.min_slack = std::min(agg.min_slack, o.slack);
      sum += o.slack;
      ++counted;
      if (!have_ratio || o.ratio > agg.max_ratio) {
        agg.max_ratio = o.ratio;
        agg.witness_digest = o.digest;
        have_ratio = true;
      }
      if (o.literal_violation) ++literal;
    }
    if (counted == 0) agg.min_slack = 0.0;
    agg.mean_slack = counted > 0 ? sum / static_cast<double>(counted) : 0.0;
    if (ids[c] == "heinz") agg.literal_violations = literal;
    report.checks[ids[c]] = agg;
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

SharpnessResult sharpness_search(std::string_view id, const TrialConfig& config, int steps) {
  validate_config(config);
  if (steps < 0) throw Error(ErrorKind::BadConfig, "steps must be >= 0");
  Instance best_inst = make_instance(id, config, config.families.front(), config.dims.front(), 0);

  SharpnessResult result;
  result.check_id = std::string(id);
  result.best = evaluate(best_inst, config);
  result.best_ratio = result.best.ratio();

  std::mt19937_64 rng(trial_seed(config.seed, id, config.families.front(), config.dims.front(), 0) ^
                      0x5bd1e995ULL);
  std::normal_distribution<double> gauss;
  double step = 0.5;
  int stall = 0;
  for (int s = 0; s < steps; ++s) {
    Instance cand = best_inst;
    for (std::size_t i = 0; i < cand.draws.size(); ++i) {
      const bool real_only = cand.recipes[i].kind == OperatorKind::ScalarBox;
      Matrix& raw = cand.draws[i].raw;
      for (std::size_t r = 0; r < raw.rows(); ++r) {
        for (std::size_t c = 0; c < raw.cols(); ++c) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          raw(r, c) += step * Complex(re, real_only ? 0.0 : im);
        }
      }
    }
    bool improved = false;
    try {
      InequalityCheck check = evaluate(cand, config);
      const double ratio = check.ratio();
      if (ratio > result.best_ratio) {
        result.best_ratio = ratio;
        result.best = std::move(check);
        best_inst = std::move(cand);
        improved = true;
      }
    } catch (const Error&) {
      // an unusable perturbation counts as a non-improvement
    }
    if (improved) {
      stall = 0;
    } else if (++stall >= 10) {
      step *= 0.5;
      stall = 0;
    }
    result.trajectory.push_back(result.best_ratio);
  }
  result.witness = realize_all(best_inst);
  return result;
}

}  // namespace berezin
