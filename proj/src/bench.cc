// Copyright 2026 The ccbandit Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccbandit/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <thread>

#include "ccbandit/thresholds.h"

namespace ccb {
namespace {

constexpr double kBestTolerance = 1e-12;

Eigen::VectorXd PointMass(int k, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
  v[i] = 1.0;
  return v;
}

Eigen::VectorXd Scalar(double value) {
  return Eigen::VectorXd::Constant(1, value);
}

Lookup ConstantReward(double value) { return Lookup{{}, {Scalar(value)}}; }

// Reward depending on one variable: `base` when it is 0, `bumped` when 1.
Lookup BumpedReward(int variable, double base, double bumped) {
  return Lookup{{variable}, {Scalar(base), Scalar(bumped)}};
}

std::vector<double> RecipeQ(int n, int zeros) {
  std::vector<double> q(n, 0.5);
  std::fill(q.begin(), q.begin() + std::min(zeros, n), 0.0);
  return q;
}

Eigen::VectorXd RandomDistribution(Rng& rng, int dim) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = -std::log(1.0 - rng.Uniform());
  return v / v.sum();
}

Eigen::VectorXd RandomOutcome(Rng& rng, OutcomeKind kind, int dim) {
  return kind == OutcomeKind::kScalar ? Scalar(rng.Uniform())
                                      : RandomDistribution(rng, dim);
}

StructuredMap RandomMap(Rng& rng, int n, OutcomeKind kind, int dim) {
  switch (rng.UniformInt(3)) {
    case 0: {
      LinearMix mix;
      const Eigen::VectorXd w = RandomDistribution(rng, n);
      mix.weights.assign(w.data(), w.data() + n);
      for (int j = 0; j < n; ++j) {
        mix.tables.push_back(
            {RandomOutcome(rng, kind, dim), RandomOutcome(rng, kind, dim)});
      }
      return mix;
    }
    case 1: {
      FirstOne first;
      for (int j = 0; j < n; ++j) {
        first.outcomes.push_back(RandomOutcome(rng, kind, dim));
      }
      first.fallback = RandomOutcome(rng, kind, dim);
      return first;
    }
    default: {
      Lookup lookup;
      std::vector<int> all(n);
      for (int j = 0; j < n; ++j) all[j] = j;
      for (int j = n - 1; j > 0; --j) {
        std::swap(all[j], all[rng.UniformInt(j + 1)]);
      }
      const int size = 1 + rng.UniformInt(std::min(n, 4));
      lookup.variables.assign(all.begin(), all.begin() + size);
      for (int r = 0; r < (1 << size); ++r) {
        lookup.table.push_back(RandomOutcome(rng, kind, dim));
      }
      return lookup;
    }
  }
}

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void RequireIncreasing(const std::vector<double>& grid) {
  if (grid.empty()) throw Error("sweep: grid is empty");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error("sweep: grid must be strictly increasing");
    }
  }
}

int GridInt(double v, const char* what) {
  if (v != std::floor(v)) {
    throw Error(std::string("sweep: ") + what + " grid values must be integers");
  }
  return static_cast<int>(v);
}

}  // namespace

CausalInstance GenPaperInstance(int n, int k, double eps, int m) {
  if (k < 1) throw Error("gen_paper_instance: k must be at least 1");
  if (m < 2 || m > n) {
    throw Error("gen_paper_instance: m must lie in [2, n]");
  }
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw Error("gen_paper_instance: eps must lie in (0, 0.5]");
  }
  CausalInstance inst;
  inst.k = k;
  inst.n = n;
  inst.q0.assign(n, 0.5);

  std::vector<int> per_context(k, 0);
  for (int j = 0; j < n; ++j) ++per_context[j % k];
  LinearMix mix;
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(k, 1.0 / k);
  for (int j = 0; j < n; ++j) {
    mix.weights.push_back(n >= k ? 1.0 / (k * per_context[j % k]) : 1.0 / n);
    mix.tables.push_back({uniform, PointMass(k, j % k)});
  }
  inst.transition_map = std::move(mix);

  for (int i = 0; i < k; ++i) {
    ContextModel ctx;
    ctx.q = RecipeQ(n, m);
    ctx.reward_map =
        i == 0 ? StructuredMap(BumpedReward(0, 0.5, 0.5 + eps))
               : StructuredMap(ConstantReward(0.5));
    inst.contexts.push_back(std::move(ctx));
  }
  return inst;
}

std::vector<LowerBoundTarget> LowerBoundTargets(int k, std::span<const int> m) {
  std::vector<LowerBoundTarget> targets;
  const int n = k - 1;
  if (static_cast<int>(m.size()) != k) return targets;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < std::min(m[i], n); ++j) {
      targets.push_back({i, Intervention::Set(j, 1)});
    }
  }
  return targets;
}

CausalInstance GenLowerBoundInstance(int k, const LowerBoundTarget& target,
                                     double beta, std::span<const int> m) {
  if (k < 2) throw Error("gen_lower_bound_instance: k must be at least 2");
  if (static_cast<int>(m.size()) != k) {
    throw Error("gen_lower_bound_instance: need one threshold per context");
  }
  if (!(beta >= 0.0 && beta <= 1.0 / 3.0)) {
    throw Error("gen_lower_bound_instance: beta must lie in [0, 1/3]");
  }
  const int n = k - 1;
  CausalInstance inst;
  inst.k = k;
  inst.n = n;
  inst.q0.assign(n, 0.0);
  FirstOne first;
  for (int j = 0; j < n; ++j) first.outcomes.push_back(PointMass(k, j));
  first.fallback = PointMass(k, k - 1);
  inst.transition_map = std::move(first);

  for (int i = 0; i < k; ++i) {
    ContextModel ctx;
    ctx.q = RecipeQ(n, m[i]);
    const int achieved = CausalThreshold(ctx.q).m;
    if (achieved != m[i]) {
      throw Error("gen_lower_bound_instance: threshold " +
                  std::to_string(m[i]) + " at context " + std::to_string(i) +
                  " is not reachable with n = " + std::to_string(n) +
                  " variables (got " + std::to_string(achieved) + ")");
    }
    ctx.reward_map = ConstantReward(0.5);
    inst.contexts.push_back(std::move(ctx));
  }

  if (target.context < 0 || target.context >= k) {
    throw Error("gen_lower_bound_instance: target context out of range");
  }
  const Intervention arm = target.arm;
  ContextModel& ctx = inst.contexts[target.context];
  if (arm.is_do_nothing() || !arm.valid_for(n) || arm.value() != 1 ||
      ctx.q[arm.variable()] != 0.0) {
    throw Error(
        "gen_lower_bound_instance: target arm must be do(X_j = 1) for a "
        "variable with q = 0 at the target context, so that conditioning "
        "and intervening agree");
  }
  ctx.reward_map = BumpedReward(arm.variable(), 0.5, 0.5 + beta);
  return inst;
}

CausalInstance GenRandomInstance(int n, int k, uint64_t seed,
                                 const RandomInstanceOptions& options) {
  if (n < 1 || k < 1) throw Error("gen_random_instance: need n, k >= 1");
  if (!(options.q_min >= 0.0 && options.q_min <= options.q_max &&
        options.q_max <= 1.0)) {
    throw Error("gen_random_instance: bad q range");
  }
  Rng rng(seed);
  auto draw_q = [&]() {
    std::vector<double> q(n);
    for (double& v : q) {
      v = options.q_min + (options.q_max - options.q_min) * rng.Uniform();
    }
    return q;
  };
  CausalInstance inst;
  inst.k = k;
  inst.n = n;
  inst.q0 = draw_q();
  inst.transition_map = RandomMap(rng, n, OutcomeKind::kDistribution, k);
  for (int i = 0; i < k; ++i) {
    ContextModel ctx;
    ctx.q = draw_q();
    ctx.reward_map = RandomMap(rng, n, OutcomeKind::kScalar, 1);
    inst.contexts.push_back(std::move(ctx));
  }
  return inst;
}

double DefaultBeta(std::span<const double> m, int64_t budget) {
  if (budget < 1) throw Error("default_beta: budget must be at least 1");
  double total = 0.0;
  for (double v : m) {
    if (v < 2.0) throw Error("default_beta: thresholds must be at least 2");
    total += v;
  }
  return std::min(1.0 / 3.0,
                  std::sqrt(total / (18.0 * static_cast<double>(budget))));
}

Eigen::VectorXd TrueThresholds(const CausalInstance& inst) {
  Eigen::VectorXd m(inst.k);
  for (int i = 0; i < inst.k; ++i) {
    m[i] = CausalThreshold(inst.contexts[i].q).m;
  }
  return m;
}

LambdaResult InstanceLambda(const CausalInstance& inst,
                            const SolverOptions& options) {
  return LambdaOf(TrueTransitionMatrix(inst), TrueThresholds(inst), options);
}

RegretEvaluator::RegretEvaluator(const CausalInstance& inst)
    : n_(inst.n),
      k_(inst.k),
      p_(TrueTransitionMatrix(inst)),
      r_(TrueRewardMatrix(inst)),
      optimal_(GreedyPolicy(p_, r_)),
      optimal_value_(Value(optimal_)) {}

double RegretEvaluator::Value(const Policy& policy) const {
  if (!policy.ValidFor(n_, k_)) throw Error("policy does not fit instance");
  double value = 0.0;
  const int start = policy.start.index();
  for (int i = 0; i < k_; ++i) {
    value += p_(start, i) * r_(policy.contexts[i].index(), i);
  }
  return value;
}

double RegretEvaluator::Regret(const Policy& policy) const {
  return std::max(0.0, optimal_value_ - Value(policy));
}

double SimpleRegret(const CausalInstance& inst, const Policy& policy) {
  return RegretEvaluator(inst).Regret(policy);
}

std::string AlgoName(Algo algo) {
  switch (algo) {
    case Algo::kConvExplore:
      return "convexplore";
    case Algo::kUnif:
      return "unif";
    case Algo::kUcb:
      return "ucb";
    case Algo::kTs:
      return "ts";
    case Algo::kRrUcb:
      return "rr-ucb";
    case Algo::kRrTs:
      return "rr-ts";
  }
  throw Error("unknown algorithm");
}

std::vector<Algo> AllAlgos() {
  return {Algo::kConvExplore, Algo::kUnif, Algo::kUcb,
          Algo::kTs,          Algo::kRrUcb, Algo::kRrTs};
}

Algo ParseAlgo(const std::string& name) {
  for (Algo algo : AllAlgos()) {
    if (AlgoName(algo) == name) return algo;
  }
  throw Error("unknown algorithm '" + name + "'");
}

Policy RunAlgo(Algo algo, Environment& env, int64_t budget,
               const SolverOptions& options) {
  switch (algo) {
    case Algo::kConvExplore:
      return ConvExplore(env, budget, options).policy;
    case Algo::kUnif:
      return UnifExplore(env, budget);
    case Algo::kUcb:
      return BaselineExplore(BaselineKind::kUcbBoth, env, budget);
    case Algo::kTs:
      return BaselineExplore(BaselineKind::kTsBoth, env, budget);
    case Algo::kRrUcb:
      return BaselineExplore(BaselineKind::kRoundRobinStartUcb, env, budget);
    case Algo::kRrTs:
      return BaselineExplore(BaselineKind::kRoundRobinStartTs, env, budget);
  }
  throw Error("unknown algorithm");
}

RunReport RunExperiment(const CausalInstance& inst, Algo algo, int64_t budget,
                        int runs, uint64_t master_seed,
                        const ExperimentOptions& options) {
  return RunExperiment(inst, algo, budget, runs, master_seed,
                       InstanceLambda(inst, options.solver).lambda, options);
}

RunReport RunExperiment(const CausalInstance& inst, Algo algo, int64_t budget,
                        int runs, uint64_t master_seed, double lambda,
                        const ExperimentOptions& options) {
  if (runs < 1) throw Error("run_experiment: runs must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  const RegretEvaluator evaluator(inst);

  std::vector<double> regrets(runs, 0.0);
  std::vector<std::optional<std::string>> failures(runs);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (int r = next++; r < runs && !failed; r = next++) {
      try {
        Environment env(inst, DeriveSeed(master_seed, r));
        regrets[r] =
            evaluator.Regret(RunAlgo(algo, env, budget, options.solver));
      } catch (const std::exception& e) {
        failures[r] = e.what();
        failed = true;
      }
    }
  };
  const int jobs = std::clamp(options.jobs, 1, runs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (int r = 0; r < runs; ++r) {
    if (failures[r]) {
      throw Error("run_experiment: run " + std::to_string(r) +
                  " failed: " + *failures[r]);
    }
  }

  RunReport report;
  report.algo = algo;
  report.budget = budget;
  report.k = inst.k;
  report.n = inst.n;
  report.m = static_cast<int>(TrueThresholds(inst).maxCoeff());
  report.lambda = lambda;
  report.runs = runs;
  double sum = 0.0;
  int best = 0;
  for (double x : regrets) {
    sum += x;
    if (x <= kBestTolerance) ++best;
  }
  report.mean_regret = sum / runs;
  if (runs > 1) {
    double ss = 0.0;
    for (double x : regrets) {
      ss += (x - report.mean_regret) * (x - report.mean_regret);
    }
    report.stderr_regret = std::sqrt(ss / (runs - 1) / runs);
  }
  report.prob_best = static_cast<double>(best) / runs;
  report.regrets = std::move(regrets);
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  return report;
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "budget") return SweepAxis::kBudget;
  if (name == "lambda") return SweepAxis::kLambda;
  if (name == "contexts") return SweepAxis::kContexts;
  throw Error("unknown sweep axis '" + name + "'");
}

std::vector<RunReport> Sweep(const SweepSpec& spec,
                             const std::vector<Algo>& algos,
                             const ExperimentOptions& options) {
  if (algos.empty()) throw Error("sweep: no algorithms given");
  RequireIncreasing(spec.grid);
  std::vector<RunReport> reports;
  for (double v : spec.grid) {
    int64_t budget = spec.budget;
    int k = spec.k;
    int m = spec.m;
    switch (spec.axis) {
      case SweepAxis::kBudget:
        budget = GridInt(v, "budget");
        break;
      case SweepAxis::kLambda:
        m = GridInt(v, "m");
        break;
      case SweepAxis::kContexts:
        k = GridInt(v, "k");
        break;
    }
    const CausalInstance inst = GenPaperInstance(spec.n, k, spec.eps, m);
    const double lambda = InstanceLambda(inst, options.solver).lambda;
    for (Algo algo : algos) {
      reports.push_back(RunExperiment(inst, algo, budget, spec.runs, spec.seed,
                                      lambda, options));
    }
  }
  return reports;
}

std::string CsvHeader() {
  return "algo,T,k,n,m,lambda,runs,mean_regret,stderr,prob_best,wall_seconds";
}

std::string CsvRow(const RunReport& r, bool timing) {
  return AlgoName(r.algo) + "," + std::to_string(r.budget) + "," +
         std::to_string(r.k) + "," + std::to_string(r.n) + "," +
         std::to_string(r.m) + "," + FormatDouble(r.lambda) + "," +
         std::to_string(r.runs) + "," + FormatDouble(r.mean_regret) + "," +
         FormatDouble(r.stderr_regret) + "," + FormatDouble(r.prob_best) +
         "," + FormatDouble(timing ? r.wall_seconds : 0.0);
}

void WriteCsv(std::ostream& out, std::span<const RunReport> reports,
              bool timing) {
  out << CsvHeader() << "\n";
  for (const RunReport& r : reports) out << CsvRow(r, timing) << "\n";
}

}  // namespace ccb
