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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Each criterion also has to finish inside its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ccbandit/bench.h"
#include "ccbandit/env.h"
#include "ccbandit/optim.h"
#include "ccbandit/rng.h"
#include "ccbandit/thresholds.h"
#include "oracles.h"

namespace ccb {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

constexpr uint64_t kMasterSeed = 20260101;
constexpr int kRuns = 500;
constexpr int64_t kBudget = 20000;

// Shared by criteria 5, 7 and 8.
struct Reference {
  CausalInstance inst = GenPaperInstance(10, 10, 0.3, 2);
  std::vector<RunReport> serial;  // all algorithms, jobs = 1
};

Reference& Ref() {
  static Reference ref;
  return ref;
}

Outcome LambdaClosedForm() {
  Rng rng(1);
  double worst = 0.0;
  int cases = 0;
  for (int k : {3, 5, 10, 20}) {
    const int hi = std::min(8, k - 1);
    for (int draw = 0; draw < 5; ++draw) {
      std::vector<int> m(k);
      double sum = 0;
      for (int& v : m) {
        v = 2 + rng.UniformInt(hi - 1);
        sum += v;
      }
      const auto targets = LowerBoundTargets(k, m);
      const CausalInstance inst = GenLowerBoundInstance(
          k, targets[rng.UniformInt(static_cast<int>(targets.size()))], 0.2, m);
      worst = std::max(worst, std::abs(InstanceLambda(inst).lambda - sum));
      ++cases;
      // The thresholds on the full {2..8} range, set directly on the same
      // transition matrix.
      Eigen::VectorXd wide(k);
      for (int i = 0; i < k; ++i) wide[i] = 2 + rng.UniformInt(7);
      const double direct =
          LambdaOf(TrueTransitionMatrix(inst), wide).lambda;
      worst = std::max(worst, std::abs(direct - wide.sum()));
      ++cases;
    }
  }
  return {worst <= 0.1,
          Fmt("%.0f cases, max |lambda - sum m| = %.3g", cases, worst)};
}

Outcome SolverOracle() {
  double worst_minmax = 0.0;
  double worst_maximin = 0.0;
  for (int t = 0; t < 50; ++t) {
    Rng rng(DeriveSeed(2, t));
    const int n = 1 + rng.UniformInt(2);
    const int k = 2 + rng.UniformInt(2);
    const CausalInstance inst = GenRandomInstance(n, k, DeriveSeed(3, t));
    const Eigen::MatrixXd p = TrueTransitionMatrix(inst);
    const int num = static_cast<int>(p.rows());
    Eigen::VectorXd m(k);
    for (int i = 0; i < k; ++i) m[i] = 2 + rng.UniformInt(2 * n - 1);

    const double grid_min = oracle::GridMinimum(
        num, [&](const Eigen::VectorXd& f) {
          return oracle::MinmaxObjective(p, m, f);
        });
    const double solved = ConvexMinmax(p, m).objective;
    worst_minmax = std::max(worst_minmax, std::abs(solved - grid_min) / grid_min);

    const double grid_max = -oracle::GridMinimum(
        num, [&](const Eigen::VectorXd& f) {
          return oracle::NegMaximinObjective(p, f);
        });
    const double lp = MaximinLp(p).value;
    worst_maximin =
        std::max(worst_maximin, std::abs(lp - grid_max) / grid_max);
  }
  return {worst_minmax <= 1e-3 && worst_maximin <= 1e-3,
          Fmt("50 instances, max rel gap minmax %.2e, maximin %.2e",
              worst_minmax, worst_maximin)};
}

double Tv(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0.0;
  for (size_t i = 0; i < a.size(); ++i) tv += 0.5 * std::abs(a[i] - b[i]);
  return tv;
}

Outcome EnvironmentConsistency() {
  std::vector<CausalInstance> instances;
  double worst_exact = 0.0;
  for (int s = 0; s < 20; ++s) {
    Rng rng(DeriveSeed(4, s));
    const int n = 1 + rng.UniformInt(5);
    const int k = 2 + rng.UniformInt(3);
    instances.push_back(GenRandomInstance(n, k, DeriveSeed(5, s)));
    const CausalInstance& inst = instances.back();
    if (!ValidateInstance(inst).ok) return {false, "generator produced invalid instance"};
    const Eigen::MatrixXd p = TrueTransitionMatrix(inst);
    const Eigen::MatrixXd r = TrueRewardMatrix(inst);
    for (int j = 0; j < n; ++j) {
      for (int x = 0; x < 2; ++x) {
        const int a = Intervention::Set(j, x).index();
        const Eigen::VectorXd cond =
            oracle::Conditional(inst.transition_map, inst.q0, j, x, k);
        worst_exact = std::max(
            worst_exact, (cond.transpose() - p.row(a)).cwiseAbs().maxCoeff());
        for (int i = 0; i < k; ++i) {
          const double rc = oracle::Conditional(inst.contexts[i].reward_map,
                                                inst.contexts[i].q, j, x, 1)[0];
          worst_exact = std::max(worst_exact, std::abs(rc - r(a, i)));
        }
      }
    }
  }

  const int trials = 200;
  const int samples = 100000;
  int good = 0;
  double worst_tv = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CausalInstance& inst = instances[t % 20];
    Rng rng(DeriveSeed(6, t));
    const int j = rng.UniformInt(inst.n);
    const int x = rng.UniformInt(2);
    const Intervention a = Intervention::Set(j, x);
    std::vector<double> cond;
    std::vector<double> interv;
    if (t % 2 == 0) {
      // Reached-context law: do() rounds filtered on X_j = x against rounds
      // that force X_j = x.
      cond.assign(inst.k, 0.0);
      interv.assign(inst.k, 0.0);
      const auto keep = [](int) { return Intervention::DoNothing(); };
      double kept = 0;
      for (int s = 0; s < samples; ++s) {
        const Observation o = SampleRound(inst, rng, Intervention::DoNothing(), keep);
        if (o.start_realization[j] == x) {
          cond[o.context] += 1;
          kept += 1;
        }
        interv[SampleRound(inst, rng, a, keep).context] += 1.0 / samples;
      }
      for (double& v : cond) v /= kept;
    } else {
      // Reward law at one context, sampled the same two ways.
      const int i = rng.UniformInt(inst.k);
      const ContextModel& ctx = inst.contexts[i];
      std::vector<uint8_t> xs(inst.n);
      double kept = 0, kept_reward = 0, forced_reward = 0;
      for (int s = 0; s < samples; ++s) {
        for (int l = 0; l < inst.n; ++l) xs[l] = rng.Bernoulli(ctx.q[l]);
        const bool reward = rng.Bernoulli(ScalarAt(ctx.reward_map, xs));
        if (xs[j] == x) {
          kept += 1;
          kept_reward += reward;
        }
        for (int l = 0; l < inst.n; ++l) xs[l] = rng.Bernoulli(ctx.q[l]);
        xs[j] = static_cast<uint8_t>(x);
        forced_reward += rng.Bernoulli(ScalarAt(ctx.reward_map, xs));
      }
      cond = {kept_reward / kept, 1 - kept_reward / kept};
      interv = {forced_reward / samples, 1 - forced_reward / samples};
    }
    const double tv = Tv(cond, interv);
    worst_tv = std::max(worst_tv, tv);
    good += tv <= 0.03;
  }
  return {worst_exact <= 1e-12 && good >= 0.95 * trials,
          Fmt("exact max gap %.2e; TV <= 0.03 in %.0f/%.0f trials (max %.4f)",
              worst_exact, good, trials, worst_tv)};
}

// Distance from p to the nearest 1/tau boundary, tau in [2, 2n].
double Margin(double p, int n) {
  double d = 1.0;
  for (int tau = 2; tau <= 2 * n; ++tau) d = std::min(d, std::abs(p - 1.0 / tau));
  return d;
}

Outcome ThresholdConcentration() {
  Rng rng(7);
  const int trials = 1000;
  int good = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + rng.UniformInt(9);
    std::vector<double> q(n);
    for (double& v : q) {
      while (true) {
        switch (rng.UniformInt(4)) {
          case 0: v = 0.0; break;
          case 1: v = 1.0; break;
          case 2: v = 0.39 + 0.05 * rng.Uniform(); break;
          default: v = 0.56 + 0.05 * rng.Uniform(); break;
        }
        if (Margin(v, n) >= 0.05 - 1e-12 && Margin(1 - v, n) >= 0.05 - 1e-12) {
          break;
        }
      }
    }
    const int m = CausalThreshold(q).m;
    BernoulliTally tally(n);
    std::vector<uint8_t> x(n);
    for (int s = 0; s < 5000; ++s) {
      for (int j = 0; j < n; ++j) x[j] = rng.Bernoulli(q[j]);
      tally.Add(x);
    }
    const int m_hat = CausalThreshold(tally.Mean()).m;
    good += m_hat >= 2.0 * m / 3.0 && m_hat <= 2 * m;
  }
  return {good >= 0.95 * trials,
          Fmt("m_hat in [2m/3, 2m] in %.0f/%.0f trials", good, trials)};
}

const RunReport& Find(const std::vector<RunReport>& reports, Algo algo) {
  for (const RunReport& r : reports) {
    if (r.algo == algo) return r;
  }
  throw Error("missing report");
}

Outcome RegretDominance() {
  Reference& ref = Ref();
  for (Algo algo : AllAlgos()) {
    ref.serial.push_back(
        RunExperiment(ref.inst, algo, kBudget, kRuns, kMasterSeed));
  }
  const RunReport& conv = Find(ref.serial, Algo::kConvExplore);
  bool pass = conv.mean_regret <= 0.8 * Find(ref.serial, Algo::kUnif).mean_regret;
  std::ostringstream os;
  os.precision(4);
  for (const RunReport& r : ref.serial) {
    pass = pass && conv.mean_regret <= r.mean_regret;
    os << AlgoName(r.algo) << "=" << r.mean_regret << " ";
  }
  return {pass, "mean regret " + os.str()};
}

Outcome ScalingShapes() {
  ExperimentOptions options;
  const CausalInstance& inst = Ref().inst;
  bool pass = true;
  std::ostringstream os;
  os.precision(4);
  os << "T:";
  double prev = 0, prev_se = 0;
  bool first = true;
  for (int64_t t : {2000, 5000, 10000, 20000}) {
    const RunReport r =
        RunExperiment(inst, Algo::kConvExplore, t, kRuns, kMasterSeed, options);
    os << " " << r.mean_regret;
    if (!first) {
      pass = pass && r.mean_regret <=
                         prev + 2 * std::hypot(prev_se, r.stderr_regret);
    }
    first = false;
    prev = r.mean_regret;
    prev_se = r.stderr_regret;
  }
  os << "; m (lambda):";
  first = true;
  for (int m : {2, 4, 8}) {
    const CausalInstance scaled = GenPaperInstance(10, 10, 0.3, m);
    const RunReport r = RunExperiment(scaled, Algo::kConvExplore, kBudget,
                                      kRuns, kMasterSeed, options);
    os << " " << m << " (" << r.lambda << ") " << r.mean_regret;
    if (!first) {
      pass = pass && r.mean_regret >=
                         prev - 2 * std::hypot(prev_se, r.stderr_regret);
    }
    first = false;
    prev = r.mean_regret;
    prev_se = r.stderr_regret;
  }
  return {pass, os.str()};
}

Outcome ProbabilityOfBest() {
  const CausalInstance& inst = Ref().inst;
  bool pass = true;
  std::ostringstream os;
  os.precision(4);
  double prev = 0, prev_se = 0;
  bool first = true;
  double last = 0;
  for (int64_t t : {2000, 5000, 10000, 20000}) {
    const RunReport r =
        RunExperiment(inst, Algo::kConvExplore, t, kRuns, kMasterSeed);
    const double se = std::sqrt(r.prob_best * (1 - r.prob_best) / r.runs);
    os << "T=" << t << ":" << r.prob_best << " ";
    if (!first) pass = pass && r.prob_best >= prev - 2 * std::hypot(prev_se, se);
    first = false;
    prev = r.prob_best;
    prev_se = se;
    last = r.prob_best;
  }
  return {pass && last >= 0.8, "prob_best " + os.str()};
}

Outcome Determinism() {
  Reference& ref = Ref();
  ExperimentOptions parallel;
  parallel.jobs = 8;
  std::vector<RunReport> threaded;
  for (Algo algo : AllAlgos()) {
    threaded.push_back(
        RunExperiment(ref.inst, algo, kBudget, kRuns, kMasterSeed, parallel));
  }
  std::ostringstream a, b;
  WriteCsv(a, ref.serial, false);
  WriteCsv(b, threaded, false);
  return {a.str() == b.str(),
          Fmt("jobs 1 vs 8: %.0f bytes each, identical=%.0f",
              static_cast<double>(a.str().size()), a.str() == b.str())};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace ccb

int main() {
  using namespace ccb;
  const std::vector<Criterion> criteria = {
      {1, "lambda closed form on the lower-bound family", 10, LambdaClosedForm},
      {2, "solver matches simplex grid oracle", 60, SolverOracle},
      {3, "conditioning equals intervening", 120, EnvironmentConsistency},
      {4, "threshold concentration", 30, ThresholdConcentration},
      {5, "regret dominance over baselines", 600, RegretDominance},
      {6, "regret scaling in T and lambda", 900, ScalingShapes},
      {7, "probability of best policy", 900, ProbabilityOfBest},
      {8, "parallel determinism", 600, Determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %d: %s | %s | %.1fs (limit %.0fs)\n",
                pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs,
                c.limit_seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
