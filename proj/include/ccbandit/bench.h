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

#ifndef CCBANDIT_BENCH_H_
#define CCBANDIT_BENCH_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccbandit/baselines.h"
#include "ccbandit/env.h"
#include "ccbandit/explore.h"
#include "ccbandit/optim.h"

namespace ccb {

// Experiment-style instance: q0 = 1/2, k intermediate contexts whose first
// m variables are never 1 (so their threshold is exactly m), and a single
// bumped reward arm do(X_0 = 1) at context 0 with mean 0.5 + eps. Transitions
// are LinearMix with tables Q_j(1) = point mass on context j mod k and
// Q_j(0) = uniform; do() is exactly uniform when n >= k.
// Requires 2 <= m <= n and 0 < eps <= 0.5.
CausalInstance GenPaperInstance(int n, int k, double eps, int m);

struct LowerBoundTarget {
  int context = 0;
  Intervention arm;
};

// Lower-bound family with n = k - 1: q0 = 0 and FirstOne transitions, so
// do(X_j = 1) reaches context j and everything else reaches context k - 1.
// Context i has its first min(m[i], n) variables fixed at 0 and the rest at
// 1/2. Rewards are 1/2 except the target arm at 1/2 + beta; beta = 0 gives
// the null instance. The target must be do(X_j = 1) with X_j fixed at 0.
CausalInstance GenLowerBoundInstance(int k, const LowerBoundTarget& target,
                                     double beta, std::span<const int> m);

// Every target accepted by GenLowerBoundInstance for these thresholds.
std::vector<LowerBoundTarget> LowerBoundTargets(int k, std::span<const int> m);

struct RandomInstanceOptions {
  double q_min = 0.05;
  double q_max = 0.95;
};

// A valid instance with every map variant drawn at random, including
// Lookup tables over random variable subsets.
CausalInstance GenRandomInstance(int n, int k, uint64_t seed,
                                 const RandomInstanceOptions& options = {});

// min{1/3, sqrt(sum(m) / (18 T))}.
double DefaultBeta(std::span<const double> m, int64_t budget);

// True thresholds m_1..m_k of the intermediate contexts.
Eigen::VectorXd TrueThresholds(const CausalInstance& inst);

// lambda of the true transition matrix and thresholds.
LambdaResult InstanceLambda(const CausalInstance& inst,
                            const SolverOptions& options = {});

// Exact policy values from the true matrices:
//   mu(pi) = sum_i P(pi(0), i) R(pi(i), i).
class RegretEvaluator {
 public:
  explicit RegretEvaluator(const CausalInstance& inst);

  double Value(const Policy& policy) const;
  double OptimalValue() const { return optimal_value_; }
  const Policy& optimal_policy() const { return optimal_; }
  // mu(pi*) - mu(pi), clamped at 0 against round-off.
  double Regret(const Policy& policy) const;

 private:
  int n_;
  int k_;
  Eigen::MatrixXd p_;
  Eigen::MatrixXd r_;
  Policy optimal_;
  double optimal_value_ = 0.0;
};

double SimpleRegret(const CausalInstance& inst, const Policy& policy);

enum class Algo { kConvExplore, kUnif, kUcb, kTs, kRrUcb, kRrTs };

// CLI names: convexplore, unif, ucb, ts, rr-ucb, rr-ts.
std::string AlgoName(Algo algo);
Algo ParseAlgo(const std::string& name);
std::vector<Algo> AllAlgos();

Policy RunAlgo(Algo algo, Environment& env, int64_t budget,
               const SolverOptions& options = {});

struct RunReport {
  Algo algo = Algo::kConvExplore;
  int64_t budget = 0;
  int k = 0;
  int n = 0;
  int m = 0;  // largest true intermediate threshold
  double lambda = 0.0;
  int runs = 0;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
  double prob_best = 0.0;
  double wall_seconds = 0.0;
  std::vector<double> regrets;  // per run, in run-index order
};

struct ExperimentOptions {
  int jobs = 1;
  SolverOptions solver;
};

// Run r explores a fresh Environment seeded DeriveSeed(master_seed, r).
// Runs are spread over `jobs` threads and reduced in run-index order, so
// the report does not depend on `jobs` (wall_seconds aside). A failing run
// aborts the experiment with an Error naming its index.
RunReport RunExperiment(const CausalInstance& inst, Algo algo, int64_t budget,
                        int runs, uint64_t master_seed,
                        const ExperimentOptions& options = {});

// Same, with lambda and thresholds supplied by the caller.
RunReport RunExperiment(const CausalInstance& inst, Algo algo, int64_t budget,
                        int runs, uint64_t master_seed, double lambda,
                        const ExperimentOptions& options = {});

enum class SweepAxis { kBudget, kLambda, kContexts };

SweepAxis ParseSweepAxis(const std::string& name);

// Every grid point builds GenPaperInstance(n, k, eps, m) with the swept
// quantity replaced: the budget, m (which moves lambda), or k.
struct SweepSpec {
  SweepAxis axis = SweepAxis::kBudget;
  std::vector<double> grid;
  int n = 10;
  int k = 10;
  double eps = 0.3;
  int m = 2;
  int64_t budget = 20000;
  int runs = 100;
  uint64_t seed = 0;
};

std::vector<RunReport> Sweep(const SweepSpec& spec,
                             const std::vector<Algo>& algos,
                             const ExperimentOptions& options = {});

// algo,T,k,n,m,lambda,runs,mean_regret,stderr,prob_best,wall_seconds
std::string CsvHeader();
// With `timing` false the wall_seconds column is written as 0, which makes
// the file a pure function of the inputs.
std::string CsvRow(const RunReport& report, bool timing = true);
void WriteCsv(std::ostream& out, std::span<const RunReport> reports,
              bool timing = true);

}  // namespace ccb

#endif  // CCBANDIT_BENCH_H_
