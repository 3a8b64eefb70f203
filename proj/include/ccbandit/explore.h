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

#ifndef CCBANDIT_EXPLORE_H_
#define CCBANDIT_EXPLORE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccbandit/env.h"
#include "ccbandit/intervention.h"
#include "ccbandit/optim.h"
#include "ccbandit/thresholds.h"

namespace ccb {

// pi(0) and pi(i) for every intermediate context.
struct Policy {
  Intervention start;
  std::vector<Intervention> contexts;

  bool ValidFor(int n, int k) const;
  std::string ToString() const;
  bool operator==(const Policy&) const = default;
};

// pi(i) = argmax_a R(a,i); pi(0) = argmax_b sum_i P(b,i) R(pi(i),i).
// Ties (within 1e-12) go to the lowest canonical index.
Policy GreedyPolicy(const Eigen::MatrixXd& p_hat,
                    const Eigen::MatrixXd& r_hat);

// Rounds per intervention for a budget split by f: floor(f_a * budget),
// with the remainder added to do().
std::vector<int64_t> AllocateRounds(const FrequencyVector& f, int64_t budget);

struct TransitionEstimate {
  Eigen::MatrixXd p_hat;          // N x k
  std::vector<bool> never_pulled;  // rows left at zero
  ThresholdResult start_threshold;  // m0_hat and the rare set at context 0
};

// Half the budget on do() (observational rows for every non-rare
// intervention), the other half split evenly over the rare set at
// context 0. Requires budget >= 2N.
TransitionEstimate EstimateTransitions(Environment& env, int64_t budget);

struct CausalEstimate {
  Eigen::VectorXd m_hat;       // length k
  std::vector<bool> unvisited;  // contexts never reached; m_hat = 2 there
};

inline constexpr int kDefaultThreshold = 2;

// Start interventions mixed as (f_tilde + uniform) / 2; do() at every
// reached context. Requires budget >= N.
CausalEstimate EstimateCausalParams(Environment& env,
                                    const FrequencyVector& f_tilde,
                                    int64_t budget);

struct RewardEstimate {
  Eigen::MatrixXd r_hat;  // N x k; 0 where never observed
  std::vector<std::vector<Intervention>> rare_sets;  // per context
  std::vector<std::vector<bool>> observed;           // [a][i]
};

// Start interventions mixed as (f_star + f_tilde + uniform) / 3. First half:
// do() at the reached context, observational reward means for every arm
// outside the context's rare set. Second half: round-robin over the rare
// set. Requires budget >= 2N.
RewardEstimate EstimateRewards(Environment& env, const FrequencyVector& f_star,
                               const FrequencyVector& f_tilde,
                               const Eigen::VectorXd& m_hat, int64_t budget);

struct PhaseLedger {
  int64_t transitions = 0;
  int64_t causal = 0;
  int64_t rewards = 0;

  int64_t total() const { return transitions + causal + rewards; }
};

struct EstimationState {
  Eigen::MatrixXd p_hat;
  std::vector<bool> never_pulled;
  int m0_hat = 2;
  std::vector<Intervention> rare0;
  Eigen::VectorXd m_hat;
  std::vector<bool> unvisited;
  Eigen::MatrixXd r_hat;
  std::vector<std::vector<Intervention>> rare_sets;
  FrequencyVector f_tilde;
  FrequencyVector f_star;
  double minmax_objective = 0.0;
  bool minmax_cap_reached = false;
  RoundCounts counts{1, 1};
  PhaseLedger ledger;
};

struct ExploreResult {
  Policy policy;
  EstimationState state;
};

// Three equal phases (remainder to the reward phase). Requires T >= 6N.
ExploreResult ConvExplore(Environment& env, int64_t budget,
                          const SolverOptions& options = {});
ExploreResult ConvExplore(const CausalInstance& inst, int64_t budget,
                          uint64_t seed, const SolverOptions& options = {});

}  // namespace ccb

#endif  // CCBANDIT_EXPLORE_H_
