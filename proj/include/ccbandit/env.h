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

#ifndef CCBANDIT_ENV_H_
#define CCBANDIT_ENV_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccbandit/intervention.h"
#include "ccbandit/rng.h"
#include "ccbandit/structured_map.h"

namespace ccb {

// N x k. Row a is the distribution of the reached context under start
// intervention a (canonical order).
using TransitionMatrix = Eigen::MatrixXd;
// N x k. Entry (a, i) is E[R_i | a] at intermediate context i.
using RewardMatrix = Eigen::MatrixXd;

struct ContextModel {
  std::vector<double> q;  // P{X_j = 1} at this context.
  StructuredMap reward_map;
};

// Two-layer causal bandit over parallel graphs: every context holds n
// independent Bernoulli variables. Contexts are 0-based in code; context i
// here is context i+1 in the usual 1-based notation.
struct CausalInstance {
  int k = 0;
  int n = 0;
  std::vector<double> q0;
  StructuredMap transition_map;
  std::vector<ContextModel> contexts;

  int num_interventions() const { return NumInterventions(n); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  // Largest |E[outcome | X_j = x] - E[outcome | do(X_j = x)]| over every
  // map, variable and value with P{X_j = x} > 0.
  double max_identity_violation = 0.0;
  // Largest |row(do()) - q_j row(do(X_j=1)) - (1-q_j) row(do(X_j=0))|.
  double max_marginal_violation = 0.0;
};

ValidationReport ValidateInstance(const CausalInstance& inst);

// Throws Error listing the violations when the instance is invalid.
void RequireValid(const CausalInstance& inst);

TransitionMatrix TrueTransitionMatrix(const CausalInstance& inst);
RewardMatrix TrueRewardMatrix(const CausalInstance& inst);

// Minimum strictly positive entry. Throws on an all-zero matrix.
double TransitionThreshold(const TransitionMatrix& p);

struct Observation {
  Intervention start_intervention;
  std::vector<uint8_t> start_realization;
  int context = 0;
  Intervention context_intervention;
  std::vector<uint8_t> context_realization;
  int reward = 0;
};

// Picks the intervention performed at the reached context.
using ContextChooser = std::function<Intervention(int context)>;

// One round: draw X^0 with a0 applied, move to a context, apply the chosen
// intervention there, draw X^i and the reward. Deterministic given the rng
// state. `out` is overwritten; its buffers are reused.
void SampleRoundInto(const CausalInstance& inst, Rng& rng, Intervention a0,
                     const ContextChooser& choose, Observation& out);
Observation SampleRound(const CausalInstance& inst, Rng& rng, Intervention a0,
                        const ContextChooser& choose);

// Pull counters of one exploration run.
struct RoundCounts {
  RoundCounts(int num_interventions, int k)
      : start_pulls(num_interventions, 0),
        context_visits(k, 0),
        context_pulls(static_cast<size_t>(num_interventions) * k, 0),
        k_(k) {}

  void Record(const Observation& obs) {
    ++start_pulls[obs.start_intervention.index()];
    ++context_visits[obs.context];
    ++context_pulls[static_cast<size_t>(obs.context_intervention.index()) *
                        k_ +
                    obs.context];
  }
  // Times intervention a was performed at context i.
  int64_t pulls(int a, int i) const {
    return context_pulls[static_cast<size_t>(a) * k_ + i];
  }

  std::vector<int64_t> start_pulls;
  std::vector<int64_t> context_visits;
  std::vector<int64_t> context_pulls;

 private:
  int k_;
};

// The learner's view of an instance: performs rounds and counts them.
class Environment {
 public:
  Environment(const CausalInstance& inst, uint64_t seed)
      : inst_(&inst),
        rng_(seed),
        counts_(inst.num_interventions(), inst.k) {}

  const Observation& Step(Intervention a0, const ContextChooser& choose) {
    SampleRoundInto(*inst_, rng_, a0, choose, last_);
    counts_.Record(last_);
    ++rounds_;
    return last_;
  }

  int k() const { return inst_->k; }
  int n() const { return inst_->n; }
  int num_interventions() const { return inst_->num_interventions(); }
  int64_t rounds() const { return rounds_; }
  const RoundCounts& counts() const { return counts_; }
  // Learner-side randomness (e.g. Thompson sampling) shares the stream.
  Rng& rng() { return rng_; }

 private:
  const CausalInstance* inst_;
  Rng rng_;
  int64_t rounds_ = 0;
  RoundCounts counts_;
  Observation last_;
};

}  // namespace ccb

#endif  // CCBANDIT_ENV_H_
