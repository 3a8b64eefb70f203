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

#include "ccbandit/baselines.h"

#include <cmath>
#include <limits>
#include <vector>

namespace ccb {
namespace {

enum class Rule { kRoundRobin, kUcb, kThompson };

struct ArmStats {
  int64_t pulls = 0;
  int64_t successes = 0;

  double mean() const {
    return pulls == 0 ? 0.0 : static_cast<double>(successes) / pulls;
  }
};

// One bandit over the N interventions: the start state or one context.
class ArmSet {
 public:
  explicit ArmSet(int num) : arms_(num) {}

  int Choose(Rule rule, Rng& rng) {
    const int num = static_cast<int>(arms_.size());
    switch (rule) {
      case Rule::kRoundRobin:
        return static_cast<int>(total_ % num);
      case Rule::kUcb: {
        for (int a = 0; a < num; ++a) {
          if (arms_[a].pulls == 0) return a;
        }
        const double log_t = std::log(static_cast<double>(total_ + 1));
        int best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < num; ++a) {
          const double score =
              arms_[a].mean() + std::sqrt(2.0 * log_t / arms_[a].pulls);
          if (score > best_score) {
            best = a;
            best_score = score;
          }
        }
        return best;
      }
      case Rule::kThompson: {
        int best = 0;
        double best_draw = -1.0;
        for (int a = 0; a < num; ++a) {
          const double draw =
              rng.Beta(1.0 + arms_[a].successes,
                       1.0 + arms_[a].pulls - arms_[a].successes);
          if (draw > best_draw) {
            best = a;
            best_draw = draw;
          }
        }
        return best;
      }
    }
    throw Error("unknown arm selection rule");
  }

  void Update(int arm, int reward) {
    ++arms_[arm].pulls;
    arms_[arm].successes += reward;
    ++total_;
  }

  const ArmStats& arm(int a) const { return arms_[a]; }

 private:
  std::vector<ArmStats> arms_;
  int64_t total_ = 0;
};

Policy Explore(Rule start_rule, Rule context_rule, Environment& env,
               int64_t budget) {
  if (budget < 1) throw Error("baseline: budget must be at least 1");
  const int n = env.n();
  const int k = env.k();
  const int num = env.num_interventions();
  ArmSet start(num);
  std::vector<ArmSet> contexts(k, ArmSet(num));
  Eigen::MatrixXd reached = Eigen::MatrixXd::Zero(num, k);

  const ContextChooser choose = [&](int i) {
    return Intervention::FromIndex(contexts[i].Choose(context_rule, env.rng()),
                                   n);
  };
  for (int64_t t = 0; t < budget; ++t) {
    const int a0 = start.Choose(start_rule, env.rng());
    const Observation& o = env.Step(Intervention::FromIndex(a0, n), choose);
    start.Update(a0, o.reward);
    contexts[o.context].Update(o.context_intervention.index(), o.reward);
    reached(a0, o.context) += 1.0;
  }

  Eigen::MatrixXd p_hat = Eigen::MatrixXd::Zero(num, k);
  Eigen::MatrixXd r_hat = Eigen::MatrixXd::Zero(num, k);
  for (int a = 0; a < num; ++a) {
    if (start.arm(a).pulls > 0) {
      p_hat.row(a) = reached.row(a) / static_cast<double>(start.arm(a).pulls);
    }
    for (int i = 0; i < k; ++i) r_hat(a, i) = contexts[i].arm(a).mean();
  }
  return GreedyPolicy(p_hat, r_hat);
}

}  // namespace

std::string BaselineName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kUnifExplore:
      return "unif";
    case BaselineKind::kUcbBoth:
      return "ucb";
    case BaselineKind::kTsBoth:
      return "ts";
    case BaselineKind::kRoundRobinStartUcb:
      return "rr-ucb";
    case BaselineKind::kRoundRobinStartTs:
      return "rr-ts";
  }
  throw Error("unknown baseline kind");
}

Policy UnifExplore(Environment& env, int64_t budget) {
  return Explore(Rule::kRoundRobin, Rule::kRoundRobin, env, budget);
}

Policy BaselineExplore(BaselineKind kind, Environment& env, int64_t budget) {
  switch (kind) {
    case BaselineKind::kUnifExplore:
      return UnifExplore(env, budget);
    case BaselineKind::kUcbBoth:
      return Explore(Rule::kUcb, Rule::kUcb, env, budget);
    case BaselineKind::kTsBoth:
      return Explore(Rule::kThompson, Rule::kThompson, env, budget);
    case BaselineKind::kRoundRobinStartUcb:
      return Explore(Rule::kRoundRobin, Rule::kUcb, env, budget);
    case BaselineKind::kRoundRobinStartTs:
      return Explore(Rule::kRoundRobin, Rule::kThompson, env, budget);
  }
  throw Error("unknown baseline kind");
}

}  // namespace ccb
