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

#include "ccbandit/explore.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccb {
namespace {

constexpr double kTieTolerance = 1e-12;

Intervention DoNothingChooser(int) { return Intervention::DoNothing(); }

// Adds a do() round to per-row sums. Row 0 is do(); row 1+2j+x collects
// rounds where X_j = x was observed. `value` is what gets summed (1 for
// context counts, the reward for reward sums).
void AddObservational(Eigen::MatrixXd& sums, std::span<const uint8_t> x,
                      int column, double value) {
  sums(0, column) += value;
  for (size_t j = 0; j < x.size(); ++j) {
    sums(1 + 2 * static_cast<Eigen::Index>(j) + x[j], column) += value;
  }
}

void RequireFrequency(const FrequencyVector& f, int size, const char* name) {
  if (f.weights.size() != size) {
    throw Error(std::string(name) + " has the wrong length");
  }
  if (!f.IsValid(1e-6)) {
    throw Error(std::string(name) + " is not a frequency vector");
  }
}

}  // namespace

bool Policy::ValidFor(int n, int k) const {
  if (static_cast<int>(contexts.size()) != k || !start.valid_for(n)) {
    return false;
  }
  return std::all_of(contexts.begin(), contexts.end(),
                     [n](Intervention a) { return a.valid_for(n); });
}

std::string Policy::ToString() const {
  std::ostringstream os;
  os << "pi(0)=" << start.ToString();
  for (size_t i = 0; i < contexts.size(); ++i) {
    os << " pi(" << i + 1 << ")=" << contexts[i].ToString();
  }
  return os.str();
}

Policy GreedyPolicy(const Eigen::MatrixXd& p_hat,
                    const Eigen::MatrixXd& r_hat) {
  if (p_hat.rows() != r_hat.rows() || p_hat.cols() != r_hat.cols()) {
    throw Error("greedy_policy: shape mismatch");
  }
  const int num = static_cast<int>(r_hat.rows());
  const int k = static_cast<int>(r_hat.cols());
  if (num < 1 || num % 2 == 0) {
    throw Error("greedy_policy: row count must be 2n+1");
  }
  const int n = (num - 1) / 2;
  Policy policy;
  Eigen::VectorXd best_reward(k);
  for (int i = 0; i < k; ++i) {
    int best = 0;
    for (int a = 1; a < num; ++a) {
      if (r_hat(a, i) > r_hat(best, i) + kTieTolerance) best = a;
    }
    policy.contexts.push_back(Intervention::FromIndex(best, n));
    best_reward[i] = r_hat(best, i);
  }
  const Eigen::VectorXd value = p_hat * best_reward;
  int best = 0;
  for (int b = 1; b < num; ++b) {
    if (value[b] > value[best] + kTieTolerance) best = b;
  }
  policy.start = Intervention::FromIndex(best, n);
  return policy;
}

std::vector<int64_t> AllocateRounds(const FrequencyVector& f, int64_t budget) {
  std::vector<int64_t> rounds(f.weights.size());
  int64_t used = 0;
  for (Eigen::Index a = 0; a < f.weights.size(); ++a) {
    rounds[a] = static_cast<int64_t>(
        std::floor(std::max(f.weights[a], 0.0) * static_cast<double>(budget)));
    used += rounds[a];
  }
  // A sum slightly above 1 can overshoot by a round; take it back from the
  // largest allocation.
  while (used > budget) {
    auto it = std::max_element(rounds.begin(), rounds.end());
    --*it;
    --used;
  }
  rounds[0] += budget - used;
  return rounds;
}

TransitionEstimate EstimateTransitions(Environment& env, int64_t budget) {
  const int n = env.n();
  const int k = env.k();
  const int num = env.num_interventions();
  if (budget < 2 * num) {
    throw Error("estimate_transitions: budget must be at least 2N");
  }
  const int64_t second = budget / 2;
  const int64_t first = budget - second;

  Eigen::MatrixXd observed = Eigen::MatrixXd::Zero(num, k);
  Eigen::MatrixXd direct = Eigen::MatrixXd::Zero(num, k);
  BernoulliTally tally(n);
  for (int64_t t = 0; t < first; ++t) {
    const Observation& o = env.Step(Intervention::DoNothing(), DoNothingChooser);
    tally.Add(o.start_realization);
    AddObservational(observed, o.start_realization, o.context, 1.0);
  }

  TransitionEstimate est;
  est.start_threshold = CausalThreshold(tally.Mean());
  const auto& rare = est.start_threshold.rare_set;
  int64_t refine = second;
  int64_t per_rare = 0;
  if (!rare.empty()) {
    per_rare = second / static_cast<int64_t>(rare.size());
    refine = second - per_rare * static_cast<int64_t>(rare.size());
  }
  for (int64_t t = 0; t < refine; ++t) {
    const Observation& o = env.Step(Intervention::DoNothing(), DoNothingChooser);
    AddObservational(observed, o.start_realization, o.context, 1.0);
  }
  for (Intervention a : rare) {
    for (int64_t t = 0; t < per_rare; ++t) {
      const Observation& o = env.Step(a, DoNothingChooser);
      direct(a.index(), o.context) += 1.0;
    }
  }

  est.p_hat = Eigen::MatrixXd::Zero(num, k);
  est.never_pulled.assign(num, false);
  for (int a = 0; a < num; ++a) {
    const bool is_rare =
        a > 0 && est.start_threshold.is_rare(Intervention::FromIndex(a, n));
    const auto row = is_rare ? direct.row(a) : observed.row(a);
    const double total = row.sum();
    if (total > 0.0) {
      est.p_hat.row(a) = row / total;
    } else {
      est.never_pulled[a] = true;
    }
  }
  return est;
}

CausalEstimate EstimateCausalParams(Environment& env,
                                    const FrequencyVector& f_tilde,
                                    int64_t budget) {
  const int n = env.n();
  const int k = env.k();
  const int num = env.num_interventions();
  RequireFrequency(f_tilde, num, "f_tilde");
  if (budget < num) {
    throw Error("estimate_causal_params: budget must be at least N");
  }
  const FrequencyVector mixed{
      0.5 * (f_tilde.weights.array() + 1.0 / num).matrix()};
  const std::vector<int64_t> rounds = AllocateRounds(mixed, budget);

  std::vector<BernoulliTally> tallies(k, BernoulliTally(n));
  for (int a = 0; a < num; ++a) {
    const Intervention start = Intervention::FromIndex(a, n);
    for (int64_t t = 0; t < rounds[a]; ++t) {
      const Observation& o = env.Step(start, DoNothingChooser);
      tallies[o.context].Add(o.context_realization);
    }
  }

  CausalEstimate est;
  est.m_hat = Eigen::VectorXd::Constant(k, kDefaultThreshold);
  est.unvisited.assign(k, false);
  for (int i = 0; i < k; ++i) {
    if (tallies[i].count() == 0) {
      est.unvisited[i] = true;
    } else {
      est.m_hat[i] = CausalThreshold(tallies[i].Mean()).m;
    }
  }
  return est;
}

RewardEstimate EstimateRewards(Environment& env, const FrequencyVector& f_star,
                               const FrequencyVector& f_tilde,
                               const Eigen::VectorXd& m_hat, int64_t budget) {
  const int n = env.n();
  const int k = env.k();
  const int num = env.num_interventions();
  RequireFrequency(f_star, num, "f_star");
  RequireFrequency(f_tilde, num, "f_tilde");
  if (m_hat.size() != k) throw Error("m_hat has the wrong length");
  if (budget < 2 * num) {
    throw Error("estimate_rewards: budget must be at least 2N");
  }
  const FrequencyVector mixed{
      ((f_star.weights.array() + f_tilde.weights.array() + 1.0 / num) / 3.0)
          .matrix()};
  const int64_t second = budget / 2;
  const int64_t first = budget - second;
  const std::vector<int64_t> first_rounds = AllocateRounds(mixed, first);
  const std::vector<int64_t> second_rounds = AllocateRounds(mixed, second);

  Eigen::MatrixXd obs_sum = Eigen::MatrixXd::Zero(num, k);
  Eigen::MatrixXd obs_count = Eigen::MatrixXd::Zero(num, k);
  Eigen::MatrixXd dir_sum = Eigen::MatrixXd::Zero(num, k);
  Eigen::MatrixXd dir_count = Eigen::MatrixXd::Zero(num, k);
  std::vector<BernoulliTally> tallies(k, BernoulliTally(n));

  for (int a = 0; a < num; ++a) {
    const Intervention start = Intervention::FromIndex(a, n);
    for (int64_t t = 0; t < first_rounds[a]; ++t) {
      const Observation& o = env.Step(start, DoNothingChooser);
      tallies[o.context].Add(o.context_realization);
      AddObservational(obs_sum, o.context_realization, o.context, o.reward);
      AddObservational(obs_count, o.context_realization, o.context, 1.0);
    }
  }

  RewardEstimate est;
  est.rare_sets.resize(k);
  std::vector<std::vector<bool>> rare(k, std::vector<bool>(num, false));
  for (int i = 0; i < k; ++i) {
    if (tallies[i].count() == 0) continue;
    const std::vector<double> q = tallies[i].Mean();
    const double cut = 1.0 / m_hat[i];
    for (int j = 0; j < n; ++j) {
      for (int x = 0; x < 2; ++x) {
        const double p = x == 1 ? q[j] : 1.0 - q[j];
        if (p < cut) {
          const Intervention b = Intervention::Set(j, x);
          est.rare_sets[i].push_back(b);
          rare[i][b.index()] = true;
        }
      }
    }
  }

  std::vector<size_t> next(k, 0);
  const ContextChooser round_robin = [&](int i) {
    const auto& set = est.rare_sets[i];
    if (set.empty()) return Intervention::DoNothing();
    return set[next[i]++ % set.size()];
  };
  for (int a = 0; a < num; ++a) {
    const Intervention start = Intervention::FromIndex(a, n);
    for (int64_t t = 0; t < second_rounds[a]; ++t) {
      const Observation& o = env.Step(start, round_robin);
      if (o.context_intervention.is_do_nothing()) {
        AddObservational(obs_sum, o.context_realization, o.context, o.reward);
        AddObservational(obs_count, o.context_realization, o.context, 1.0);
      } else {
        dir_sum(o.context_intervention.index(), o.context) += o.reward;
        dir_count(o.context_intervention.index(), o.context) += 1.0;
      }
    }
  }

  est.r_hat = Eigen::MatrixXd::Zero(num, k);
  est.observed.assign(num, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) {
    for (int b = 0; b < num; ++b) {
      const bool direct = rare[i][b];
      const double count = direct ? dir_count(b, i) : obs_count(b, i);
      if (count > 0.0) {
        est.r_hat(b, i) = (direct ? dir_sum(b, i) : obs_sum(b, i)) / count;
        est.observed[b][i] = true;
      }
    }
  }
  return est;
}

ExploreResult ConvExplore(Environment& env, int64_t budget,
                          const SolverOptions& options) {
  const int num = env.num_interventions();
  if (budget < 6 * static_cast<int64_t>(num)) {
    throw Error("conv_explore: budget must be at least 6N = " +
                std::to_string(6 * num));
  }
  const int64_t phase = budget / 3;
  const int64_t last_phase = budget - 2 * phase;

  ExploreResult result;
  EstimationState& s = result.state;
  int64_t mark = env.rounds();
  auto consumed = [&]() {
    const int64_t used = env.rounds() - mark;
    mark = env.rounds();
    return used;
  };

  TransitionEstimate trans = EstimateTransitions(env, phase);
  s.ledger.transitions = consumed();
  s.p_hat = std::move(trans.p_hat);
  s.never_pulled = std::move(trans.never_pulled);
  s.m0_hat = trans.start_threshold.m;
  s.rare0 = trans.start_threshold.rare_set;

  s.f_tilde = MaximinLp(s.p_hat, options).f;
  CausalEstimate causal = EstimateCausalParams(env, s.f_tilde, phase);
  s.ledger.causal = consumed();
  s.m_hat = std::move(causal.m_hat);
  s.unvisited = std::move(causal.unvisited);

  MinmaxResult minmax = ConvexMinmax(s.p_hat, s.m_hat, options);
  s.f_star = std::move(minmax.minimizer);
  s.minmax_objective = minmax.objective;
  s.minmax_cap_reached = minmax.cap_reached;

  RewardEstimate rewards =
      EstimateRewards(env, s.f_star, s.f_tilde, s.m_hat, last_phase);
  s.ledger.rewards = consumed();
  s.r_hat = std::move(rewards.r_hat);
  s.rare_sets = std::move(rewards.rare_sets);
  s.counts = env.counts();

  if (s.ledger.transitions != phase || s.ledger.causal != phase ||
      s.ledger.rewards != last_phase) {
    throw std::logic_error("conv_explore: phase budget mismatch");
  }
  result.policy = GreedyPolicy(s.p_hat, s.r_hat);
  return result;
}

ExploreResult ConvExplore(const CausalInstance& inst, int64_t budget,
                          uint64_t seed, const SolverOptions& options) {
  Environment env(inst, seed);
  return ConvExplore(env, budget, options);
}

}  // namespace ccb
