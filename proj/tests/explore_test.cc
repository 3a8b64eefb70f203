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

#include <cmath>
#include <numeric>
#include <vector>

#include "ccbandit/bench.h"
#include "ccbandit/explore.h"
#include "doctest.h"

namespace ccb {
namespace {

CausalInstance ConstantRewards(CausalInstance inst, double value) {
  for (ContextModel& ctx : inst.contexts) {
    ctx.reward_map = Lookup{{}, {Eigen::VectorXd::Constant(1, value)}};
  }
  return inst;
}

double RowTv(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int row) {
  return 0.5 * (a.row(row) - b.row(row)).cwiseAbs().sum();
}

TEST_CASE("greedy policy") {
  Eigen::MatrixXd p(3, 2);
  p << 1, 0, 0, 1, 0.5, 0.5;
  Eigen::MatrixXd r(3, 2);
  r << 0.1, 0.2, 0.9, 0.4, 0.3, 0.1;
  const Policy pi = GreedyPolicy(p, r);
  CHECK(pi.contexts[0].index() == 1);
  CHECK(pi.contexts[1].index() == 1);
  CHECK(pi.start.index() == 0);

  const Policy ties = GreedyPolicy(p, Eigen::MatrixXd::Constant(3, 2, 0.4));
  CHECK(ties.start.is_do_nothing());
  CHECK(ties.contexts[0].is_do_nothing());
  CHECK(ties.contexts[1].is_do_nothing());
  CHECK_THROWS_AS(GreedyPolicy(p, Eigen::MatrixXd::Zero(3, 3)), Error);
}

TEST_CASE("round allocation is budget exact") {
  FrequencyVector f{Eigen::VectorXd(4)};
  f.weights << 0.1, 0.2, 0.3, 0.4;
  for (int64_t budget : {0, 1, 7, 33, 1000, 12345}) {
    const auto rounds = AllocateRounds(f, budget);
    CHECK(std::accumulate(rounds.begin(), rounds.end(), int64_t{0}) == budget);
    for (size_t a = 1; a < 4; ++a) {
      CHECK(rounds[a] == static_cast<int64_t>(std::floor(f.weights[a] * budget)));
    }
  }
  FrequencyVector over{Eigen::VectorXd::Constant(3, 1.0 / 3 + 1e-10)};
  const auto rounds = AllocateRounds(over, 3);
  CHECK(std::accumulate(rounds.begin(), rounds.end(), int64_t{0}) == 3);
}

TEST_CASE("transitions on a deterministic instance are exact") {
  const std::vector<int> m(4, 3);
  const CausalInstance inst =
      GenLowerBoundInstance(4, {0, Intervention::Set(0, 1)}, 0.2, m);
  const int num = inst.num_interventions();
  Environment env(inst, 1);
  const TransitionEstimate est = EstimateTransitions(env, 4 * num);
  CHECK(env.rounds() == 4 * num);
  const Eigen::MatrixXd truth = TrueTransitionMatrix(inst);
  CHECK(est.start_threshold.m == 3);
  CHECK(est.start_threshold.rare_set.size() == 3);
  for (int a = 0; a < num; ++a) {
    CHECK_FALSE(est.never_pulled[a]);
    CHECK(RowTv(est.p_hat, truth, a) == 0.0);
  }
  Environment small(inst, 1);
  CHECK_THROWS_AS(EstimateTransitions(small, 2 * num - 1), Error);
}

TEST_CASE("transitions converge on the experiment instance") {
  const CausalInstance inst = GenPaperInstance(10, 10, 0.3, 2);
  const Eigen::MatrixXd truth = TrueTransitionMatrix(inst);
  int good = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Environment env(inst, DeriveSeed(12, t));
    const TransitionEstimate est = EstimateTransitions(env, 100000);
    // q0 sits on the 1/2 boundary, so the estimate lands on 2 or 3.
    bool ok = est.start_threshold.m >= 2 && est.start_threshold.m <= 4;
    for (int a = 0; a < truth.rows(); ++a) {
      ok = ok && std::abs(est.p_hat.row(a).sum() - 1.0) < 1e-9 &&
           RowTv(est.p_hat, truth, a) <= 0.05;
    }
    good += ok;
  }
  CHECK(good >= 0.95 * trials);
}

TEST_CASE("causal parameters") {
  // With q = 1/2 every estimate falls below 1/2 for one of the two values,
  // so m_hat = 2 exactly only when n <= 2; above that it is 3.
  for (int n : {2, 6}) {
    CausalInstance all_half = GenPaperInstance(n, 4, 0.3, 2);
    for (ContextModel& ctx : all_half.contexts) {
      ctx.q.assign(n, 0.5);
      ctx.reward_map = Lookup{{}, {Eigen::VectorXd::Constant(1, 0.5)}};
    }
    Environment env(all_half, 3);
    const CausalEstimate est = EstimateCausalParams(
        env, FrequencyVector::Uniform(2 * n + 1), 20000);
    CHECK(env.rounds() == 20000);
    for (int i = 0; i < 4; ++i) {
      CHECK(est.m_hat[i] == (n <= 2 ? 2 : 3));
      CHECK_FALSE(est.unvisited[i]);
    }
  }

  // Context 2 of the lower-bound family is reached only by do(X_2 = 1).
  const std::vector<int> m(4, 2);
  const CausalInstance lb =
      GenLowerBoundInstance(4, {0, Intervention::Set(0, 1)}, 0.2, m);
  FrequencyVector only_do{Eigen::VectorXd::Zero(7)};
  only_do.weights[0] = 1.0;
  Environment lb_env(lb, 4);
  // The uniform half of the mix still reaches every context; with a tiny
  // budget only do() gets rounds.
  const CausalEstimate sparse = EstimateCausalParams(lb_env, only_do, 7);
  CHECK(sparse.unvisited[1]);
  CHECK(sparse.m_hat[1] == kDefaultThreshold);
  CHECK_FALSE(sparse.unvisited[3]);
}

TEST_CASE("causal parameters concentrate") {
  const CausalInstance inst = GenPaperInstance(10, 10, 0.3, 5);
  int good = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Environment env(inst, DeriveSeed(5, t));
    const CausalEstimate est =
        EstimateCausalParams(env, FrequencyVector::Uniform(21), 100000);
    bool ok = true;
    for (int i = 0; i < 10; ++i) {
      ok = ok && est.m_hat[i] >= 10.0 / 3 && est.m_hat[i] <= 10;
    }
    good += ok;
  }
  CHECK(good >= 0.95 * trials);
}

TEST_CASE("rewards") {
  const CausalInstance flat = ConstantRewards(GenPaperInstance(6, 4, 0.3, 2), 0.5);
  Environment env(flat, 9);
  const FrequencyVector u = FrequencyVector::Uniform(13);
  const RewardEstimate est = EstimateRewards(
      env, u, u, Eigen::VectorXd::Constant(4, 2.0), 100000);
  CHECK(env.rounds() == 100000);
  for (int i = 0; i < 4; ++i) {
    for (int a = 0; a < 13; ++a) {
      if (est.observed[a][i]) {
        CHECK(std::abs(est.r_hat(a, i) - 0.5) <= 0.05);
      } else {
        CHECK(est.r_hat(a, i) == 0.0);
      }
    }
  }

  // Deterministic rewards are estimated exactly wherever observed.
  const CausalInstance one = ConstantRewards(GenPaperInstance(6, 4, 0.3, 2), 1.0);
  Environment one_env(one, 10);
  const RewardEstimate exact = EstimateRewards(
      one_env, u, u, Eigen::VectorXd::Constant(4, 2.0), 5000);
  for (int i = 0; i < 4; ++i) {
    for (int a = 0; a < 13; ++a) {
      CHECK(exact.r_hat(a, i) == (exact.observed[a][i] ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("bumped reward arm is estimated") {
  const CausalInstance inst = GenPaperInstance(10, 10, 0.3, 2);
  const FrequencyVector u = FrequencyVector::Uniform(21);
  int good = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Environment env(inst, DeriveSeed(6, t));
    const RewardEstimate est =
        EstimateRewards(env, u, u, Eigen::VectorXd::Constant(10, 2.0), 100000);
    // do(X_0 = 1) is rare at context 0, so it is pulled explicitly.
    good += std::abs(est.r_hat(2, 0) - 0.8) <= 0.05 &&
            !est.rare_sets[0].empty() &&
            est.rare_sets[0][0] == Intervention::Set(0, 1);
  }
  CHECK(good >= 0.95 * trials);
}

TEST_CASE("conv_explore budget ledger") {
  CausalInstance inst = GenPaperInstance(2, 3, 0.3, 2);
  Environment env(inst, 1);
  const ExploreResult r = ConvExplore(env, 300);
  CHECK(r.state.ledger.transitions == 100);
  CHECK(r.state.ledger.causal == 100);
  CHECK(r.state.ledger.rewards == 100);
  CHECK(env.rounds() == 300);
  int64_t starts = 0;
  for (int64_t v : r.state.counts.start_pulls) starts += v;
  CHECK(starts == 300);
  CHECK(r.policy.ValidFor(2, 3));
  CHECK(r.state.f_tilde.IsValid(1e-6));
  CHECK(r.state.f_star.IsValid(1e-6));

  const ExploreResult odd = ConvExplore(inst, 1001, 2);
  CHECK(odd.state.ledger.total() == 1001);
  CHECK(odd.state.ledger.rewards == 335);
  CHECK_THROWS_AS(ConvExplore(inst, 29, 1), Error);
}

TEST_CASE("conv_explore state invariants") {
  const CausalInstance inst = GenPaperInstance(5, 5, 0.3, 3);
  const ExploreResult r = ConvExplore(inst, 6000, 77);
  const EstimationState& s = r.state;
  for (int a = 0; a < s.p_hat.rows(); ++a) {
    if (!s.never_pulled[a]) CHECK(std::abs(s.p_hat.row(a).sum() - 1.0) < 1e-9);
  }
  CHECK((s.r_hat.array() >= 0).all());
  CHECK((s.r_hat.array() <= 1).all());
  CHECK((s.m_hat.array() >= 2).all());
}

TEST_CASE("conv_explore is deterministic and solves easy instances") {
  const CausalInstance inst = GenPaperInstance(10, 10, 0.3, 2);
  const ExploreResult a = ConvExplore(inst, 20000, 31);
  const ExploreResult b = ConvExplore(inst, 20000, 31);
  CHECK(a.policy == b.policy);
  CHECK(a.state.p_hat == b.state.p_hat);

  const CausalInstance flat = ConstantRewards(inst, 0.5);
  CHECK(SimpleRegret(flat, ConvExplore(flat, 2000, 3).policy) <= 1e-12);

  const RegretEvaluator eval(inst);
  int best = 0;
  for (int t = 0; t < 50; ++t) {
    best += eval.Regret(ConvExplore(inst, 20000, DeriveSeed(1, t)).policy) <= 1e-12;
  }
  CHECK(best >= 40);
}

}  // namespace
}  // namespace ccb
