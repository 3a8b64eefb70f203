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

#include "ccbandit/env.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ccb {
namespace {

constexpr double kIdentityTolerance = 1e-9;

void CheckProbs(const std::vector<double>& q, int n, const std::string& label,
                std::vector<std::string>& violations) {
  if (static_cast<int>(q.size()) != n) {
    violations.push_back(label + " has length " + std::to_string(q.size()) +
                         ", expected " + std::to_string(n));
    return;
  }
  for (int j = 0; j < n; ++j) {
    if (!(q[j] >= 0.0 && q[j] <= 1.0)) {
      std::ostringstream os;
      os << label << "[" << j << "] = " << q[j] << " lies outside [0,1]";
      violations.push_back(os.str());
    }
  }
}

// Updates the report's identity and marginal violation for one map.
void MeasureConsistency(const StructuredMap& map, const std::vector<double>& q,
                        int dim, ValidationReport& report) {
  const int n = static_cast<int>(q.size());
  const Eigen::VectorXd base = ExpectedOutcome(map, q, dim);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd pinned[2];
    for (int x = 0; x < 2; ++x) {
      pinned[x] = ExpectedUnder(map, q, Intervention::Set(j, x), dim);
      const double px = x == 1 ? q[j] : 1.0 - q[j];
      if (px > 0.0) {
        const Eigen::VectorXd cond = ConditionalOutcome(map, q, j, x, dim);
        report.max_identity_violation =
            std::max(report.max_identity_violation,
                     (cond - pinned[x]).cwiseAbs().maxCoeff());
      }
    }
    const Eigen::VectorXd mix = q[j] * pinned[1] + (1.0 - q[j]) * pinned[0];
    report.max_marginal_violation = std::max(
        report.max_marginal_violation, (mix - base).cwiseAbs().maxCoeff());
  }
}

}  // namespace

ValidationReport ValidateInstance(const CausalInstance& inst) {
  ValidationReport report;
  auto& v = report.violations;
  if (inst.k < 1) v.push_back("k must be at least 1");
  if (inst.n < 1) v.push_back("n must be at least 1");
  if (!v.empty()) {
    report.ok = false;
    return report;
  }
  CheckProbs(inst.q0, inst.n, "q0", v);
  CheckMap(inst.transition_map, inst.n, inst.k, OutcomeKind::kDistribution,
           "transition_map", v);
  if (static_cast<int>(inst.contexts.size()) != inst.k) {
    v.push_back("contexts has length " + std::to_string(inst.contexts.size()) +
                ", expected " + std::to_string(inst.k));
  } else {
    for (int i = 0; i < inst.k; ++i) {
      const std::string label = "contexts[" + std::to_string(i) + "]";
      CheckProbs(inst.contexts[i].q, inst.n, label + ".q", v);
      CheckMap(inst.contexts[i].reward_map, inst.n, 1, OutcomeKind::kScalar,
               label + ".reward_map", v);
    }
  }
  if (!v.empty()) {
    report.ok = false;
    return report;
  }

  MeasureConsistency(inst.transition_map, inst.q0, inst.k, report);
  for (const auto& ctx : inst.contexts) {
    MeasureConsistency(ctx.reward_map, ctx.q, 1, report);
  }
  if (report.max_identity_violation > kIdentityTolerance) {
    std::ostringstream os;
    os << "conditioning and intervening disagree by "
       << report.max_identity_violation;
    v.push_back(os.str());
  }
  if (report.max_marginal_violation > kIdentityTolerance) {
    std::ostringstream os;
    os << "do() row is not the q-mixture of the intervened rows (off by "
       << report.max_marginal_violation << ")";
    v.push_back(os.str());
  }
  report.ok = v.empty();
  return report;
}

void RequireValid(const CausalInstance& inst) {
  const ValidationReport report = ValidateInstance(inst);
  if (report.ok) return;
  std::string msg = "invalid instance:";
  for (const auto& line : report.violations) msg += "\n  " + line;
  throw Error(msg);
}

TransitionMatrix TrueTransitionMatrix(const CausalInstance& inst) {
  RequireValid(inst);
  const int num = inst.num_interventions();
  TransitionMatrix p(num, inst.k);
  for (int a = 0; a < num; ++a) {
    p.row(a) = ExpectedUnder(inst.transition_map, inst.q0,
                             Intervention::FromIndex(a, inst.n), inst.k)
                   .transpose();
  }
  return p;
}

RewardMatrix TrueRewardMatrix(const CausalInstance& inst) {
  RequireValid(inst);
  const int num = inst.num_interventions();
  RewardMatrix r(num, inst.k);
  for (int i = 0; i < inst.k; ++i) {
    const auto& ctx = inst.contexts[i];
    for (int a = 0; a < num; ++a) {
      r(a, i) = ExpectedUnder(ctx.reward_map, ctx.q,
                              Intervention::FromIndex(a, inst.n), 1)[0];
    }
  }
  return r;
}

double TransitionThreshold(const TransitionMatrix& p) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      if (p(r, c) > 0.0) best = std::min(best, p(r, c));
    }
  }
  if (std::isinf(best)) throw Error("degenerate transition matrix");
  return best;
}

void SampleRoundInto(const CausalInstance& inst, Rng& rng, Intervention a0,
                     const ContextChooser& choose, Observation& out) {
  const int n = inst.n;
  if (!a0.valid_for(n)) {
    throw Error("start intervention " + a0.ToString() + " out of range");
  }
  out.start_intervention = a0;
  out.start_realization.resize(n);
  for (int j = 0; j < n; ++j) {
    out.start_realization[j] = rng.Bernoulli(inst.q0[j]) ? 1 : 0;
  }
  if (!a0.is_do_nothing()) {
    out.start_realization[a0.variable()] = static_cast<uint8_t>(a0.value());
  }
  out.context = SampleIndex(inst.transition_map, out.start_realization, rng);

  const Intervention b = choose(out.context);
  if (!b.valid_for(n)) {
    throw Error("context intervention " + b.ToString() + " out of range");
  }
  out.context_intervention = b;
  const ContextModel& ctx = inst.contexts[out.context];
  out.context_realization.resize(n);
  for (int j = 0; j < n; ++j) {
    out.context_realization[j] = rng.Bernoulli(ctx.q[j]) ? 1 : 0;
  }
  if (!b.is_do_nothing()) {
    out.context_realization[b.variable()] = static_cast<uint8_t>(b.value());
  }
  out.reward =
      rng.Bernoulli(ScalarAt(ctx.reward_map, out.context_realization)) ? 1 : 0;
}

Observation SampleRound(const CausalInstance& inst, Rng& rng, Intervention a0,
                        const ContextChooser& choose) {
  Observation out;
  SampleRoundInto(inst, rng, a0, choose, out);
  return out;
}

}  // namespace ccb
