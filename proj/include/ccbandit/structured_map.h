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

#ifndef CCBANDIT_STRUCTURED_MAP_H_
#define CCBANDIT_STRUCTURED_MAP_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ccbandit/intervention.h"
#include "ccbandit/rng.h"

namespace ccb {

// A map from a realization of n independent binary variables to an outcome.
// Outcomes are vectors of a fixed dimension: a distribution over k contexts
// for transition maps, or a length-1 vector holding P{R = 1} for reward maps.
//
// Each variant is chosen so that its exact expectation under independent
// Bernoulli variables is cheap to evaluate in closed form.

// Outcome is a weighted mixture of per-variable tables:
//   outcome(x) = sum_j weights[j] * tables[j][x_j].
struct LinearMix {
  std::vector<double> weights;
  std::vector<std::array<Eigen::VectorXd, 2>> tables;
};

// Outcome is outcomes[j] for the first variable j with x_j = 1, or
// `fallback` when every variable is 0.
struct FirstOne {
  std::vector<Eigen::VectorXd> outcomes;
  Eigen::VectorXd fallback;
};

// Outcome depends only on the variables in `variables` (at most
// kMaxLookupVariables). Bit b of the table index is the value of
// variables[b].
struct Lookup {
  std::vector<int> variables;
  std::vector<Eigen::VectorXd> table;
};

inline constexpr int kMaxLookupVariables = 12;
inline constexpr double kNormalizationTolerance = 1e-12;

using StructuredMap = std::variant<LinearMix, FirstOne, Lookup>;

enum class OutcomeKind { kDistribution, kScalar };

std::string VariantName(const StructuredMap& map);

// Appends one message per violated constraint to `violations`. `label` is
// prefixed to every message.
void CheckMap(const StructuredMap& map, int n, int outcome_dim,
              OutcomeKind kind, const std::string& label,
              std::vector<std::string>& violations);

// Exact E[outcome] when variable j is 1 with probability probs[j],
// independently. An intervention do(X_j=x) is evaluated by pinning probs[j]
// to x, which is what ExpectedUnder does.
Eigen::VectorXd ExpectedOutcome(const StructuredMap& map,
                                std::span<const double> probs,
                                int outcome_dim);
Eigen::VectorXd ExpectedUnder(const StructuredMap& map,
                              std::span<const double> probs,
                              Intervention intervention, int outcome_dim);

// Exact E[outcome | X_j = x] under do(), computed from the joint law of
// (X_j, outcome) rather than by pinning probs[j]. Requires
// P{X_j = x} > 0.
Eigen::VectorXd ConditionalOutcome(const StructuredMap& map,
                                   std::span<const double> probs, int variable,
                                   int value, int outcome_dim);

// Outcome for a fixed realization.
Eigen::VectorXd OutcomeAt(const StructuredMap& map,
                          std::span<const uint8_t> realization,
                          int outcome_dim);

// Samples a context index from a distribution-valued map at `realization`.
int SampleIndex(const StructuredMap& map, std::span<const uint8_t> realization,
                Rng& rng);

// P{R = 1} of a scalar-valued map at `realization`.
double ScalarAt(const StructuredMap& map,
                std::span<const uint8_t> realization);

}  // namespace ccb

#endif  // CCBANDIT_STRUCTURED_MAP_H_
