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

#ifndef CCBANDIT_BASELINES_H_
#define CCBANDIT_BASELINES_H_

#include <cstdint>
#include <string>

#include "ccbandit/env.h"
#include "ccbandit/explore.h"

namespace ccb {

enum class BaselineKind {
  kUnifExplore,
  kUcbBoth,
  kTsBoth,
  kRoundRobinStartUcb,
  kRoundRobinStartTs,
};

std::string BaselineName(BaselineKind kind);

// Start interventions cycled in canonical order, a round-robin counter per
// context over its N interventions. Greedy policy on the empirical P and R.
Policy UnifExplore(Environment& env, int64_t budget);

// UCB arms score mean + sqrt(2 ln t / pulls), unpulled arms first. Thompson
// arms sample Beta(1 + successes, 1 + failures) from env.rng(). A start arm
// is credited with the terminal reward of its round. The round-robin-start
// variants cycle the start arm and only adapt at the contexts. Every variant
// ends with the greedy policy on empirical means; estimates use explicit
// pulls only, so arms never pulled keep zero rows.
Policy BaselineExplore(BaselineKind kind, Environment& env, int64_t budget);

}  // namespace ccb

#endif  // CCBANDIT_BASELINES_H_
