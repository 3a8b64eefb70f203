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

#ifndef CCBANDIT_THRESHOLDS_H_
#define CCBANDIT_THRESHOLDS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ccbandit/intervention.h"

namespace ccb {

struct ThresholdResult {
  int m = 2;
  // Set-interventions observed under do() with probability below 1/m, in
  // canonical order.
  std::vector<Intervention> rare_set;
  // obs_probs[2j + x] = P{X_j = x} under do().
  std::vector<double> obs_probs;

  bool is_rare(Intervention a) const;
};

// Causal observational threshold of one context:
//   S_tau = {do(X_j=x) : P{X_j = x} < 1/tau},  m = min{tau in [2, 2n] :
//   |S_tau| <= tau},  rare_set = S_m.
// Probabilities exactly equal to 1/tau are not rare.
ThresholdResult CausalThreshold(std::span<const double> q);

// Coordinate-wise mean of binary realizations.
std::vector<double> EmpiricalQ(std::span<const std::vector<uint8_t>> samples);

// Running version of EmpiricalQ for explorers that observe one realization
// at a time.
class BernoulliTally {
 public:
  explicit BernoulliTally(int n) : ones_(n, 0) {}

  void Add(std::span<const uint8_t> realization) {
    for (size_t j = 0; j < ones_.size(); ++j) ones_[j] += realization[j];
    ++count_;
  }
  int64_t count() const { return count_; }
  std::vector<double> Mean() const;

 private:
  std::vector<int64_t> ones_;
  int64_t count_ = 0;
};

}  // namespace ccb

#endif  // CCBANDIT_THRESHOLDS_H_
