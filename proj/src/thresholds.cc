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

#include "ccbandit/thresholds.h"

#include <algorithm>

namespace ccb {

bool ThresholdResult::is_rare(Intervention a) const {
  return std::binary_search(rare_set.begin(), rare_set.end(), a);
}

ThresholdResult CausalThreshold(std::span<const double> q) {
  if (q.empty()) throw Error("causal threshold needs at least one variable");
  const int n = static_cast<int>(q.size());
  ThresholdResult result;
  result.obs_probs.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    if (!(q[j] >= 0.0 && q[j] <= 1.0)) {
      throw Error("variable probability outside [0,1]");
    }
    result.obs_probs[2 * j] = 1.0 - q[j];
    result.obs_probs[2 * j + 1] = q[j];
  }
  auto rare_count = [&](int tau) {
    return std::count_if(result.obs_probs.begin(), result.obs_probs.end(),
                         [tau](double p) { return p < 1.0 / tau; });
  };
  // |S_2n| <= 2n always, so the scan terminates.
  int m = 2;
  while (m < 2 * n && rare_count(m) > m) ++m;
  result.m = m;
  for (int a = 0; a < 2 * n; ++a) {
    if (result.obs_probs[a] < 1.0 / m) {
      result.rare_set.push_back(Intervention::Set(a / 2, a % 2));
    }
  }
  return result;
}

std::vector<double> EmpiricalQ(std::span<const std::vector<uint8_t>> samples) {
  if (samples.empty()) throw Error("empirical_q needs at least one sample");
  BernoulliTally tally(static_cast<int>(samples.front().size()));
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) {
      throw Error("realizations differ in length");
    }
    tally.Add(s);
  }
  return tally.Mean();
}

std::vector<double> BernoulliTally::Mean() const {
  if (count_ == 0) throw Error("empirical_q needs at least one sample");
  std::vector<double> q(ones_.size());
  for (size_t j = 0; j < ones_.size(); ++j) {
    q[j] = static_cast<double>(ones_[j]) / static_cast<double>(count_);
  }
  return q;
}

}  // namespace ccb
