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

#ifndef CCBANDIT_INTERVENTION_H_
#define CCBANDIT_INTERVENTION_H_

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccb {

// Thrown for malformed arguments and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An atomic intervention: do() or do(X_j = x). Variables are 0-based.
//
// Canonical index order, used for every matrix row project-wide:
//   0 -> do(), 1 -> do(X_0=0), 2 -> do(X_0=1), 3 -> do(X_1=0), ...
class Intervention {
 public:
  constexpr Intervention() = default;

  static constexpr Intervention DoNothing() { return Intervention(); }
  static constexpr Intervention Set(int variable, int value) {
    return Intervention(variable, value);
  }
  static Intervention FromIndex(int index, int n);

  constexpr bool is_do_nothing() const { return variable_ == -1; }
  constexpr int variable() const { return variable_; }
  constexpr int value() const { return value_; }
  constexpr int index() const {
    return is_do_nothing() ? 0 : 1 + 2 * variable_ + value_;
  }

  // True when this intervention exists in a context with n variables.
  constexpr bool valid_for(int n) const {
    return is_do_nothing() || (variable_ >= 0 && variable_ < n &&
                               (value_ == 0 || value_ == 1));
  }

  // "do()" or "do(X3=1)" with a 1-based variable number.
  std::string ToString() const;

  constexpr auto operator<=>(const Intervention& other) const {
    return index() <=> other.index();
  }
  constexpr bool operator==(const Intervention& other) const {
    return index() == other.index();
  }

 private:
  constexpr Intervention(int variable, int value)
      : variable_(variable), value_(value) {}

  int variable_ = -1;
  int value_ = 0;
};

// N = 2n + 1.
constexpr int NumInterventions(int n) { return 2 * n + 1; }

// All interventions of a context with n variables in canonical order.
std::vector<Intervention> AllInterventions(int n);

}  // namespace ccb

#endif  // CCBANDIT_INTERVENTION_H_
