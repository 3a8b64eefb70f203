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

#include "ccbandit/intervention.h"

namespace ccb {

Intervention Intervention::FromIndex(int index, int n) {
  if (index < 0 || index >= NumInterventions(n)) {
    throw Error("intervention index " + std::to_string(index) +
                " out of range for n=" + std::to_string(n));
  }
  if (index == 0) return DoNothing();
  return Set((index - 1) / 2, (index - 1) % 2);
}

std::string Intervention::ToString() const {
  if (is_do_nothing()) return "do()";
  return "do(X" + std::to_string(variable_ + 1) + "=" +
         std::to_string(value_) + ")";
}

std::vector<Intervention> AllInterventions(int n) {
  std::vector<Intervention> out;
  out.reserve(NumInterventions(n));
  for (int a = 0; a < NumInterventions(n); ++a) {
    out.push_back(Intervention::FromIndex(a, n));
  }
  return out;
}

}  // namespace ccb
