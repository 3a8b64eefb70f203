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

#ifndef CCBANDIT_INSTANCE_IO_H_
#define CCBANDIT_INSTANCE_IO_H_

#include <string>

#include "ccbandit/env.h"

namespace ccb {

// Instance files are single JSON documents:
//
//   {"k": 2, "n": 1, "q0": [0.5],
//    "transition_map": {"variant": "LinearMix", "weights": [1.0],
//                       "tables": [[[1, 0], [0, 1]]]},
//    "contexts": [{"q": [0.5],
//                  "reward_map": {"variant": "Lookup", "variables": [],
//                                 "table": [0.5]}}, ...]}
//
// Transition outcomes are arrays of length k; reward outcomes are numbers.
// FirstOne maps carry "outcomes" and "default". Unknown fields are rejected.
// Parsing does not validate the instance; call ValidateInstance.
CausalInstance InstanceFromJson(const std::string& text);
std::string InstanceToJson(const CausalInstance& inst, int indent = 2);

CausalInstance LoadInstance(const std::string& path);
void SaveInstance(const CausalInstance& inst, const std::string& path);

}  // namespace ccb

#endif  // CCBANDIT_INSTANCE_IO_H_
