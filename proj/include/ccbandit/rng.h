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

#ifndef CCBANDIT_RNG_H_
#define CCBANDIT_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace ccb {

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-run seed for run `index` of an experiment seeded with `master`:
//   Mix64(Mix64(master) ^ (index + 1) * 0xD1342543DE82EF95)
// The same (master, index) pair always yields the same stream, whatever
// thread executes the run.
constexpr uint64_t DeriveSeed(uint64_t master, uint64_t index) {
  return Mix64(Mix64(master) ^ ((index + 1) * 0xD1342543DE82EF95ULL));
}

// Random stream owned by one simulation run. Uniforms are built from the raw
// engine output so they do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Index drawn from a probability vector. Rounding slack lands on the last
  // entry with positive mass.
  int Categorical(std::span<const double> probs) {
    const double u = Uniform();
    double acc = 0.0;
    int last = 0;
    for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
      if (probs[i] <= 0.0) continue;
      acc += probs[i];
      last = i;
      if (u < acc) return i;
    }
    return last;
  }

  // Uniform integer on [0, n).
  int UniformInt(int n) {
    return static_cast<int>(Uniform() * static_cast<double>(n));
  }

  double Beta(double a, double b) {
    const double x = std::gamma_distribution<double>(a, 1.0)(engine_);
    const double y = std::gamma_distribution<double>(b, 1.0)(engine_);
    return x / (x + y);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccb

#endif  // CCBANDIT_RNG_H_
