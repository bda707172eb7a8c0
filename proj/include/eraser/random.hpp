// Copyright 2026 The Partial Eraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace eraser {

/// Seedable random stream.
///
/// One stream per trial, keyed by (master seed, trial index) through a
/// splitmix64 mix, so trials can run in any order or on any thread and a
/// replayed seed gives the same draws bit for bit. Floating-point draws avoid
/// std:: distributions, whose output is implementation-defined.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

   private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace eraser
