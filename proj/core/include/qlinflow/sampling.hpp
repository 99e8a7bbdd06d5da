// Copyright 2026 The qlinflow Authors
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

#ifndef QLINFLOW_SAMPLING_HPP
#define QLINFLOW_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "qlinflow/qstate.hpp"

namespace qlinflow {

/// Deterministic random stream addressed by (seed, index).
///
/// Each index gets its own engine, so sample i is the same no matter which thread draws it
/// or in what order samples are evaluated.
class SampleStream {
   public:
    SampleStream(std::uint64_t seed, std::uint64_t index);

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    /// Uniform in the closed unit ball, by rejection from the enclosing cube.
    Vec3 uniform_ball();
    /// Uniform on the unit sphere.
    Vec3 unit_vector();

   private:
    std::mt19937_64 engine_;
};

/// Two-member ensemble draw: ξ = λ ξ_a + (1 − λ) ξ_b.
struct EnsembleSample {
    BlochVector xi_a;
    BlochVector xi_b;
    double lambda;

    BlochVector mixed() const;
};

EnsembleSample draw_ensemble_sample(std::uint64_t seed, std::uint64_t index);

}  // namespace qlinflow

#endif
