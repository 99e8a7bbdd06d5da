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

#include "qlinflow/sampling.hpp"

namespace qlinflow {

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
    };
    engine_.seed(seq);
}

double SampleStream::uniform() {
    // std::uniform_real_distribution is implementation-defined; this mapping is not.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Vec3 SampleStream::uniform_ball() {
    while (true) {
        Vec3 v(2 * uniform() - 1, 2 * uniform() - 1, 2 * uniform() - 1);
        if (v.squaredNorm() <= 1.0) {
            return v;
        }
    }
}

Vec3 SampleStream::unit_vector() {
    while (true) {
        Vec3 v = uniform_ball();
        double len = v.norm();
        if (len > 1e-3) {
            return v / len;
        }
    }
}

BlochVector EnsembleSample::mixed() const {
    return BlochVector(lambda * xi_a.vec() + (1.0 - lambda) * xi_b.vec());
}

EnsembleSample draw_ensemble_sample(std::uint64_t seed, std::uint64_t index) {
    SampleStream s(seed, index);
    BlochVector a(s.uniform_ball());
    BlochVector b(s.uniform_ball());
    double lambda = s.uniform();
    return {a, b, lambda};
}

}  // namespace qlinflow
