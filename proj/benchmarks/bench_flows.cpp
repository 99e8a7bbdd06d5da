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


#include <benchmark/benchmark.h>

#include "qlinflow/flows.hpp"
#include "qlinflow/gisin.hpp"
#include "qlinflow/quasilin.hpp"
#include "qlinflow/sampling.hpp"

using namespace qlinflow;

namespace {

const FlowParams kParams(Vec3(0.6, 0.0, 0.8), 1.0);

void BM_evolve(benchmark::State &state) {
    FlowKind kind = static_cast<FlowKind>(state.range(0));
    BlochVector xi(0.3, -0.4, 0.5);
    double t = 0;
    for (auto _ : state) {
        t += 1e-3;
        benchmark::DoNotOptimize(evolve(kind, xi, kParams, t));
    }
}
BENCHMARK(BM_evolve)->Arg(0)->Arg(1);

void BM_rk4(benchmark::State &state) {
    BlochVector xi(0.3, -0.4, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rk4_integrate(FlowKind::QuasiLinearBoost, xi, kParams, 5.0, state.range(0)));
    }
}
BENCHMARK(BM_rk4)->Arg(100)->Arg(10000);

void BM_certify(benchmark::State &state) {
    for (auto _ : state) {
        auto rep = certify_quasilinearity(FlowKind::QuasiLinearBoost, kParams, state.range(0), {0.5, 1.0, 3.0}, 1e-9,
                                          1, 1);
        benchmark::DoNotOptimize(rep.max_residual);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_certify)->Arg(1000);

void BM_sweep(benchmark::State &state) {
    ExperimentConfig cfg;
    cfg.kind = FlowKind::Weinberg;
    cfg.weighting = Weighting::Frequency;
    cfg.phis = default_phi_grid(36);
    cfg.times = default_gt_grid(20);
    for (auto _ : state) {
        auto rows = sweep(cfg, state.range(0));
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_sweep)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
