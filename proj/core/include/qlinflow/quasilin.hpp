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

#ifndef QLINFLOW_QUASILIN_HPP
#define QLINFLOW_QUASILIN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlinflow/flows.hpp"
#include "qlinflow/qstate.hpp"

namespace qlinflow {

struct DegenerateDenominator : std::domain_error {
    using std::domain_error::domain_error;
};

/// Best convex weight placing `n_target` on the chord from n_b to n_a.
struct LambdaFit {
    double lambda_star = 1.0;
    /// Euclidean Bloch-space distance from n_target to λ* n_a + (1 − λ*) n_b.
    double residual = 0.0;
    /// λ* ∈ [0, 1] within kRangeSlack.
    bool in_range = true;
    /// |n_a − n_b| <= kDegenerateChord; any λ reproduces the chord.
    bool degenerate = false;

    static constexpr double kRangeSlack = 1e-9;
    static constexpr double kDegenerateChord = 1e-12;
};

LambdaFit fit_lambda(const Vec3 &n_a, const Vec3 &n_b, const Vec3 &n_target);

/// Evolves each member's state by the selected flow. Weights are carried over unchanged.
Ensemble evolve_ensemble(const Ensemble &ens, FlowKind kind, const FlowParams &p, double t);

/// Time-dependent mixing weight of the boost flow:
///   λ(t) = λ (1 + (e·ξ_a) tanh gt) / (1 + (e·ξ) tanh gt),
/// where ξ = λ ξ_a + (1 − λ) ξ_b is the mixed initial state.
/// Throws DegenerateDenominator if |1 + (e·ξ) tanh gt| <= 1e-12.
double lambda_t_closed(double lambda, const BlochVector &xi_a, const BlochVector &xi, const FlowParams &p,
                       double t);

struct CertWorstCase {
    Vec3 xi_a = Vec3::Zero();
    Vec3 xi_b = Vec3::Zero();
    double lambda = 0.0;
    double t = 0.0;
};

/// Outcome of an empirical quasi-linearity certification.
struct CertReport {
    FlowKind kind = FlowKind::QuasiLinearBoost;
    std::size_t samples = 0;
    std::vector<double> t_grid;
    double tol = 0.0;
    std::uint64_t seed = 0;
    /// Largest chord residual over all (sample, t) pairs.
    double max_residual = 0.0;
    CertWorstCase worst_case;
    /// Samples with residual > tol or λ* outside [0, 1] at some t.
    std::size_t violations = 0;
    /// Number of (sample, t) pairs whose evolved members coincided.
    std::size_t degenerate = 0;
    double min_lambda_star = 0.0;
    double max_lambda_star = 0.0;
    /// Boost flow only: max |λ* − λ(t)| over non-degenerate chords (|n_a − n_b| > 1e-6).
    std::optional<double> max_lambda_mismatch;
};

/// Draws `samples` seeded two-member ensembles (ξ_a, ξ_b uniform in the ball, λ uniform on
/// [0, 1]), evolves the mixture and both members with the selected flow at every t in `t_grid`,
/// and fits λ*(t). Deterministic for a fixed seed regardless of `threads` (0 = hardware default).
/// Throws std::invalid_argument if samples == 0, t_grid is empty, or tol <= 0.
CertReport certify_quasilinearity(FlowKind kind, const FlowParams &p, std::size_t samples,
                                  const std::vector<double> &t_grid, double tol, std::uint64_t seed,
                                  unsigned threads = 0);

/// Reweighting induced by a selective measurement: λ̄ = λ tr(Pρ_a) / tr(Pρ).
/// Throws ZeroProbabilityBranch if tr(Pρ) <= 1e-12.
template <int N>
double measurement_lambda_bar(double lambda, const DensityMatrix<N> &rho_a, const DensityMatrix<N> &rho,
                              const Projector<N> &p);

}  // namespace qlinflow

#endif
