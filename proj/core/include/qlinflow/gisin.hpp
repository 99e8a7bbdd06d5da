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

#ifndef QLINFLOW_GISIN_HPP
#define QLINFLOW_GISIN_HPP

#include <string_view>
#include <vector>

#include "qlinflow/flows.hpp"
#include "qlinflow/qstate.hpp"

namespace qlinflow {

/// How B recombines the two evolved members of its ensemble.
///
/// PaperLambda reweights with the time-dependent λ(t) that keeps the evolved ensemble equivalent to
/// the evolved mixture. Frequency keeps the ½/½ outcome frequencies of A's measurement.
enum class Weighting { PaperLambda, Frequency };

std::string_view to_string(Weighting w);
/// Accepts "paper-lambda" and "frequency".
Weighting parse_weighting(std::string_view name);

struct ExperimentConfig {
    FlowKind kind = FlowKind::QuasiLinearBoost;
    FlowParams params{Vec3::UnitX(), 1.0};
    std::vector<double> phis;
    std::vector<double> times;
    Weighting weighting = Weighting::PaperLambda;

    /// Throws std::invalid_argument if either list is empty or holds a non-finite value.
    void validate() const;
};

/// n uniform angles 2πk/n, k = 0..n-1.
std::vector<double> default_phi_grid(std::size_t n = 36);
/// n uniform values (10/n)·k, k = 1..n, spanning (0, 10].
std::vector<double> default_gt_grid(std::size_t n = 20);

struct SignalRow {
    double phi1;
    double phi2;
    double t;
    double gt;
    Weighting weighting;
    double distance;
};

/// B's ensemble after A measures ½(I + ζ_φ·σ) without selection on the singlet.
/// Member 0 is A's "+" branch, ½(I − ζ_φ·σ); member 1 is the "−" branch, ½(I + ζ_φ·σ).
Ensemble prepare_B_ensemble(double phi);

/// ½(I + (e·σ) tanh gt): the maximally mixed state evolved by the boost flow.
QubitDensity evolved_rho_B(const FlowParams &p, double t);

/// Weight of member 0 that restores ensemble equivalence: ½(1 − (e·ζ_φ) tanh gt).
double gisin_lambda(double phi, const FlowParams &p, double t);

/// Trace distance between the λ(t)-recombined evolved members of prepare_B_ensemble(φ)
/// and evolved_rho_B(p, t), using the boost flow.
double recombination_check(double phi, const FlowParams &p, double t);

/// B's effective state for A's setting φ under cfg's flow and weighting.
QubitDensity effective_B_state(const ExperimentConfig &cfg, double phi, double t);

/// Trace distance between B's effective states for settings φ1 and φ2.
double signaling_metric(const ExperimentConfig &cfg, double phi1, double phi2, double t);

/// Every (φ1, φ2, t) in phis × phis × times, in that lexicographic order.
std::vector<SignalRow> sweep(const ExperimentConfig &cfg, unsigned threads = 0);

}  // namespace qlinflow

#endif
