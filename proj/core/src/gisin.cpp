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

#include "qlinflow/gisin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qlinflow/parallel.hpp"
#include "qlinflow/quasilin.hpp"

namespace qlinflow {

std::string_view to_string(Weighting w) {
    return w == Weighting::PaperLambda ? "paper-lambda" : "frequency";
}

Weighting parse_weighting(std::string_view name) {
    if (name == "paper-lambda") {
        return Weighting::PaperLambda;
    }
    if (name == "frequency") {
        return Weighting::Frequency;
    }
    throw std::invalid_argument("unknown weighting '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    if (phis.empty()) {
        throw std::invalid_argument("experiment needs at least one phi");
    }
    if (times.empty()) {
        throw std::invalid_argument("experiment needs at least one t");
    }
    for (double v : phis) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("phi values must be finite");
        }
    }
    for (double v : times) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("t values must be finite");
        }
    }
}

std::vector<double> default_phi_grid(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    }
    return out;
}

std::vector<double> default_gt_grid(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = 10.0 * static_cast<double>(k + 1) / static_cast<double>(n);
    }
    return out;
}

Ensemble prepare_B_ensemble(double phi) {
    TwoQubitDensity bell = bell_state();
    Projector2Q plus = projector_A(phi);
    TwoQubitDensity measured = nonselective_measure(bell, plus);
    std::vector<EnsembleMember> members;
    for (const Projector2Q &branch : {plus, plus.complement()}) {
        auto outcome = selective_measure(measured, branch);
        members.push_back({outcome.probability, partial_trace_A(outcome.state)});
    }
    return Ensemble(std::move(members));
}

QubitDensity evolved_rho_B(const FlowParams &p, double t) {
    return bloch_to_density(BlochVector(p.e() * std::tanh(p.g() * t)));
}

double gisin_lambda(double phi, const FlowParams &p, double t) {
    BlochVector minus_zeta(-polarization_vector(phi));
    return lambda_t_closed(0.5, minus_zeta, BlochVector(), p, t);
}

namespace {

Vec3 recombine(const Ensemble &evolved, double lambda) {
    return lambda * density_to_bloch(evolved[0].state).vec() +
           (1.0 - lambda) * density_to_bloch(evolved[1].state).vec();
}

}  // namespace

double recombination_check(double phi, const FlowParams &p, double t) {
    Ensemble evolved = evolve_ensemble(prepare_B_ensemble(phi), FlowKind::QuasiLinearBoost, p, t);
    Vec3 n = recombine(evolved, gisin_lambda(phi, p, t));
    return trace_distance(bloch_to_density(BlochVector(n)), evolved_rho_B(p, t));
}

QubitDensity effective_B_state(const ExperimentConfig &cfg, double phi, double t) {
    Ensemble prepared = prepare_B_ensemble(phi);
    Ensemble evolved = evolve_ensemble(prepared, cfg.kind, cfg.params, t);
    double lambda = cfg.weighting == Weighting::PaperLambda ? gisin_lambda(phi, cfg.params, t) : prepared[0].weight;
    return bloch_to_density(BlochVector(recombine(evolved, lambda)));
}

double signaling_metric(const ExperimentConfig &cfg, double phi1, double phi2, double t) {
    return trace_distance(effective_B_state(cfg, phi1, t), effective_B_state(cfg, phi2, t));
}

std::vector<SignalRow> sweep(const ExperimentConfig &cfg, unsigned threads) {
    cfg.validate();
    const std::size_t np = cfg.phis.size();
    const std::size_t nt = cfg.times.size();
    // Effective states depend on (φ, t) only; compute each once.
    std::vector<Eigen::Matrix2cd> states(np * nt);
    parallel_for(np * nt, threads, [&](std::size_t idx) {
        states[idx] = effective_B_state(cfg, cfg.phis[idx / nt], cfg.times[idx % nt]).matrix();
    });
    std::vector<SignalRow> rows;
    rows.reserve(np * np * nt);
    for (std::size_t i = 0; i < np; i++) {
        for (std::size_t j = 0; j < np; j++) {
            for (std::size_t k = 0; k < nt; k++) {
                double t = cfg.times[k];
                double d = trace_distance(QubitDensity(states[i * nt + k]), QubitDensity(states[j * nt + k]));
                rows.push_back({cfg.phis[i], cfg.phis[j], t, cfg.params.g() * t, cfg.weighting, d});
            }
        }
    }
    return rows;
}

}  // namespace qlinflow
