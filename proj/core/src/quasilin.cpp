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

#include "qlinflow/quasilin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlinflow/parallel.hpp"
#include "qlinflow/sampling.hpp"

namespace qlinflow {

LambdaFit fit_lambda(const Vec3 &n_a, const Vec3 &n_b, const Vec3 &n_target) {
    LambdaFit fit;
    Vec3 chord = n_a - n_b;
    double len2 = chord.squaredNorm();
    if (std::sqrt(len2) <= LambdaFit::kDegenerateChord) {
        fit.lambda_star = 1.0;
        fit.residual = (n_a - n_target).norm();
        fit.in_range = true;
        fit.degenerate = true;
        return fit;
    }
    fit.lambda_star = (n_target - n_b).dot(chord) / len2;
    fit.residual = (n_b + fit.lambda_star * chord - n_target).norm();
    fit.in_range = fit.lambda_star >= -LambdaFit::kRangeSlack && fit.lambda_star <= 1.0 + LambdaFit::kRangeSlack;
    return fit;
}

Ensemble evolve_ensemble(const Ensemble &ens, FlowKind kind, const FlowParams &p, double t) {
    std::vector<EnsembleMember> out;
    out.reserve(ens.size());
    for (const auto &m : ens.members()) {
        BlochVector n = evolve(kind, density_to_bloch(m.state), p, t);
        out.push_back({m.weight, bloch_to_density(n)});
    }
    return Ensemble(std::move(out));
}

double lambda_t_closed(double lambda, const BlochVector &xi_a, const BlochVector &xi, const FlowParams &p,
                       double t) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda_t_closed: lambda must lie in [0, 1]");
    }
    double th = std::tanh(p.g() * t);
    double den = 1.0 + p.e().dot(xi.vec()) * th;
    if (std::abs(den) <= 1e-12) {
        throw DegenerateDenominator("lambda_t_closed: 1 + (e.xi) tanh(gt) vanishes");
    }
    return lambda * (1.0 + p.e().dot(xi_a.vec()) * th) / den;
}

namespace {

struct PointResult {
    double residual;
    double lambda_star;
    bool in_range;
    bool degenerate;
    double lambda_mismatch;  // NaN when not applicable
};

}  // namespace

CertReport certify_quasilinearity(FlowKind kind, const FlowParams &p, std::size_t samples,
                                  const std::vector<double> &t_grid, double tol, std::uint64_t seed,
                                  unsigned threads) {
    if (samples == 0) {
        throw std::invalid_argument("certify_quasilinearity: samples must be at least 1");
    }
    if (t_grid.empty()) {
        throw std::invalid_argument("certify_quasilinearity: t_grid is empty");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("certify_quasilinearity: tol must be positive");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t nt = t_grid.size();
    std::vector<PointResult> results(samples * nt);

    parallel_for(samples, threads, [&](std::size_t i) {
        EnsembleSample s = draw_ensemble_sample(seed, i);
        BlochVector xi = s.mixed();
        for (std::size_t k = 0; k < nt; k++) {
            double t = t_grid[k];
            Vec3 na = evolve(kind, s.xi_a, p, t).vec();
            Vec3 nb = evolve(kind, s.xi_b, p, t).vec();
            Vec3 n = evolve(kind, xi, p, t).vec();
            LambdaFit fit = fit_lambda(na, nb, n);
            double mismatch = nan;
            if (kind == FlowKind::QuasiLinearBoost && !fit.degenerate && (na - nb).norm() > 1e-6) {
                mismatch = std::abs(fit.lambda_star - lambda_t_closed(s.lambda, s.xi_a, xi, p, t));
            }
            results[i * nt + k] = {fit.residual, fit.lambda_star, fit.in_range, fit.degenerate, mismatch};
        }
    });

    CertReport rep;
    rep.kind = kind;
    rep.samples = samples;
    rep.t_grid = t_grid;
    rep.tol = tol;
    rep.seed = seed;
    rep.min_lambda_star = std::numeric_limits<double>::infinity();
    rep.max_lambda_star = -std::numeric_limits<double>::infinity();
    if (kind == FlowKind::QuasiLinearBoost) {
        rep.max_lambda_mismatch = 0.0;
    }
    bool have_worst = false;
    for (std::size_t i = 0; i < samples; i++) {
        bool violated = false;
        for (std::size_t k = 0; k < nt; k++) {
            const PointResult &r = results[i * nt + k];
            if (r.degenerate) {
                rep.degenerate++;
            } else {
                violated |= r.residual > tol || !r.in_range;
                rep.min_lambda_star = std::min(rep.min_lambda_star, r.lambda_star);
                rep.max_lambda_star = std::max(rep.max_lambda_star, r.lambda_star);
            }
            if (!have_worst || r.residual > rep.max_residual) {
                have_worst = true;
                rep.max_residual = r.residual;
                EnsembleSample s = draw_ensemble_sample(seed, i);
                rep.worst_case = {s.xi_a.vec(), s.xi_b.vec(), s.lambda, t_grid[k]};
            }
            if (rep.max_lambda_mismatch && !std::isnan(r.lambda_mismatch)) {
                rep.max_lambda_mismatch = std::max(*rep.max_lambda_mismatch, r.lambda_mismatch);
            }
        }
        if (violated) {
            rep.violations++;
        }
    }
    if (rep.min_lambda_star > rep.max_lambda_star) {
        // Every chord was degenerate.
        rep.min_lambda_star = rep.max_lambda_star = 1.0;
    }
    return rep;
}

template <int N>
double measurement_lambda_bar(double lambda, const DensityMatrix<N> &rho_a, const DensityMatrix<N> &rho,
                              const Projector<N> &p) {
    double prob = (p.matrix() * rho.matrix()).trace().real();
    if (!(prob > tol::kProbability)) {
        throw ZeroProbabilityBranch("measurement_lambda_bar: tr(P rho) vanishes");
    }
    return lambda * (p.matrix() * rho_a.matrix()).trace().real() / prob;
}

template double measurement_lambda_bar<2>(double, const DensityMatrix<2> &, const DensityMatrix<2> &,
                                          const Projector<2> &);
template double measurement_lambda_bar<4>(double, const DensityMatrix<4> &, const DensityMatrix<4> &,
                                          const Projector<4> &);

}  // namespace qlinflow
