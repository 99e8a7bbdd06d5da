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

#include "qlinflow/flows.hpp"

#include <string>

namespace qlinflow {

std::string_view to_string(FlowKind kind) {
    switch (kind) {
        case FlowKind::QuasiLinearBoost:
            return "boost";
        case FlowKind::Weinberg:
            return "weinberg";
    }
    return "unknown";
}

FlowKind parse_flow_kind(std::string_view name) {
    if (name == "boost" || name == "quasilinear") {
        return FlowKind::QuasiLinearBoost;
    }
    if (name == "weinberg") {
        return FlowKind::Weinberg;
    }
    throw std::invalid_argument("unknown flow kind '" + std::string(name) + "'");
}

FlowParams::FlowParams(const Vec3 &e, double g) : e_(e), g_(g) {
    if (!e.allFinite() || std::abs(e.norm() - 1.0) > kUnitTolerance) {
        throw InvalidState("flow direction e must be a unit vector");
    }
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw InvalidState("flow rate g must be positive and finite");
    }
}

FlowParams FlowParams::normalized(const Vec3 &direction, double g) {
    double len = direction.norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
        throw InvalidState("flow direction e must be nonzero");
    }
    return FlowParams(direction / len, g);
}

Vec3 boost_velocity(const Vec3 &v, const Vec3 &e, double eta) {
    if (!v.allFinite() || v.norm() > 1.0 + tol::kBlochNorm) {
        throw InvalidState("boost_velocity: |v| exceeds 1");
    }
    if (eta == 0.0) {
        return v;
    }
    // Parallel part: (ev + tanh η) / (1 + ev tanh η); perpendicular part: v_perp sech η / (1 + ev tanh η).
    // Written with u = 1 + ev and m = 1 - tanh η so neither cancels near ev = -1 or for large η.
    double ev = e.dot(v);
    double u = 1.0 + ev;
    double m = 2.0 / (std::exp(2.0 * eta) + 1.0);
    double sech = 1.0 / std::cosh(eta);
    double den = u - ev * m;
    if (den == 0.0) {
        // Exact antipode with m underflowed: the unstable fixed point.
        return v;
    }
    Vec3 perp = v - ev * e;
    return e * ((u - m) / den) + perp * (sech / den);
}

BlochVector quasilinear_flow(const BlochVector &xi, const FlowParams &p, double t) {
    return BlochVector(boost_velocity(xi.vec(), p.e(), p.g() * t));
}

BlochVector weinberg_flow(const BlochVector &xi, const FlowParams &p, double t) {
    const Vec3 &e = p.e();
    const Vec3 &x = xi.vec();
    double ex = e.dot(x);
    double theta = p.g() * t * ex;
    double c = std::cos(theta);
    double s = std::sin(theta);
    return BlochVector(x * c + e.cross(x) * s + e * (ex * (1.0 - c)));
}

BlochVector evolve(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t) {
    switch (kind) {
        case FlowKind::QuasiLinearBoost:
            return quasilinear_flow(xi, p, t);
        case FlowKind::Weinberg:
            return weinberg_flow(xi, p, t);
    }
    throw std::invalid_argument("unknown flow kind");
}

Vec3 quasilinear_rhs(const Vec3 &n, const FlowParams &p) {
    return p.g() * (p.e() - n * p.e().dot(n));
}

Vec3 weinberg_rhs(const Vec3 &n, const FlowParams &p) {
    return p.g() * p.e().cross(n) * p.e().dot(n);
}

Vec3 rhs(FlowKind kind, const Vec3 &n, const FlowParams &p) {
    return kind == FlowKind::QuasiLinearBoost ? quasilinear_rhs(n, p) : weinberg_rhs(n, p);
}

Vec3 rk4_integrate(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t, unsigned steps) {
    if (steps == 0) {
        throw std::invalid_argument("rk4_integrate: steps must be at least 1");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("rk4_integrate: t must be finite");
    }
    const double h = t / steps;
    Vec3 n = xi.vec();
    for (unsigned i = 0; i < steps; i++) {
        Vec3 k1 = rhs(kind, n, p);
        Vec3 k2 = rhs(kind, n + 0.5 * h * k1, p);
        Vec3 k3 = rhs(kind, n + 0.5 * h * k2, p);
        Vec3 k4 = rhs(kind, n + h * k3, p);
        n += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!n.allFinite()) {
            throw IntegrationFailure("rk4_integrate: non-finite state after step " + std::to_string(i + 1));
        }
    }
    return n;
}

double semigroup_check(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t1, double t2) {
    BlochVector composed = evolve(kind, evolve(kind, xi, p, t1), p, t2);
    BlochVector direct = evolve(kind, xi, p, t1 + t2);
    return (composed.vec() - direct.vec()).norm();
}

}  // namespace qlinflow
