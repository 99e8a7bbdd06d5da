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

#ifndef QLINFLOW_FLOWS_HPP
#define QLINFLOW_FLOWS_HPP

#include <cmath>
#include <stdexcept>
#include <string_view>

#include "qlinflow/qstate.hpp"

namespace qlinflow {

/// Raised when a fixed-step integration produces a non-finite value.
struct IntegrationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The two dynamical laws on the Bloch ball.
///
/// QuasiLinearBoost: ṅ = g(e − n(e·n)), solved by a Lorentz boost of rapidity gt along e.
/// Weinberg:         ṅ = g(e×n)(e·n), a rotation about e with angle gt(e·ξ).
enum class FlowKind { QuasiLinearBoost, Weinberg };

std::string_view to_string(FlowKind kind);
/// Accepts "boost" / "quasilinear" and "weinberg". Throws std::invalid_argument otherwise.
FlowKind parse_flow_kind(std::string_view name);

/// Unit direction e and positive rate g. Time is measured in units where g·t is dimensionless.
class FlowParams {
   public:
    static constexpr double kUnitTolerance = 1e-12;

    /// Throws InvalidState if |e| deviates from 1 by more than kUnitTolerance or g is not positive and finite.
    FlowParams(const Vec3 &e, double g);

    /// Scales a nonzero vector to unit length before validating.
    static FlowParams normalized(const Vec3 &direction, double g);

    const Vec3 &e() const {
        return e_;
    }
    double g() const {
        return g_;
    }

   private:
    Vec3 e_;
    double g_;
};

/// Relativistic velocity addition: boosts velocity v by rapidity eta along unit direction e,
///
///   v' = (v + e[sinh η + (cosh η − 1)(e·v)]) / (cosh η + (e·v) sinh η).
///
/// Evaluated in an equivalent form without cosh/sinh overflow or cancellation at large |η|,
/// so the result stays finite (and the antipode −e stays fixed) for any finite η.
Vec3 boost_velocity(const Vec3 &v, const Vec3 &e, double eta);

/// Closed-form boost flow: boost_velocity(ξ, e, g t).
BlochVector quasilinear_flow(const BlochVector &xi, const FlowParams &p, double t);

/// Closed-form Weinberg flow: ξ cos θ + (e×ξ) sin θ + e(e·ξ)(1 − cos θ), θ = g t (e·ξ).
BlochVector weinberg_flow(const BlochVector &xi, const FlowParams &p, double t);

/// Dispatches to the closed form selected by `kind`.
BlochVector evolve(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t);

// Right-hand sides take unconstrained vectors: intermediate Runge-Kutta stages may leave the ball.
Vec3 quasilinear_rhs(const Vec3 &n, const FlowParams &p);
Vec3 weinberg_rhs(const Vec3 &n, const FlowParams &p);
Vec3 rhs(FlowKind kind, const Vec3 &n, const FlowParams &p);

/// Classical fixed-step fourth-order Runge-Kutta integration of the selected law from ξ over [0, t].
///
/// Returns the raw end point, which is not re-validated as a state so that coarse step counts can be
/// studied. Throws std::invalid_argument if steps == 0 or t is not finite, and IntegrationFailure
/// if an intermediate value becomes non-finite.
Vec3 rk4_integrate(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t, unsigned steps);

/// |f_{t2}(f_{t1}(ξ)) − f_{t1+t2}(ξ)| for the closed form of `kind`.
double semigroup_check(FlowKind kind, const BlochVector &xi, const FlowParams &p, double t1, double t2);

}  // namespace qlinflow

#endif
