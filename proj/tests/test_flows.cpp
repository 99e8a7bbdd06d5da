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

#include <cmath>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qlinflow/sampling.hpp"

using namespace qlinflow;

namespace {

const FlowParams kZ(Vec3::UnitZ(), 1.0);
const FlowParams kX(Vec3::UnitX(), 1.0);

FlowParams random_params(SampleStream &s) {
    return FlowParams(s.unit_vector(), 0.25 + 2.0 * s.uniform());
}

}  // namespace

TEST(flow_params, validation) {
    ASSERT_THROW(FlowParams(Vec3(1, 1, 0), 1.0), InvalidState);
    ASSERT_THROW(FlowParams(Vec3::UnitX(), 0.0), InvalidState);
    ASSERT_THROW(FlowParams(Vec3::UnitX(), -1.0), InvalidState);
    ASSERT_THROW(FlowParams(Vec3::UnitX(), INFINITY), InvalidState);
    ASSERT_THROW(FlowParams::normalized(Vec3::Zero(), 1.0), InvalidState);
    EXPECT_NEAR(FlowParams::normalized(Vec3(3, 4, 0), 2.0).e().norm(), 1.0, 1e-15);
}

TEST(flow_kind, parse) {
    EXPECT_EQ(parse_flow_kind("boost"), FlowKind::QuasiLinearBoost);
    EXPECT_EQ(parse_flow_kind("weinberg"), FlowKind::Weinberg);
    EXPECT_EQ(to_string(FlowKind::Weinberg), "weinberg");
    ASSERT_THROW(parse_flow_kind("lindblad"), std::invalid_argument);
}

TEST(boost_velocity, examples) {
    Vec3 e = Vec3(1, -2, 2) / 3.0;
    Vec3 v(0.3, 0.1, -0.5);
    EXPECT_LT((boost_velocity(v, e, 0.0) - v).norm(), 1e-16);
    EXPECT_LT((boost_velocity(Vec3::Zero(), e, 0.8) - e * std::tanh(0.8)).norm(), 1e-15);
    for (double eta : {-3.0, 0.2, 4.0, 45.0}) {
        EXPECT_LT((boost_velocity(e, e, eta) - e).norm(), 1e-15);
    }
    ASSERT_THROW(boost_velocity(Vec3(1, 1, 0), e, 1.0), InvalidState);
}

TEST(boost_velocity, large_rapidity_stays_finite) {
    Vec3 e = Vec3::UnitY();
    Vec3 v(0.2, -0.3, 0.1);
    for (double eta : {29.0, 31.0, 200.0, 800.0, 1e6}) {
        Vec3 out = boost_velocity(v, e, eta);
        ASSERT_TRUE(out.allFinite()) << eta;
        EXPECT_LE(out.norm(), 1.0 + 1e-9);
        EXPECT_LT((out - e).norm(), 1e-9) << eta;
    }
}

TEST(boost_velocity, matches_hyperbolic_formula) {
    for (std::uint64_t i = 0; i < 300; i++) {
        SampleStream s(20, i);
        Vec3 e = s.unit_vector();
        Vec3 v = s.uniform_ball();
        double eta = 12 * s.uniform() - 6;
        double ch = std::cosh(eta);
        double sh = std::sinh(eta);
        Vec3 direct = (v + e * (sh + (ch - 1) * e.dot(v))) / (ch + e.dot(v) * sh);
        EXPECT_LT((boost_velocity(v, e, eta) - direct).norm(), 1e-12);
    }
}

TEST(boost_velocity, rapidity_adds) {
    for (std::uint64_t i = 0; i < 200; i++) {
        SampleStream s(21, i);
        Vec3 e = s.unit_vector();
        Vec3 v = s.uniform_ball();
        double a = 3 * s.uniform();
        double b = 3 * s.uniform();
        EXPECT_LT((boost_velocity(boost_velocity(v, e, a), e, b) - boost_velocity(v, e, a + b)).norm(), 1e-12);
        // Inverse boost.
        EXPECT_LT((boost_velocity(boost_velocity(v, e, a), e, -a) - v).norm(), 1e-12);
    }
}

TEST(quasilinear_flow, examples) {
    BlochVector xi(0.1, -0.4, 0.3);
    EXPECT_LT((quasilinear_flow(xi, kZ, 0.0).vec() - xi.vec()).norm(), 1e-16);
    // Frozen from an independent RK4 integration of ṅ = g(e − n(e·n)) with h = 1e-4.
    EXPECT_LT((quasilinear_flow(BlochVector(), kZ, 1.0).vec() - Vec3(0, 0, 0.7615941559557649)).norm(), 1e-15);
    for (double t : {0.0, 0.5, 3.0, 40.0}) {
        EXPECT_LT((quasilinear_flow(BlochVector(kX.e()), kX, t).vec() - kX.e()).norm(), 1e-15);
    }
}

TEST(quasilinear_flow, equals_boost_of_rapidity_gt) {
    for (std::uint64_t i = 0; i < 200; i++) {
        SampleStream s(22, i);
        FlowParams p = random_params(s);
        BlochVector xi(s.uniform_ball());
        double t = 10 * s.uniform();
        EXPECT_EQ(quasilinear_flow(xi, p, t).vec(), boost_velocity(xi.vec(), p.e(), p.g() * t));
    }
}

TEST(quasilinear_rhs, examples) {
    FlowParams p(Vec3(0, 0.6, 0.8), 2.5);
    EXPECT_LT(quasilinear_rhs(p.e(), p).norm(), 1e-15);
    EXPECT_LT(quasilinear_rhs(-p.e(), p).norm(), 1e-15);
    EXPECT_LT((quasilinear_rhs(Vec3::Zero(), p) - 2.5 * p.e()).norm(), 1e-15);
}

TEST(quasilinear_rhs, matches_finite_difference_of_closed_form) {
    const double h = 1e-5;
    for (std::uint64_t i = 0; i < 50; i++) {
        SampleStream s(23, i);
        FlowParams p = random_params(s);
        BlochVector xi(s.uniform_ball());
        double t = 2 * s.uniform() + h;
        Vec3 fd = (quasilinear_flow(xi, p, t + h).vec() - quasilinear_flow(xi, p, t - h).vec()) / (2 * h);
        Vec3 n = quasilinear_flow(xi, p, t).vec();
        EXPECT_LT((fd - quasilinear_rhs(n, p)).norm(), 1e-8);
    }
}

TEST(weinberg_rhs, examples) {
    FlowParams p(Vec3::UnitX(), 1.7);
    EXPECT_EQ(weinberg_rhs(Vec3(0, 0.3, -0.2), p).norm(), 0.0);
    EXPECT_EQ(weinberg_rhs(p.e(), p).norm(), 0.0);
    for (std::uint64_t i = 0; i < 100; i++) {
        SampleStream s(24, i);
        FlowParams q = random_params(s);
        Vec3 n = s.uniform_ball();
        Vec3 r = weinberg_rhs(n, q);
        EXPECT_LT(std::abs(r.dot(n)), 1e-15);
        EXPECT_LT(std::abs(r.dot(q.e())), 1e-15);
    }
}

TEST(weinberg_flow, examples) {
    BlochVector xi(0.2, 0.5, -0.1);
    EXPECT_LT((weinberg_flow(xi, kX, 0.0).vec() - xi.vec()).norm(), 1e-16);
    BlochVector orth(0, 0.6, -0.7);
    for (double t : {0.5, 3.0, 100.0}) {
        EXPECT_EQ(weinberg_flow(orth, kX, t).vec(), orth.vec());
    }
    // Frozen from an independent RK4 integration of ṅ = g(e×n)(e·n) with h = 1e-4.
    double r = std::sqrt(2.0) / 2;
    Vec3 expected(0.7071067811865476, 0.5375741099526153, 0.4593626849327852);
    EXPECT_LT((weinberg_flow(BlochVector(r, r, 0), kX, 1.0).vec() - expected).norm(), 1e-13);
}

TEST(weinberg_flow, conserves_norm_and_projection) {
    for (std::uint64_t i = 0; i < 200; i++) {
        SampleStream s(25, i);
        FlowParams p = random_params(s);
        BlochVector xi(s.uniform_ball());
        double t = 10 * s.uniform();
        Vec3 n = weinberg_flow(xi, p, t).vec();
        EXPECT_NEAR(n.norm(), xi.norm(), 1e-12);
        EXPECT_NEAR(n.dot(p.e()), xi.vec().dot(p.e()), 1e-12);
    }
}

TEST(rk4_integrate, examples) {
    BlochVector xi(0.3, 0.2, -0.4);
    for (unsigned steps : {1u, 7u, 100u}) {
        EXPECT_EQ(rk4_integrate(FlowKind::QuasiLinearBoost, xi, kZ, 0.0, steps), xi.vec());
    }
    Vec3 n = rk4_integrate(FlowKind::QuasiLinearBoost, BlochVector(), kZ, 1.0, 10000);
    EXPECT_LT((n - Vec3(0, 0, std::tanh(1.0))).norm(), 1e-8);
    ASSERT_THROW(rk4_integrate(FlowKind::Weinberg, xi, kZ, 1.0, 0), std::invalid_argument);
    ASSERT_THROW(rk4_integrate(FlowKind::Weinberg, xi, kZ, NAN, 10), std::invalid_argument);
}

TEST(rk4_integrate, non_finite_is_integration_failure) {
    // One huge step launches the quadratic right-hand side past double range.
    FlowParams p(Vec3::UnitZ(), 1.0);
    ASSERT_THROW(rk4_integrate(FlowKind::QuasiLinearBoost, BlochVector(0, 0, -0.5), p, 1e200, 1), IntegrationFailure);
}

TEST(rk4_integrate, matches_plain_oracle_rk4) {
    for (std::uint64_t i = 0; i < 20; i++) {
        SampleStream s(26, i);
        FlowParams p = random_params(s);
        BlochVector xi(s.uniform_ball());
        auto ql = [&](const Vec3 &n) -> Vec3 { return p.g() * (p.e() - n * p.e().dot(n)); };
        auto wb = [&](const Vec3 &n) -> Vec3 { return p.g() * p.e().cross(n) * p.e().dot(n); };
        EXPECT_LT((rk4_integrate(FlowKind::QuasiLinearBoost, xi, p, 1.3, 200) - oracle::rk4(ql, xi.vec(), 1.3, 200)).norm(),
                  1e-14);
        EXPECT_LT((rk4_integrate(FlowKind::Weinberg, xi, p, 1.3, 200) - oracle::rk4(wb, xi.vec(), 1.3, 200)).norm(), 1e-14);
    }
}

TEST(rk4_integrate, fourth_order_convergence) {
    BlochVector xi(0.3, -0.5, 0.2);
    FlowParams p(Vec3(0, 0.6, 0.8), 1.0);
    for (FlowKind kind : {FlowKind::QuasiLinearBoost, FlowKind::Weinberg}) {
        BlochVector exact = evolve(kind, xi, p, 2.0);
        double coarse = (rk4_integrate(kind, xi, p, 2.0, 40) - exact.vec()).norm();
        double fine = (rk4_integrate(kind, xi, p, 2.0, 80) - exact.vec()).norm();
        double ratio = coarse / fine;
        EXPECT_GE(ratio, 12.0) << to_string(kind);
        EXPECT_LE(ratio, 20.0) << to_string(kind);
    }
}

TEST(semigroup_check, examples) {
    SampleStream s(27, 0);
    BlochVector xi(s.uniform_ball());
    FlowParams p = random_params(s);
    EXPECT_EQ(semigroup_check(FlowKind::QuasiLinearBoost, xi, p, 0.0, 0.9), 0.0);
    EXPECT_EQ(semigroup_check(FlowKind::Weinberg, xi, p, 0.0, 0.9), 0.0);
    EXPECT_LE(semigroup_check(FlowKind::QuasiLinearBoost, xi, p, 0.3, 0.7), 1e-12);
    EXPECT_LE(semigroup_check(FlowKind::Weinberg, xi, p, 0.5, 0.5), 1e-12);
}

TEST(quasilinear_flow, ball_and_purity_property) {
    for (std::uint64_t i = 0; i < 300; i++) {
        SampleStream s(28, i);
        FlowParams p = random_params(s);
        BlochVector inner(s.uniform_ball());
        BlochVector pure(s.unit_vector());
        double t = 10.0 / p.g() * s.uniform();
        EXPECT_LE(quasilinear_flow(inner, p, t).norm(), 1.0 + 1e-9);
        EXPECT_NEAR(quasilinear_flow(pure, p, t).norm(), 1.0, 1e-9);
        if (p.e().dot(inner.vec()) > -1 + 1e-6) {
            EXPECT_LT((quasilinear_flow(inner, p, 20.0 / p.g()).vec() - p.e()).norm(), 1e-6);
        }
    }
}

TEST(quasilinear_flow, antipode_is_fixed) {
    FlowParams p(Vec3(0.6, 0, 0.8), 1.0);
    BlochVector anti(-p.e());
    for (double t : {0.5, 5.0, 20.0, 50.0, 1e4}) {
        EXPECT_LT((quasilinear_flow(anti, p, t).vec() + p.e()).norm(), 1e-12) << t;
    }
}

TEST(quasilinear_flow, entropy_vanishes_asymptotically) {
    FlowParams p(Vec3::UnitZ(), 1.0);
    for (std::uint64_t i = 0; i < 50; i++) {
        SampleStream s(29, i);
        BlochVector xi(s.uniform_ball());
        if (p.e().dot(xi.vec()) < -1 + 1e-3) {
            continue;
        }
        EXPECT_LT(von_neumann_entropy(bloch_to_density(quasilinear_flow(xi, p, 25.0))), 1e-8);
    }
}
