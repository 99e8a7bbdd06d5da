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

#include "qlinflow/qstate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qlinflow {

namespace {

std::string fmt_vec(const Vec3 &v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
    return ss.str();
}

template <int N>
double hermitian_defect(const Eigen::Matrix<Complex, N, N> &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {
}

BlochVector::BlochVector(const Vec3 &n) : n_(n) {
    if (!n.allFinite()) {
        throw InvalidState("Bloch vector has non-finite components " + fmt_vec(n));
    }
    if (n.norm() > 1.0 + tol::kBlochNorm) {
        throw InvalidState("Bloch vector " + fmt_vec(n) + " lies outside the unit ball");
    }
}

template <int N>
std::string DensityMatrix<N>::check(const Matrix &m) {
    if (!m.allFinite()) {
        return "density matrix has non-finite entries";
    }
    if (hermitian_defect<N>(m) > tol::kHermitian) {
        return "density matrix is not Hermitian";
    }
    double tr_re = m.trace().real();
    if (std::abs(tr_re - 1.0) > tol::kTrace || std::abs(m.trace().imag()) > tol::kTrace) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "density matrix trace " << tr_re << " differs from 1";
        return ss.str();
    }
    Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    if (lo < -tol::kEigenvalue) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "density matrix has negative eigenvalue " << lo;
        return ss.str();
    }
    return {};
}

template <int N>
DensityMatrix<N>::DensityMatrix(const Matrix &m) : m_(m) {
    auto err = check(m);
    if (!err.empty()) {
        throw InvalidState(err);
    }
}

template <int N>
double DensityMatrix<N>::purity() const {
    return (m_ * m_).trace().real();
}

template <int N>
Projector<N>::Projector(const Matrix &m) : m_(m) {
    if (!m.allFinite() || hermitian_defect<N>(m) > tol::kHermitian) {
        throw InvalidState("projector is not Hermitian");
    }
    if ((m * m - m).cwiseAbs().maxCoeff() > tol::kIdempotent) {
        throw InvalidState("projector is not idempotent");
    }
}

template <int N>
Projector<N> Projector<N>::identity() {
    return Projector(Matrix::Identity());
}

template <int N>
Projector<N> Projector<N>::zero() {
    return Projector(Matrix::Zero());
}

template <int N>
Projector<N> Projector<N>::complement() const {
    return Projector(Matrix::Identity() - m_);
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;
template class Projector<2>;
template class Projector<4>;

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw InvalidState("ensemble has no members");
    }
    double total = 0;
    for (const auto &m : members_) {
        if (!(m.weight >= 0.0 && m.weight <= 1.0)) {
            throw InvalidState("ensemble weight outside [0, 1]");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > tol::kWeightSum) {
        throw InvalidState("ensemble weights do not sum to 1");
    }
}

const std::array<Eigen::Matrix2cd, 3> &pauli() {
    static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
        const Complex i(0, 1);
        std::array<Eigen::Matrix2cd, 3> s;
        s[0] << 0, 1, 1, 0;
        s[1] << 0, -i, i, 0;
        s[2] << 1, 0, 0, -1;
        return s;
    }();
    return sigma;
}

QubitDensity bloch_to_density(const BlochVector &n) {
    const auto &s = pauli();
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m += n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
    return QubitDensity(0.5 * m);
}

BlochVector density_to_bloch(const QubitDensity &rho) {
    const auto &s = pauli();
    Vec3 n;
    for (int k = 0; k < 3; k++) {
        n[k] = (rho.matrix() * s[k]).trace().real();
    }
    return BlochVector(n);
}

double von_neumann_entropy(const QubitDensity &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0;
    for (int k = 0; k < 2; k++) {
        double p = es.eigenvalues()[k];
        if (p > 0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double trace_distance(const QubitDensity &rho1, const QubitDensity &rho2) {
    // For 2x2 Hermitian traceless D = ½ d·σ, the eigenvalues are ±½|d|, so ½ tr|D| = ½|d|.
    const auto &s = pauli();
    Eigen::Matrix2cd diff = rho1.matrix() - rho2.matrix();
    Vec3 d;
    for (int k = 0; k < 3; k++) {
        d[k] = (diff * s[k]).trace().real();
    }
    return 0.5 * d.norm();
}

TwoQubitDensity bell_state() {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[1] = 1.0 / std::sqrt(2.0);
    psi[2] = -1.0 / std::sqrt(2.0);
    return TwoQubitDensity(psi * psi.adjoint());
}

Vec3 polarization_vector(double phi) {
    return Vec3(std::cos(phi), std::sin(phi), 0.0);
}

Projector1Q qubit_projector(const Vec3 &u) {
    const auto &s = pauli();
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() + u.x() * s[0] + u.y() * s[1] + u.z() * s[2];
    return Projector1Q(0.5 * m);
}

Projector2Q projector_A(double phi) {
    Eigen::Matrix2cd a = qubit_projector(polarization_vector(phi)).matrix();
    Eigen::Matrix4cd m;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m.block<2, 2>(2 * r, 2 * c) = a(r, c) * Eigen::Matrix2cd::Identity();
        }
    }
    return Projector2Q(m);
}

TwoQubitDensity nonselective_measure(const TwoQubitDensity &rho, const Projector2Q &p) {
    const Eigen::Matrix4cd &pm = p.matrix();
    Eigen::Matrix4cd q = Eigen::Matrix4cd::Identity() - pm;
    Eigen::Matrix4cd out = pm * rho.matrix() * pm + q * rho.matrix() * q;
    return TwoQubitDensity(out);
}

template <int N>
MeasurementOutcome<N> selective_measure(const DensityMatrix<N> &rho, const Projector<N> &p) {
    using M = typename DensityMatrix<N>::Matrix;
    double prob = (p.matrix() * rho.matrix()).trace().real();
    if (!(prob > tol::kProbability)) {
        throw ZeroProbabilityBranch("selective measurement outcome has zero probability");
    }
    M post = p.matrix() * rho.matrix() * p.matrix();
    post /= post.trace().real();
    return {DensityMatrix<N>(post), prob};
}

template MeasurementOutcome<2> selective_measure<2>(const DensityMatrix<2> &, const Projector<2> &);
template MeasurementOutcome<4> selective_measure<4>(const DensityMatrix<4> &, const Projector<4> &);

Eigen::Matrix2cd partial_trace_A(const Eigen::Matrix4cd &m) {
    return m.block<2, 2>(0, 0) + m.block<2, 2>(2, 2);
}

QubitDensity partial_trace_A(const TwoQubitDensity &rho) {
    return QubitDensity(partial_trace_A(rho.matrix()));
}

QubitDensity mixture(const Ensemble &ens) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (const auto &member : ens.members()) {
        m += member.weight * member.state.matrix();
    }
    return QubitDensity(m);
}

}  // namespace qlinflow
