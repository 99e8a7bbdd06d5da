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

#ifndef QLINFLOW_QSTATE_HPP
#define QLINFLOW_QSTATE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qlinflow {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

/// Tolerances used by the state validators.
namespace tol {
inline constexpr double kBlochNorm = 1e-9;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kEigenvalue = 1e-12;
inline constexpr double kIdempotent = 1e-12;
inline constexpr double kWeightSum = 1e-12;
inline constexpr double kProbability = 1e-12;
}  // namespace tol

/// Raised when a vector or matrix fails a physical-state invariant.
struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a selective measurement conditions on a branch of (numerically) zero probability.
struct ZeroProbabilityBranch : std::domain_error {
    using std::domain_error::domain_error;
};

/// A point of the closed unit ball (up to kBlochNorm), the polarization of a qubit.
class BlochVector {
   public:
    BlochVector() : n_(Vec3::Zero()) {
    }
    BlochVector(double x, double y, double z);
    explicit BlochVector(const Vec3 &n);

    const Vec3 &vec() const {
        return n_;
    }
    double x() const {
        return n_.x();
    }
    double y() const {
        return n_.y();
    }
    double z() const {
        return n_.z();
    }
    double norm() const {
        return n_.norm();
    }

    friend bool operator==(const BlochVector &a, const BlochVector &b) {
        return a.n_ == b.n_;
    }

   private:
    Vec3 n_;
};

/// Hermitian, unit-trace, positive-semidefinite N×N matrix. Construction validates.
template <int N>
class DensityMatrix {
   public:
    using Matrix = Eigen::Matrix<Complex, N, N>;

    explicit DensityMatrix(const Matrix &m);

    const Matrix &matrix() const {
        return m_;
    }
    Complex operator()(int r, int c) const {
        return m_(r, c);
    }
    /// trace(ρ²).
    double purity() const;

    /// Returns an empty string if `m` is a valid density matrix, else a description of the failure.
    static std::string check(const Matrix &m);

   private:
    Matrix m_;
};

using QubitDensity = DensityMatrix<2>;
using TwoQubitDensity = DensityMatrix<4>;

/// Hermitian idempotent N×N matrix.
template <int N>
class Projector {
   public:
    using Matrix = Eigen::Matrix<Complex, N, N>;

    explicit Projector(const Matrix &m);

    static Projector identity();
    static Projector zero();

    const Matrix &matrix() const {
        return m_;
    }
    /// I - P.
    Projector complement() const;

   private:
    Matrix m_;
};

using Projector1Q = Projector<2>;
using Projector2Q = Projector<4>;

struct EnsembleMember {
    double weight;
    QubitDensity state;
};

/// Weighted list of qubit states; weights lie in [0, 1] and sum to 1.
class Ensemble {
   public:
    explicit Ensemble(std::vector<EnsembleMember> members);

    const std::vector<EnsembleMember> &members() const {
        return members_;
    }
    std::size_t size() const {
        return members_.size();
    }
    const EnsembleMember &operator[](std::size_t i) const {
        return members_[i];
    }

   private:
    std::vector<EnsembleMember> members_;
};

/// The Pauli triple (σx, σy, σz).
const std::array<Eigen::Matrix2cd, 3> &pauli();

QubitDensity bloch_to_density(const BlochVector &n);
BlochVector density_to_bloch(const QubitDensity &rho);

/// Von Neumann entropy in nats, with 0·ln 0 taken as 0.
double von_neumann_entropy(const QubitDensity &rho);

/// ½ tr|ρ1 − ρ2|. For qubits this is half the Euclidean distance between the Bloch vectors.
double trace_distance(const QubitDensity &rho1, const QubitDensity &rho2);

/// The singlet (|01⟩ − |10⟩)/√2 as a density matrix, basis |00⟩,|01⟩,|10⟩,|11⟩, A on the left.
TwoQubitDensity bell_state();

/// (cos φ, sin φ, 0).
Vec3 polarization_vector(double phi);

/// ½(I + ζ_φ·σ) ⊗ I, a rank-2 projector acting on qubit A only.
Projector2Q projector_A(double phi);

/// ½(I + u·σ) for a unit vector u.
Projector1Q qubit_projector(const Vec3 &u);

/// PρP + (I−P)ρ(I−P).
TwoQubitDensity nonselective_measure(const TwoQubitDensity &rho, const Projector2Q &p);

/// One outcome of a projective measurement: the normalized post-measurement state and its probability.
template <int N>
struct MeasurementOutcome {
    DensityMatrix<N> state;
    double probability;
};

/// Conditions ρ on the outcome P: returns (PρP / tr(PρP), tr(Pρ)).
/// Throws ZeroProbabilityBranch if tr(Pρ) <= tol::kProbability.
template <int N>
MeasurementOutcome<N> selective_measure(const DensityMatrix<N> &rho, const Projector<N> &p);

/// Marginal of the right (B) factor. The raw overload accepts any 4×4 matrix and is linear.
Eigen::Matrix2cd partial_trace_A(const Eigen::Matrix4cd &m);
QubitDensity partial_trace_A(const TwoQubitDensity &rho);

/// Σ w_i ρ_i.
QubitDensity mixture(const Ensemble &ens);

}  // namespace qlinflow

#endif
