// Copyright 2026 The qfisher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Phase-estimation interferometer: rho(theta) = exp(-i theta J_n) rho
 * exp(+i theta J_n), classical Fisher information of projective
 * measurements, and the quantum Cramer-Rao bound 1/sqrt(F_Q).
 */

#pragma once

#include <bit>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collective.hpp"
#include "errors.hpp"
#include "matcore.hpp"
#include "qfi.hpp"
#include "states.hpp"

namespace qfisher {

inline constexpr double kDefaultFdStep = 1e-4;
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kDefaultProbeTheta = 0.1;
inline constexpr double kProjectorTolerance = 1e-9;

struct PhaseSetting {
    double theta = kDefaultProbeTheta;
    Direction direction = Direction::along(Axis::z);
};

/**
 * Complete projective measurement. Each outcome is stored as an isometry W
 * whose columns span the projector's range, P = W W^dagger.
 */
class Measurement {
  public:
    /// Validates orthonormal columns per outcome and completeness sum P = I.
    static Measurement from_isometries(std::vector<ComplexMatrix> ranges) {
        if (ranges.empty()) {
            throw ParameterError("measurement needs at least one outcome");
        }
        const auto dim = ranges.front().rows();
        ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
        for (const auto &w : ranges) {
            if (w.rows() != dim) {
                throw ParameterError("measurement outcomes differ in dimension");
            }
            const ComplexMatrix gram = w.adjoint() * w;
            if ((gram - identity(gram.rows())).cwiseAbs().maxCoeff() >
                kProjectorTolerance) {
                throw ParameterError("measurement outcome is not a projector");
            }
            total += w * w.adjoint();
        }
        if ((total - identity(dim)).cwiseAbs().maxCoeff() > kProjectorTolerance) {
            throw ParameterError("measurement projectors do not sum to identity");
        }
        Measurement m;
        m.ranges_ = std::move(ranges);
        return m;
    }

    /// Accepts explicit projectors; each must satisfy P^2 = P and P = P^dagger.
    static Measurement from_projectors(const std::vector<ComplexMatrix> &projectors) {
        std::vector<ComplexMatrix> ranges;
        for (const auto &p : projectors) {
            if (p.rows() != p.cols() ||
                (p * p - p).cwiseAbs().maxCoeff() > kProjectorTolerance) {
                throw ParameterError("measurement operator is not idempotent");
            }
            const auto spec = eigh(p);
            std::vector<Eigen::Index> cols;
            for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
                if (spec.eigenvalues(k) > 0.5) {
                    cols.push_back(k);
                }
            }
            ComplexMatrix w(p.rows(), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) {
                w.col(static_cast<Eigen::Index>(c)) = spec.eigenvectors.col(cols[c]);
            }
            ranges.push_back(std::move(w));
        }
        return from_isometries(std::move(ranges));
    }

    [[nodiscard]] std::size_t outcome_count() const noexcept { return ranges_.size(); }

    [[nodiscard]] const std::vector<ComplexMatrix> &ranges() const noexcept {
        return ranges_;
    }

    [[nodiscard]] ComplexMatrix projector(std::size_t k) const {
        return ranges_.at(k) * ranges_.at(k).adjoint();
    }

    [[nodiscard]] Eigen::Index dim() const { return ranges_.front().rows(); }

    /// p_k = tr(P_k rho).
    [[nodiscard]] std::vector<double> probabilities(const QuantumState &rho) const {
        if (rho.dim() != dim()) {
            throw ParameterError("measurement dimension does not match state");
        }
        std::vector<double> out;
        out.reserve(ranges_.size());
        for (const auto &w : ranges_) {
            if (rho.is_pure()) {
                out.push_back((w.adjoint() * *rho.state_vector()).squaredNorm());
            } else {
                out.push_back((w.adjoint() * rho.rho() * w).trace().real());
            }
        }
        return out;
    }

  private:
    Measurement() = default;
    std::vector<ComplexMatrix> ranges_;
};

/// Projectors onto the eigenspaces of a Hermitian operator.
[[nodiscard]] inline Measurement eigenbasis_measurement(const ComplexMatrix &a,
                                                        double degeneracy_tol = 1e-9) {
    const auto spec = eigh(a);
    std::vector<ComplexMatrix> ranges;
    Eigen::Index start = 0;
    const auto d = spec.eigenvalues.size();
    for (Eigen::Index k = 1; k <= d; ++k) {
        if (k == d ||
            spec.eigenvalues(k) - spec.eigenvalues(start) > degeneracy_tol) {
            ranges.push_back(spec.eigenvectors.middleCols(start, k - start));
            start = k;
        }
    }
    return Measurement::from_isometries(std::move(ranges));
}

/// Projectors onto the +1 and -1 eigenspaces of sigma_l (x) ... (x) sigma_l.
[[nodiscard]] inline Measurement parity_measurement(Axis l, int n_qubits) {
    const auto dim = qubit_dimension(n_qubits);
    // sigma_l^{(x)N} = U^{(x)N} Z^{(x)N} U^{(x)N}^dagger with U = basis_rotation(l).
    const ComplexMatrix rotated =
        apply_local(basis_rotation(l), n_qubits, identity(dim));
    std::vector<Eigen::Index> even;
    std::vector<Eigen::Index> odd;
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int ones = std::popcount(static_cast<unsigned long long>(b));
        (ones % 2 == 0 ? even : odd).push_back(b);
    }
    auto gather = [&](const std::vector<Eigen::Index> &cols) {
        ComplexMatrix w(dim, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            w.col(static_cast<Eigen::Index>(c)) = rotated.col(cols[c]);
        }
        return w;
    };
    return Measurement::from_isometries({gather(even), gather(odd)});
}

/// Every qubit measured in the eigenbasis of sigma_l: 2^N rank-one outcomes.
[[nodiscard]] inline Measurement product_measurement(Axis l, int n_qubits) {
    const auto dim = qubit_dimension(n_qubits);
    const ComplexMatrix rotated =
        apply_local(basis_rotation(l), n_qubits, identity(dim));
    std::vector<ComplexMatrix> ranges;
    ranges.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index b = 0; b < dim; ++b) {
        ranges.emplace_back(rotated.col(b));
    }
    return Measurement::from_isometries(std::move(ranges));
}

/// Haar-random orthonormal basis (QR of a complex Gaussian matrix).
template <class Rng>
[[nodiscard]] Measurement random_basis_measurement(int n_qubits, Rng &rng) {
    const auto dim = qubit_dimension(n_qubits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const ComplexMatrix q = qr.householderQ() * identity(dim);
    std::vector<ComplexMatrix> ranges;
    for (Eigen::Index b = 0; b < dim; ++b) {
        ranges.emplace_back(q.col(b));
    }
    return Measurement::from_isometries(std::move(ranges));
}

/// exp(-i theta J_n).
[[nodiscard]] inline ComplexMatrix phase_unitary(const PhaseSetting &setting,
                                                 int n_qubits) {
    return herm_exp(j_direction(setting.direction, n_qubits), -setting.theta);
}

[[nodiscard]] inline QuantumState evolve_with(const QuantumState &rho,
                                              const ComplexMatrix &u) {
    if (rho.is_pure()) {
        return QuantumState::pure(rho.n_qubits(), u * *rho.state_vector());
    }
    return QuantumState::from_trusted_density(rho.n_qubits(),
                                              u * rho.rho() * u.adjoint());
}

/// exp(-i theta J_n) rho exp(+i theta J_n).
[[nodiscard]] inline QuantumState evolve(const QuantumState &rho,
                                         const PhaseSetting &setting) {
    if (setting.theta == 0.0) {
        return rho;
    }
    return evolve_with(rho, phase_unitary(setting, rho.n_qubits()));
}

struct ClassicalFisherResult {
    double value = 0.0;
    /// Outcomes dropped because p_k(theta) < probability floor.
    std::size_t excluded_outcomes = 0;
};

/**
 * F_cl(theta) = sum_k (d p_k / d theta)^2 / p_k with a central finite
 * difference of step h. Outcomes with p_k < p_floor are left out.
 */
[[nodiscard]] inline ClassicalFisherResult
classical_fisher(const QuantumState &rho, const PhaseSetting &setting,
                 const Measurement &meas, double h = kDefaultFdStep,
                 double p_floor = kProbabilityFloor) {
    if (!(h > 0.0)) {
        throw ParameterError("finite-difference step must be positive");
    }
    const int n = rho.n_qubits();
    const auto spec = eigh(j_direction(setting.direction, n));
    auto unitary = [&](double theta) {
        ComplexVector phases(spec.eigenvalues.size());
        for (Eigen::Index k = 0; k < phases.size(); ++k) {
            phases(k) = std::exp(-kI * (theta * spec.eigenvalues(k)));
        }
        return ComplexMatrix(spec.eigenvectors * phases.asDiagonal() *
                             spec.eigenvectors.adjoint());
    };
    const auto p0 = meas.probabilities(evolve_with(rho, unitary(setting.theta)));
    const auto plus =
        meas.probabilities(evolve_with(rho, unitary(setting.theta + h)));
    const auto minus =
        meas.probabilities(evolve_with(rho, unitary(setting.theta - h)));
    ClassicalFisherResult out;
    for (std::size_t k = 0; k < p0.size(); ++k) {
        if (p0[k] < p_floor) {
            ++out.excluded_outcomes;
            continue;
        }
        const double dp = (plus[k] - minus[k]) / (2.0 * h);
        out.value += dp * dp / p0[k];
    }
    return out;
}

/// QFI at or below this makes the Cramer-Rao bound unbounded.
inline constexpr double kInsensitiveTolerance = 1e-10;

/// 1/sqrt(F_Q[rho, J_n]); nullopt when the state is insensitive to J_n.
[[nodiscard]] inline std::optional<double> crb_bound(double fq) {
    if (!(fq > kInsensitiveTolerance)) {
        return std::nullopt;
    }
    return 1.0 / std::sqrt(fq);
}

[[nodiscard]] inline std::optional<double> crb_bound(const QuantumState &rho,
                                                     const Direction &n) {
    return crb_bound(qfi_direction(rho, n));
}

} // namespace qfisher
