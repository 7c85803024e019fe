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
 * Quantum Fisher information for collective spin generators.
 *
 * All directional information is carried by the 3x3 matrix Gamma_C with
 * F_Q[rho, J_n] = n^T Gamma_C n. It is evaluated from the spectral
 * decomposition rho = sum_k lambda_k |k><k| as
 *
 *   [Gamma_C]_ij = 2 sum_{l,m} (lambda_l - lambda_m)^2 / (lambda_l + lambda_m)
 *                  <l|J_i|m><m|J_j|l>,
 *
 * skipping pairs with lambda_l + lambda_m <= kRankEpsilon. Pairs with one
 * index in the kernel of rho are summed through the kernel projector
 * 1 - V V^dagger, so only the support of rho is ever diagonalized against
 * the generators.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "collective.hpp"
#include "matcore.hpp"
#include "states.hpp"

namespace qfisher {

/// Values in [-kClampTolerance, 0) are reported as 0.
inline constexpr double kClampTolerance = 1e-10;

/// (F_Q[rho, J_x], F_Q[rho, J_y], F_Q[rho, J_z]).
using FisherTriple = Eigen::Vector3d;

struct GammaMatrix {
    Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
    /// Largest |Im| discarded when taking the real part.
    double imag_residue = 0.0;

    [[nodiscard]] FisherTriple fisher_triple() const { return gamma.diagonal(); }

    [[nodiscard]] double trace() const { return gamma.trace(); }

    /// Ascending eigenvalues Lambda_1 <= Lambda_2 <= Lambda_3.
    [[nodiscard]] Eigen::Vector3d eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(
            gamma, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    [[nodiscard]] double max_eigenvalue() const { return eigenvalues()(2); }

    [[nodiscard]] double along(const Direction &n) const {
        return n.vector().dot(gamma * n.vector());
    }
};

namespace detail {

[[nodiscard]] inline double clamp_residue(double v) {
    return (v < 0.0 && v >= -kClampTolerance) ? 0.0 : v;
}

} // namespace detail

[[nodiscard]] inline GammaMatrix gamma_c(const QuantumState &rho,
                                         double eps = kRankEpsilon) {
    const int n = rho.n_qubits();
    const Support support = eps == kRankEpsilon ? rho.support() : rho.support(eps);
    const RealVector &w = support.weights;
    const ComplexMatrix &v = support.vectors;
    const Eigen::Index rank = w.size();

    std::array<ComplexMatrix, 3> jv;   // J_i V
    std::array<ComplexMatrix, 3> proj; // V^dagger J_i V
    for (Axis l : kAxes) {
        jv[index_of(l)] = apply_collective(l, n, v);
        proj[index_of(l)] = v.adjoint() * jv[index_of(l)];
    }

    // Pair weights inside the support.
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(rank, rank);
    for (Eigen::Index s = 0; s < rank; ++s) {
        for (Eigen::Index t = 0; t < rank; ++t) {
            const double sum = w(s) + w(t);
            if (sum > eps) {
                const double diff = w(s) - w(t);
                c(s, t) = diff * diff / sum;
            }
        }
    }

    Eigen::Matrix3cd g = Eigen::Matrix3cd::Zero();
    const ComplexMatrix cc = c.cast<Complex>();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // sum_{s,t} c_st <s|J_i|t><t|J_j|s>
            const Complex inside =
                cc.cwiseProduct(proj[i]).cwiseProduct(proj[j].transpose()).sum();
            // <s|J_i P_ker J_j|s> with P_ker = 1 - V V^dagger; the pairs
            // (support, kernel) give K_ij and (kernel, support) give K_ji.
            const ComplexMatrix k_ij =
                jv[i].adjoint() * jv[j] - proj[i] * proj[j];
            const ComplexMatrix k_ji =
                jv[j].adjoint() * jv[i] - proj[j] * proj[i];
            const Complex kernel =
                (w.cast<Complex>().array() *
                 (k_ij.diagonal() + k_ji.diagonal()).array())
                    .sum();
            g(i, j) = 2.0 * (inside + kernel);
        }
    }

    GammaMatrix out;
    out.imag_residue = g.imag().cwiseAbs().maxCoeff();
    out.gamma = 0.5 * (g.real() + g.real().transpose());
    return out;
}

[[nodiscard]] inline FisherTriple fisher_triple(const QuantumState &rho) {
    return gamma_c(rho).fisher_triple();
}

/// F_Q[rho, J_n] = n^T Gamma_C n, never negative.
[[nodiscard]] inline double qfi_direction(const GammaMatrix &gamma,
                                          const Direction &n) {
    return std::max(0.0, detail::clamp_residue(gamma.along(n)));
}

[[nodiscard]] inline double qfi_direction(const QuantumState &rho,
                                          const Direction &n) {
    return qfi_direction(gamma_c(rho), n);
}

/// <A^2> - <A>^2 for Hermitian A.
[[nodiscard]] inline double variance(const QuantumState &rho,
                                     const ComplexMatrix &a) {
    rho.check_operator(a);
    double value = 0.0;
    if (rho.is_pure()) {
        const ComplexVector &psi = *rho.state_vector();
        const ComplexVector a_psi = a * psi;
        const double mean = psi.dot(a_psi).real();
        value = a_psi.squaredNorm() - mean * mean;
    } else {
        const ComplexMatrix rho_a = rho.rho() * a;
        const double mean = rho_a.trace().real();
        value = (rho_a * a).trace().real() - mean * mean;
    }
    return detail::clamp_residue(value);
}

/// (Delta J_l)^2 without forming J_l densely.
[[nodiscard]] inline double collective_variance(const QuantumState &rho,
                                                Axis l) {
    const Support &support = rho.support();
    const ComplexMatrix jv = apply_collective(l, rho.n_qubits(), support.vectors);
    double second = 0.0;
    double first = 0.0;
    for (Eigen::Index s = 0; s < support.weights.size(); ++s) {
        second += support.weights(s) * jv.col(s).squaredNorm();
        first += support.weights(s) * support.vectors.col(s).dot(jv.col(s)).real();
    }
    return detail::clamp_residue(second - first * first);
}

/// <J_l> for l = x, y, z.
[[nodiscard]] inline Eigen::Vector3d collective_mean(const QuantumState &rho) {
    const Support &support = rho.support();
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (Axis l : kAxes) {
        const ComplexMatrix jv =
            apply_collective(l, rho.n_qubits(), support.vectors);
        for (Eigen::Index s = 0; s < support.weights.size(); ++s) {
            out(index_of(l)) +=
                support.weights(s) * support.vectors.col(s).dot(jv.col(s)).real();
        }
    }
    return out;
}

/// Mean of F_Q[rho, J_n] over the unit sphere, Tr(Gamma_C) / 3.
[[nodiscard]] inline double average_qfi(const GammaMatrix &gamma) {
    return gamma.trace() / 3.0;
}

[[nodiscard]] inline double average_qfi(const QuantumState &rho) {
    return average_qfi(gamma_c(rho));
}

/// Wigner-Yanase skew information <A^2> - Tr(sqrt(rho) A sqrt(rho) A).
[[nodiscard]] inline double skew_information(const QuantumState &rho,
                                             const ComplexMatrix &a) {
    rho.check_operator(a);
    const Support &support = rho.support();
    const ComplexMatrix av = a * support.vectors;
    const ComplexMatrix within = support.vectors.adjoint() * av;
    const RealVector root = support.weights.cwiseSqrt();
    double second = 0.0;
    for (Eigen::Index s = 0; s < root.size(); ++s) {
        second += support.weights(s) * av.col(s).squaredNorm();
    }
    const double overlap =
        (root * root.transpose()).cwiseProduct(within.cwiseAbs2()).sum();
    return detail::clamp_residue(second - overlap);
}

} // namespace qfisher
