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
 * Dense complex linear algebra: Kronecker products, Hermitian
 * eigendecomposition and exponentials of Hermitian matrices.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "errors.hpp"

namespace qfisher {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest Hilbert-space dimension any operation will build (2^12 by default).
inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Inputs with max |A - A^dagger| above this are rejected by eigh.
inline constexpr double kHermiticityTolerance = 1e-10;

namespace detail {
inline std::atomic<std::size_t> &dimension_cap_storage() {
    static std::atomic<std::size_t> cap{kDefaultDimensionCap};
    return cap;
}
} // namespace detail

[[nodiscard]] inline std::size_t dimension_cap() {
    return detail::dimension_cap_storage().load(std::memory_order_relaxed);
}

/// Sets the process-wide dimension cap. Must be a power of two.
inline void set_dimension_cap(std::size_t cap) {
    if (cap == 0 || (cap & (cap - 1)) != 0) {
        throw ParameterError("dimension cap must be a positive power of two");
    }
    detail::dimension_cap_storage().store(cap, std::memory_order_relaxed);
}

inline void check_dimension(long long dim) {
    const auto cap = static_cast<long long>(dimension_cap());
    if (dim > cap) {
        throw DimensionCapError(dim, cap);
    }
}

/// Dimension of an n-qubit register, checked against the cap.
[[nodiscard]] inline Eigen::Index qubit_dimension(int n_qubits) {
    if (n_qubits < 1) {
        throw ParameterError("number of qubits must be positive");
    }
    if (n_qubits > 62) {
        throw DimensionCapError(-1, static_cast<long long>(dimension_cap()));
    }
    const long long dim = 1LL << n_qubits;
    check_dimension(dim);
    return static_cast<Eigen::Index>(dim);
}

[[nodiscard]] inline bool all_finite(const ComplexMatrix &a) {
    return a.allFinite();
}

[[nodiscard]] inline double max_asymmetry(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw ParameterError("matrix is not square");
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues in ascending order; eigenvectors are the matching columns.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    [[nodiscard]] ComplexMatrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() *
               eigenvectors.adjoint();
    }
};

/// Tensor product with a's indices major. Throws DimensionCapError past the cap.
[[nodiscard]] inline ComplexMatrix kron(const ComplexMatrix &a,
                                        const ComplexMatrix &b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw ParameterError("kron expects square matrices");
    }
    check_dimension(static_cast<long long>(a.rows()) * b.rows());
    return Eigen::kroneckerProduct(a, b).eval();
}

[[nodiscard]] inline ComplexVector kron(const ComplexVector &a,
                                        const ComplexVector &b) {
    check_dimension(static_cast<long long>(a.size()) * b.size());
    return Eigen::kroneckerProduct(a, b).eval();
}

/**
 * Hermitian eigendecomposition. Inputs within kHermiticityTolerance of
 * Hermitian are symmetrized first; anything further off throws
 * HermiticityError carrying the observed asymmetry.
 */
[[nodiscard]] inline SpectralDecomposition eigh(const ComplexMatrix &a) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw ParameterError("eigh expects a non-empty square matrix");
    }
    if (!all_finite(a)) {
        throw ParameterError("eigh input has non-finite entries");
    }
    const double asym = max_asymmetry(a);
    if (asym > kHermiticityTolerance) {
        throw HermiticityError(asym);
    }
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// exp(i t A) for Hermitian A.
[[nodiscard]] inline ComplexMatrix herm_exp(const ComplexMatrix &a, double t) {
    const auto spec = eigh(a);
    ComplexVector phases(spec.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(kI * (t * spec.eigenvalues(k)));
    }
    return spec.eigenvectors * phases.asDiagonal() *
           spec.eigenvectors.adjoint();
}

[[nodiscard]] inline ComplexMatrix identity(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

} // namespace qfisher
