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
 * N-qubit quantum states: the QuantumState value type with a cached
 * spectral decomposition, the named state families used for metrology
 * (GHZ, Dicke, product, even-parity, three-Dicke superposition, G-states,
 * white-noise mixtures) and declarative StateSpec descriptions of them.
 */

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "collective.hpp"
#include "errors.hpp"
#include "matcore.hpp"

namespace qfisher {

/// Eigenvalues at or below this are treated as exactly zero.
inline constexpr double kRankEpsilon = 1e-12;

/// Tolerance for Hermiticity, unit trace and positivity of density matrices.
inline constexpr double kStateTolerance = 1e-10;

/// Eigenpairs of rho with eigenvalue above kRankEpsilon.
struct Support {
    RealVector weights;
    ComplexMatrix vectors;
};

/**
 * Density matrix of an N-qubit register.
 *
 * Pure states keep their state vector and materialize rho only on demand.
 * The matrix, the spectral decomposition and the support are each computed
 * at most once and shared between copies; all accessors are safe to call
 * concurrently.
 */
class QuantumState {
  public:
    /// Normalizes psi. Throws ParameterError for a zero or wrongly sized vector.
    [[nodiscard]] static QuantumState pure(int n_qubits, ComplexVector psi) {
        const auto dim = qubit_dimension(n_qubits);
        if (psi.size() != dim) {
            throw ParameterError("state vector has dimension " +
                                 std::to_string(psi.size()) + ", expected " +
                                 std::to_string(dim));
        }
        if (!psi.allFinite()) {
            throw ParameterError("state vector has non-finite entries");
        }
        const double norm = psi.norm();
        if (!(norm > 0.0)) {
            throw ParameterError("state vector is zero");
        }
        auto impl = std::make_shared<Impl>();
        impl->n_qubits = n_qubits;
        impl->psi = psi / norm;
        return QuantumState(std::move(impl));
    }

    /**
     * Validates an explicit density matrix: square of dimension 2^N, finite,
     * Hermitian, unit trace and positive semidefinite, all within
     * kStateTolerance. Every failed check is listed in the ValidationError.
     */
    [[nodiscard]] static QuantumState from_density(int n_qubits,
                                                   const ComplexMatrix &rho) {
        const auto dim = qubit_dimension(n_qubits);
        std::vector<std::string> failed;
        if (rho.rows() != dim || rho.cols() != dim) {
            failed.push_back("dimension " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + " != " +
                             std::to_string(dim));
            throw ValidationError(std::move(failed));
        }
        if (!rho.allFinite()) {
            failed.emplace_back("non-finite entries");
            throw ValidationError(std::move(failed));
        }
        const double asym = max_asymmetry(rho);
        if (asym > kStateTolerance) {
            failed.push_back("not Hermitian: max asymmetry " +
                             std::to_string(asym));
        }
        const double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > kStateTolerance ||
            std::abs(rho.trace().imag()) > kStateTolerance) {
            failed.push_back("trace " + std::to_string(tr) + " != 1");
        }
        if (!failed.empty() && asym > kStateTolerance) {
            throw ValidationError(std::move(failed));
        }
        auto impl = std::make_shared<Impl>();
        impl->n_qubits = n_qubits;
        impl->hermiticity_residue = asym;
        impl->rho = 0.5 * (rho + rho.adjoint());
        std::call_once(impl->rho_once, [] {});
        SpectralDecomposition spec = eigh(impl->rho);
        const double min_eig = spec.eigenvalues(0);
        if (min_eig < -kStateTolerance) {
            failed.push_back("min eigenvalue " + std::to_string(min_eig) +
                             " < -" + std::to_string(kStateTolerance));
        }
        if (!failed.empty()) {
            throw ValidationError(std::move(failed));
        }
        impl->spectrum = std::move(spec);
        std::call_once(impl->spectrum_once, [] {});
        return QuantumState(std::move(impl));
    }

    /**
     * Wraps a density matrix built by a trusted construction (convex
     * combinations and unitary conjugations of valid states). Only
     * symmetrizes; no spectral checks.
     */
    [[nodiscard]] static QuantumState from_trusted_density(int n_qubits,
                                                           ComplexMatrix rho) {
        const auto dim = qubit_dimension(n_qubits);
        if (rho.rows() != dim || rho.cols() != dim) {
            throw ParameterError("density matrix dimension mismatch");
        }
        auto impl = std::make_shared<Impl>();
        impl->n_qubits = n_qubits;
        impl->hermiticity_residue = max_asymmetry(rho);
        impl->rho = 0.5 * (rho + rho.adjoint());
        std::call_once(impl->rho_once, [] {});
        return QuantumState(std::move(impl));
    }

    /// I / 2^N with its spectrum filled in analytically.
    [[nodiscard]] static QuantumState maximally_mixed(int n_qubits) {
        const auto dim = qubit_dimension(n_qubits);
        auto impl = std::make_shared<Impl>();
        impl->n_qubits = n_qubits;
        impl->rho = identity(dim) / static_cast<double>(dim);
        std::call_once(impl->rho_once, [] {});
        impl->spectrum.eigenvalues =
            RealVector::Constant(dim, 1.0 / static_cast<double>(dim));
        impl->spectrum.eigenvectors = identity(dim);
        std::call_once(impl->spectrum_once, [] {});
        return QuantumState(std::move(impl));
    }

    [[nodiscard]] int n_qubits() const noexcept { return impl_->n_qubits; }

    [[nodiscard]] Eigen::Index dim() const noexcept {
        return Eigen::Index{1} << impl_->n_qubits;
    }

    [[nodiscard]] bool is_pure() const noexcept { return impl_->psi.has_value(); }

    /// The state vector of a pure state, nullopt for mixed states.
    [[nodiscard]] const std::optional<ComplexVector> &state_vector() const noexcept {
        return impl_->psi;
    }

    [[nodiscard]] const ComplexMatrix &rho() const {
        std::call_once(impl_->rho_once, [impl = impl_.get()] {
            impl->rho = (*impl->psi) * impl->psi->adjoint();
        });
        return impl_->rho;
    }

    /**
     * Full spectral decomposition, ascending. Pure states get the rank-one
     * form directly: psi is the last eigenvector and a Householder
     * completion spans the kernel.
     */
    [[nodiscard]] const SpectralDecomposition &spectrum() const {
        std::call_once(impl_->spectrum_once, [this] {
            Impl &impl = *impl_;
            if (impl.psi) {
                const auto d = dim();
                Eigen::HouseholderQR<ComplexMatrix> qr(ComplexMatrix(*impl.psi));
                ComplexMatrix q = qr.householderQ() * identity(d);
                ComplexMatrix vectors(d, d);
                vectors.leftCols(d - 1) = q.rightCols(d - 1);
                vectors.col(d - 1) = *impl.psi;
                impl.spectrum.eigenvalues = RealVector::Zero(d);
                impl.spectrum.eigenvalues(d - 1) = 1.0;
                impl.spectrum.eigenvectors = std::move(vectors);
            } else {
                impl.spectrum = eigh(rho());
            }
        });
        return impl_->spectrum;
    }

    /// Support with a custom zero threshold; only the default one is cached.
    [[nodiscard]] Support support(double eps) const {
        if (eps == kRankEpsilon || is_pure()) {
            return support();
        }
        return threshold_support(spectrum(), eps);
    }

    [[nodiscard]] const Support &support() const {
        std::call_once(impl_->support_once, [this] {
            Impl &impl = *impl_;
            if (impl.psi) {
                impl.support.weights = RealVector::Ones(1);
                impl.support.vectors = *impl.psi;
                return;
            }
            impl.support = threshold_support(spectrum(), kRankEpsilon);
        });
        return impl_->support;
    }

    /// max |rho - rho^dagger| of the matrix this state was built from.
    [[nodiscard]] double hermiticity_residue() const noexcept {
        return impl_->hermiticity_residue;
    }

    [[nodiscard]] double trace() const {
        if (is_pure()) {
            return impl_->psi->squaredNorm();
        }
        return rho().trace().real();
    }

    [[nodiscard]] double purity() const {
        if (is_pure()) {
            return 1.0;
        }
        return rho().cwiseAbs2().sum();
    }

    /// <A> = tr(rho A).
    [[nodiscard]] Complex expectation(const ComplexMatrix &a) const {
        check_operator(a);
        if (is_pure()) {
            return impl_->psi->dot(a * *impl_->psi);
        }
        return (rho().transpose().cwiseProduct(a)).sum();
    }

    void check_operator(const ComplexMatrix &a) const {
        if (a.rows() != dim() || a.cols() != dim()) {
            throw ParameterError("operator dimension " +
                                 std::to_string(a.rows()) +
                                 " does not match state dimension " +
                                 std::to_string(dim()));
        }
    }

  private:
    [[nodiscard]] static Support threshold_support(const SpectralDecomposition &spec,
                                                   double eps) {
        std::vector<Eigen::Index> keep;
        for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
            if (spec.eigenvalues(k) > eps) {
                keep.push_back(k);
            }
        }
        const auto rank = static_cast<Eigen::Index>(keep.size());
        Support out;
        out.weights.resize(rank);
        out.vectors.resize(spec.eigenvectors.rows(), rank);
        for (Eigen::Index r = 0; r < rank; ++r) {
            out.weights(r) = spec.eigenvalues(keep[r]);
            out.vectors.col(r) = spec.eigenvectors.col(keep[r]);
        }
        return out;
    }

    struct Impl {
        int n_qubits = 0;
        std::optional<ComplexVector> psi;
        double hermiticity_residue = 0.0;
        std::once_flag rho_once;
        std::once_flag spectrum_once;
        std::once_flag support_once;
        ComplexMatrix rho;
        SpectralDecomposition spectrum;
        Support support;
    };

    explicit QuantumState(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Building blocks

/// Single-qubit unitary taking sigma_z eigenvectors to sigma_l eigenvectors.
[[nodiscard]] inline Eigen::Matrix2cd basis_rotation(Axis l) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd u;
    switch (l) {
    case Axis::x:
        u << s, s, s, -s;
        break;
    case Axis::y:
        u << s, s, s * kI, -s * kI;
        break;
    case Axis::z:
        u = Eigen::Matrix2cd::Identity();
        break;
    }
    return u;
}

[[nodiscard]] inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

/// Symmetric Dicke ket with m excitations (|1>s) in the z basis.
[[nodiscard]] inline ComplexVector dicke_vector(int n_qubits, int m) {
    const auto dim = qubit_dimension(n_qubits);
    if (m < 0 || m > n_qubits) {
        throw ParameterError("excitation count " + std::to_string(m) +
                             " out of range [0, " + std::to_string(n_qubits) +
                             "]");
    }
    const double amp = 1.0 / std::sqrt(binomial(n_qubits, m));
    ComplexVector v = ComplexVector::Zero(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (std::popcount(static_cast<unsigned long long>(b)) == m) {
            v(b) = amp;
        }
    }
    return v;
}

[[nodiscard]] inline ComplexVector rotate_to_basis(const ComplexVector &psi,
                                                   Axis basis, int n_qubits) {
    if (basis == Axis::z) {
        return psi;
    }
    return apply_local(basis_rotation(basis), n_qubits, psi);
}

// ---------------------------------------------------------------------------
// State families

[[nodiscard]] inline QuantumState ghz(int n_qubits, Axis basis = Axis::z) {
    const auto dim = qubit_dimension(n_qubits);
    ComplexVector v = ComplexVector::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(dim - 1) = 1.0 / std::sqrt(2.0);
    return QuantumState::pure(n_qubits, rotate_to_basis(v, basis, n_qubits));
}

[[nodiscard]] inline QuantumState dicke(int n_qubits, int m,
                                        Axis basis = Axis::z) {
    return QuantumState::pure(
        n_qubits, rotate_to_basis(dicke_vector(n_qubits, m), basis, n_qubits));
}

/**
 * Pure product state with the first N/2 qubits along +c and the rest along
 * -c on the Bloch sphere. Its Fisher triple is F_l = N (1 - c_l^2).
 */
[[nodiscard]] inline QuantumState product_bloch(const Eigen::Vector3d &c,
                                                int n_qubits) {
    static_cast<void>(qubit_dimension(n_qubits));
    if (n_qubits % 2 != 0) {
        throw ParameterError("product_bloch needs an even number of qubits");
    }
    if (!c.allFinite() || std::abs(c.squaredNorm() - 1.0) > kStateTolerance) {
        throw ParameterError("Bloch coefficients must satisfy sum c_l^2 = 1");
    }
    Eigen::Matrix2cd c_sigma = c(0) * pauli(Axis::x) + c(1) * pauli(Axis::y) +
                               c(2) * pauli(Axis::z);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(c_sigma);
    const ComplexVector up = solver.eigenvectors().col(1);
    const ComplexVector down = solver.eigenvectors().col(0);
    ComplexVector psi = up;
    for (int site = 2; site <= n_qubits; ++site) {
        psi = kron(psi, site <= n_qubits / 2 ? up : down);
    }
    return QuantumState::pure(n_qubits, std::move(psi));
}

/// Index set {0, 2, ..., N/2 - 2} followed by N/2, in coefficient order.
[[nodiscard]] inline std::vector<int> even_parity_indices(int n_qubits) {
    std::vector<int> out;
    for (int n = 0; n <= n_qubits / 2 - 2; n += 2) {
        out.push_back(n);
    }
    out.push_back(n_qubits / 2);
    return out;
}

/**
 * sum_n c_n (|D^(n)> + |D^(N-n)>)/sqrt(2) + c_{N/2} |D^(N/2)>, with coefficients
 * ordered as even_parity_indices(N).
 */
[[nodiscard]] inline QuantumState even_parity(const std::vector<Complex> &coeffs,
                                              int n_qubits) {
    const auto dim = qubit_dimension(n_qubits);
    if (n_qubits % 2 != 0) {
        throw ParameterError("even_parity needs an even number of qubits");
    }
    const auto indices = even_parity_indices(n_qubits);
    if (coeffs.size() != indices.size()) {
        throw ParameterError("even_parity expects " +
                             std::to_string(indices.size()) +
                             " coefficients for N = " + std::to_string(n_qubits));
    }
    double norm2 = 0.0;
    for (const auto &c : coeffs) {
        norm2 += std::norm(c);
    }
    if (std::abs(norm2 - 1.0) > kStateTolerance) {
        throw ParameterError("even_parity coefficients must satisfy sum |c_n|^2 = 1");
    }
    ComplexVector psi = ComplexVector::Zero(dim);
    for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
        const int n = indices[i];
        psi += coeffs[i] / std::sqrt(2.0) *
               (dicke_vector(n_qubits, n) + dicke_vector(n_qubits, n_qubits - n));
    }
    psi += coeffs.back() * dicke_vector(n_qubits, n_qubits / 2);
    return QuantumState::pure(n_qubits, std::move(psi));
}

/**
 * alpha_x |D>_x + alpha_y |D>_y + alpha_z |D>_z for the half-filled Dicke
 * state, renormalized after summation (the three kets overlap).
 */
[[nodiscard]] inline ComplexVector
dicke_superposition_vector(const std::array<Complex, 3> &alpha, int n_qubits) {
    static_cast<void>(qubit_dimension(n_qubits));
    if (n_qubits % 4 != 0) {
        throw ParameterError("dicke_superposition needs N divisible by 4");
    }
    if (std::abs(alpha[0]) == 0.0 && std::abs(alpha[1]) == 0.0 &&
        std::abs(alpha[2]) == 0.0) {
        throw ParameterError("dicke_superposition needs a nonzero alpha");
    }
    const ComplexVector dz = dicke_vector(n_qubits, n_qubits / 2);
    ComplexVector psi = alpha[2] * dz;
    psi += alpha[0] * rotate_to_basis(dz, Axis::x, n_qubits);
    psi += alpha[1] * rotate_to_basis(dz, Axis::y, n_qubits);
    const double norm = psi.norm();
    if (!(norm > 1e-300)) {
        throw ParameterError("dicke_superposition amplitudes cancel");
    }
    return psi / norm;
}

[[nodiscard]] inline QuantumState
dicke_superposition(const std::array<Complex, 3> &alpha, int n_qubits) {
    return QuantumState::pure(n_qubits,
                              dicke_superposition_vector(alpha, n_qubits));
}

/// |1> (x) |D_{N-1}^{(N/2-1)}>, rotated to the requested basis.
[[nodiscard]] inline QuantumState g_state(int n_qubits, Axis basis = Axis::z) {
    const auto dim = qubit_dimension(n_qubits);
    if (n_qubits % 2 != 0 || n_qubits < 4) {
        throw ParameterError("g_state needs an even N >= 4");
    }
    const ComplexVector rest = dicke_vector(n_qubits - 1, n_qubits / 2 - 1);
    ComplexVector psi = ComplexVector::Zero(dim);
    psi.tail(dim / 2) = rest;
    return QuantumState::pure(n_qubits, rotate_to_basis(psi, basis, n_qubits));
}

[[nodiscard]] inline QuantumState completely_mixed(int n_qubits) {
    return QuantumState::maximally_mixed(n_qubits);
}

/// p rho + (1 - p) I / 2^N.
[[nodiscard]] inline QuantumState white_noise_mix(const QuantumState &rho,
                                                  double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("noise weight p must lie in [0, 1]");
    }
    if (p == 1.0) {
        return rho;
    }
    if (p == 0.0) {
        return completely_mixed(rho.n_qubits());
    }
    const auto d = rho.dim();
    ComplexMatrix mixed = p * rho.rho();
    mixed.diagonal().array() += (1.0 - p) / static_cast<double>(d);
    return QuantumState::from_trusted_density(rho.n_qubits(), std::move(mixed));
}

/// Convex combination sum_k w_k rho_k. Weights must be nonnegative and sum to 1.
[[nodiscard]] inline QuantumState mixture(const std::vector<double> &weights,
                                          const std::vector<QuantumState> &states) {
    if (weights.size() != states.size() || states.empty()) {
        throw ParameterError("mixture needs one weight per state");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw ParameterError("mixture weights must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw ParameterError("mixture weights must sum to 1");
    }
    const int n = states.front().n_qubits();
    ComplexMatrix rho = ComplexMatrix::Zero(states.front().dim(),
                                            states.front().dim());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].n_qubits() != n) {
            throw ParameterError("mixture components differ in qubit count");
        }
        rho += weights[k] * states[k].rho();
    }
    return QuantumState::from_trusted_density(n, std::move(rho));
}

/// (V (x) ... (x) V) rho (V (x) ... (x) V)^dagger for a single-qubit unitary V.
[[nodiscard]] inline QuantumState local_unitary(const QuantumState &rho,
                                                const Eigen::Matrix2cd &v) {
    const int n = rho.n_qubits();
    if (rho.is_pure()) {
        return QuantumState::pure(n, apply_local(v, n, *rho.state_vector()));
    }
    const ComplexMatrix left = apply_local(v, n, rho.rho());
    ComplexMatrix both = apply_local(v, n, left.adjoint());
    return QuantumState::from_trusted_density(n, std::move(both));
}

/// Tensor product of two states; pure inputs give a pure result.
[[nodiscard]] inline QuantumState tensor(const QuantumState &a,
                                         const QuantumState &b) {
    const int n = a.n_qubits() + b.n_qubits();
    static_cast<void>(qubit_dimension(n));
    if (a.is_pure() && b.is_pure()) {
        return QuantumState::pure(n, kron(*a.state_vector(), *b.state_vector()));
    }
    return QuantumState::from_trusted_density(n, kron(a.rho(), b.rho()));
}

// ---------------------------------------------------------------------------
// Declarative specs

struct StateSpec;

struct GhzSpec {
    int n_qubits = 0;
    Axis basis = Axis::z;
};

struct DickeSpec {
    int n_qubits = 0;
    int excitations = 0;
    Axis basis = Axis::z;
};

struct ProductBlochSpec {
    int n_qubits = 0;
    Eigen::Vector3d bloch = Eigen::Vector3d::UnitZ();
};

struct EvenParitySpec {
    int n_qubits = 0;
    std::vector<Complex> coeffs;
};

struct DickeSuperpositionSpec {
    int n_qubits = 0;
    std::array<Complex, 3> alpha{};
};

struct GStateSpec {
    int n_qubits = 0;
    Axis basis = Axis::z;
};

struct WhiteNoiseMixSpec {
    double p = 1.0;
    std::shared_ptr<const StateSpec> inner;
};

struct CompletelyMixedSpec {
    int n_qubits = 0;
};

struct RawMatrixSpec {
    int n_qubits = 0;
    ComplexMatrix rho;
};

struct StateSpec {
    std::variant<GhzSpec, DickeSpec, ProductBlochSpec, EvenParitySpec,
                 DickeSuperpositionSpec, GStateSpec, WhiteNoiseMixSpec,
                 CompletelyMixedSpec, RawMatrixSpec>
        kind;
};

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[nodiscard]] inline std::string kind_name(const StateSpec &spec) {
    return std::visit(
        overloaded{
            [](const GhzSpec &) { return std::string("ghz"); },
            [](const DickeSpec &) { return std::string("dicke"); },
            [](const ProductBlochSpec &) { return std::string("product_bloch"); },
            [](const EvenParitySpec &) { return std::string("even_parity"); },
            [](const DickeSuperpositionSpec &) {
                return std::string("dicke_superposition");
            },
            [](const GStateSpec &) { return std::string("g_state"); },
            [](const WhiteNoiseMixSpec &) { return std::string("white_noise_mix"); },
            [](const CompletelyMixedSpec &) {
                return std::string("completely_mixed");
            },
            [](const RawMatrixSpec &) { return std::string("raw_matrix"); },
        },
        spec.kind);
}

[[nodiscard]] inline QuantumState from_spec(const StateSpec &spec) {
    return std::visit(
        overloaded{
            [](const GhzSpec &s) { return ghz(s.n_qubits, s.basis); },
            [](const DickeSpec &s) {
                return dicke(s.n_qubits, s.excitations, s.basis);
            },
            [](const ProductBlochSpec &s) {
                return product_bloch(s.bloch, s.n_qubits);
            },
            [](const EvenParitySpec &s) {
                return even_parity(s.coeffs, s.n_qubits);
            },
            [](const DickeSuperpositionSpec &s) {
                return dicke_superposition(s.alpha, s.n_qubits);
            },
            [](const GStateSpec &s) { return g_state(s.n_qubits, s.basis); },
            [](const WhiteNoiseMixSpec &s) {
                if (!s.inner) {
                    throw ParameterError("white_noise_mix spec has no inner state");
                }
                return white_noise_mix(from_spec(*s.inner), s.p);
            },
            [](const CompletelyMixedSpec &s) {
                return completely_mixed(s.n_qubits);
            },
            [](const RawMatrixSpec &s) {
                return QuantumState::from_density(s.n_qubits, s.rho);
            },
        },
        spec.kind);
}

[[nodiscard]] inline StateSpec make_spec(auto kind) { return StateSpec{std::move(kind)}; }

[[nodiscard]] inline StateSpec noise_mixed_spec(StateSpec inner, double p) {
    return StateSpec{WhiteNoiseMixSpec{
        p, std::make_shared<const StateSpec>(std::move(inner))}};
}

} // namespace qfisher
