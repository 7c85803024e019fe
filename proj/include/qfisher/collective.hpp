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
 * Pauli operators embedded in an N-qubit register and the collective spin
 * components J_l = 1/2 sum_k sigma_l^(k).
 *
 * Site 1 is the most significant tensor factor: in a computational basis
 * index, site k is bit (N - k). |0> is the +1 eigenstate of sigma_z.
 */

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "errors.hpp"
#include "matcore.hpp"

namespace qfisher {

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

[[nodiscard]] constexpr int index_of(Axis l) { return static_cast<int>(l); }

[[nodiscard]] inline std::string axis_name(Axis l) {
    switch (l) {
    case Axis::x:
        return "x";
    case Axis::y:
        return "y";
    case Axis::z:
        return "z";
    }
    return "?";
}

[[nodiscard]] inline Axis parse_axis(std::string_view name) {
    if (name == "x") {
        return Axis::x;
    }
    if (name == "y") {
        return Axis::y;
    }
    if (name == "z") {
        return Axis::z;
    }
    throw ParameterError("unknown axis '" + std::string(name) + "'");
}

/// Unit vector in R^3.
class Direction {
  public:
    static constexpr double kNormTolerance = 1e-12;

    /// Throws ParameterError unless |n| = 1 within kNormTolerance.
    explicit Direction(const Eigen::Vector3d &n) : n_(n) {
        if (!n.allFinite() || std::abs(n.norm() - 1.0) > kNormTolerance) {
            throw ParameterError("direction must be a unit vector");
        }
    }

    [[nodiscard]] static Direction normalized(const Eigen::Vector3d &v) {
        const double norm = v.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw ParameterError("cannot normalize a zero direction");
        }
        return Direction(v / norm);
    }

    [[nodiscard]] static Direction along(Axis l) {
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        v(index_of(l)) = 1.0;
        return Direction(v);
    }

    [[nodiscard]] const Eigen::Vector3d &vector() const noexcept { return n_; }
    [[nodiscard]] double operator[](int i) const { return n_(i); }

  private:
    Eigen::Vector3d n_;
};

[[nodiscard]] inline Eigen::Matrix2cd pauli(Axis l) {
    Eigen::Matrix2cd s;
    switch (l) {
    case Axis::x:
        s << 0.0, 1.0, 1.0, 0.0;
        break;
    case Axis::y:
        s << 0.0, -kI, kI, 0.0;
        break;
    case Axis::z:
        s << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return s;
}

/// I (x) ... (x) sigma_l (x) ... (x) I with sigma_l at 1-based site k.
[[nodiscard]] inline ComplexMatrix pauli_at(Axis l, int site, int n_qubits) {
    const auto dim = qubit_dimension(n_qubits);
    if (site < 1 || site > n_qubits) {
        throw IndexError("site " + std::to_string(site) +
                         " out of range for " + std::to_string(n_qubits) +
                         " qubits");
    }
    const Eigen::Index low = Eigen::Index{1} << (n_qubits - site);
    const Eigen::Index high = dim / (2 * low);
    return kron(kron(identity(high), ComplexMatrix(pauli(l))), identity(low));
}

namespace detail {

[[nodiscard]] inline ComplexMatrix build_collective(Axis l, int n_qubits) {
    const auto dim = qubit_dimension(n_qubits);
    ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (l == Axis::z) {
            const int ones = std::popcount(static_cast<unsigned long long>(b));
            j(b, b) = 0.5 * (n_qubits - 2 * ones);
            continue;
        }
        for (int bit = 0; bit < n_qubits; ++bit) {
            const Eigen::Index flipped = b ^ (Eigen::Index{1} << bit);
            // Row b, column flipped: <b| sigma |flipped>.
            if (l == Axis::x) {
                j(b, flipped) += 0.5;
            } else {
                const bool row_one = ((b >> bit) & 1) != 0;
                j(b, flipped) += row_one ? 0.5 * kI : -0.5 * kI;
            }
        }
    }
    return j;
}

} // namespace detail

/**
 * Shared, memoized J_l for n qubits. The cache is guarded by a mutex and
 * hands out immutable matrices, so concurrent readers are safe.
 */
[[nodiscard]] inline std::shared_ptr<const ComplexMatrix>
collective_j_shared(Axis l, int n_qubits) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const ComplexMatrix>>
        cache;
    static_cast<void>(qubit_dimension(n_qubits));
    const auto key = std::make_pair(index_of(l), n_qubits);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const ComplexMatrix>(
        detail::build_collective(l, n_qubits));
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(built)).first->second;
}

[[nodiscard]] inline ComplexMatrix collective_j(Axis l, int n_qubits) {
    return *collective_j_shared(l, n_qubits);
}

/// J_n = n_x J_x + n_y J_y + n_z J_z.
[[nodiscard]] inline ComplexMatrix j_direction(const Direction &n,
                                               int n_qubits) {
    ComplexMatrix out = n[0] * *collective_j_shared(Axis::x, n_qubits);
    out += n[1] * *collective_j_shared(Axis::y, n_qubits);
    out += n[2] * *collective_j_shared(Axis::z, n_qubits);
    return out;
}

/**
 * Applies J_l to every column of `vectors` without forming the 2^N x 2^N
 * operator.
 */
[[nodiscard]] inline ComplexMatrix apply_collective(Axis l, int n_qubits,
                                                    const ComplexMatrix &vectors) {
    const auto dim = qubit_dimension(n_qubits);
    if (vectors.rows() != dim) {
        throw ParameterError("vector dimension does not match register size");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, vectors.cols());
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (l == Axis::z) {
            const int ones = std::popcount(static_cast<unsigned long long>(b));
            out.row(b) = (0.5 * (n_qubits - 2 * ones)) * vectors.row(b);
            continue;
        }
        for (int bit = 0; bit < n_qubits; ++bit) {
            const Eigen::Index src = b ^ (Eigen::Index{1} << bit);
            if (l == Axis::x) {
                out.row(b) += 0.5 * vectors.row(src);
            } else {
                const bool row_one = ((b >> bit) & 1) != 0;
                out.row(b) += (row_one ? 0.5 * kI : -0.5 * kI) * vectors.row(src);
            }
        }
    }
    return out;
}

/// U^{(x)N} applied to every column, U a single-qubit operator.
[[nodiscard]] inline ComplexMatrix apply_local(const Eigen::Matrix2cd &u,
                                               int n_qubits,
                                               const ComplexMatrix &vectors) {
    const auto dim = qubit_dimension(n_qubits);
    if (vectors.rows() != dim) {
        throw ParameterError("vector dimension does not match register size");
    }
    ComplexMatrix out = vectors;
    for (int bit = 0; bit < n_qubits; ++bit) {
        const Eigen::Index mask = Eigen::Index{1} << bit;
        for (Eigen::Index b = 0; b < dim; ++b) {
            if ((b & mask) != 0) {
                continue;
            }
            const Eigen::Index b1 = b | mask;
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                const Complex v0 = out(b, c);
                const Complex v1 = out(b1, c);
                out(b, c) = u(0, 0) * v0 + u(0, 1) * v1;
                out(b1, c) = u(1, 0) * v0 + u(1, 1) * v1;
            }
        }
    }
    return out;
}

} // namespace qfisher
