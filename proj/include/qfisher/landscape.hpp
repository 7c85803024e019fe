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
 * Geometry of the (F_x, F_y, F_z) space: landmark states and their
 * tabulated coordinates, convex-polytope membership, constructive fillings
 * of the S- and D-polytopes, the white-noise line towards C, and the
 * closed-form Gamma_C of three-Dicke superpositions.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "collective.hpp"
#include "criteria.hpp"
#include "errors.hpp"
#include "qfi.hpp"
#include "states.hpp"

namespace qfisher {

/// Membership tolerance in Fisher-information units.
inline constexpr double kPolytopeTolerance = 1e-8;

struct FisherPoint {
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    std::optional<StateSpec> provenance;
};

struct NamedPoint {
    std::string name;
    FisherPoint point;
};

struct Polytope {
    std::string name;
    std::vector<FisherPoint> vertices;
};

// ---------------------------------------------------------------------------
// Landmarks

namespace detail {

inline void check_even(int n_qubits, const char *what) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw ParameterError(std::string(what) + " needs an even number of qubits");
    }
}

[[nodiscard]] inline Eigen::Vector3d permuted(double along, double across, Axis l) {
    Eigen::Vector3d v = Eigen::Vector3d::Constant(across);
    v(index_of(l)) = along;
    return v;
}

} // namespace detail

/**
 * Tabulated landmark coordinates for even N >= 4, in the order C, S_l, D_l,
 * G_l, GHZ_l (l = x, y, z). Each point carries the spec of the state that
 * realizes it.
 */
[[nodiscard]] inline std::vector<NamedPoint> landmark_points(int n_qubits) {
    detail::check_even(n_qubits, "landmark_points");
    if (n_qubits < 4) {
        throw ParameterError("landmark_points needs N >= 4");
    }
    const double n = n_qubits;
    const double dicke_coord = n * (n + 2.0) / 2.0;
    const double g_coord = n * n / 2.0 + 0.5;
    std::vector<NamedPoint> out;
    out.push_back({"C", {Eigen::Vector3d::Zero(),
                         make_spec(CompletelyMixedSpec{n_qubits})}});
    for (Axis l : kAxes) {
        Eigen::Vector3d c = Eigen::Vector3d::Zero();
        c(index_of(l)) = 1.0;
        out.push_back({"S_" + axis_name(l),
                       {detail::permuted(0.0, n, l),
                        make_spec(ProductBlochSpec{n_qubits, c})}});
    }
    for (Axis l : kAxes) {
        out.push_back({"D_" + axis_name(l),
                       {detail::permuted(0.0, dicke_coord, l),
                        make_spec(DickeSpec{n_qubits, n_qubits / 2, l})}});
    }
    for (Axis l : kAxes) {
        out.push_back({"G_" + axis_name(l),
                       {detail::permuted(0.0, g_coord, l),
                        make_spec(GStateSpec{n_qubits, l})}});
    }
    for (Axis l : kAxes) {
        out.push_back({"GHZ_" + axis_name(l),
                       {detail::permuted(n * n, n, l),
                        make_spec(GhzSpec{n_qubits, l})}});
    }
    return out;
}

[[nodiscard]] inline FisherPoint landmark(int n_qubits, const std::string &name) {
    for (auto &np : landmark_points(n_qubits)) {
        if (np.name == name) {
            return np.point;
        }
    }
    throw ParameterError("unknown landmark '" + name + "'");
}

struct LandmarkCheck {
    std::string name;
    Eigen::Vector3d tabulated;
    Eigen::Vector3d computed;
    double residual = 0.0;
    bool ok = false;
};

struct ConsistencyReport {
    std::vector<LandmarkCheck> checks;

    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const LandmarkCheck &c) { return c.ok; });
    }

    [[nodiscard]] std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto &c : checks) {
            if (!c.ok) {
                out.push_back(c.name);
            }
        }
        return out;
    }
};

/// Builds every landmark state and compares its Fisher triple with the table.
[[nodiscard]] inline ConsistencyReport landmark_consistency(int n_qubits,
                                                            double tol = 1e-8) {
    ConsistencyReport report;
    for (const auto &np : landmark_points(n_qubits)) {
        LandmarkCheck check;
        check.name = np.name;
        check.tabulated = np.point.p;
        check.computed = fisher_triple(from_spec(*np.point.provenance));
        check.residual = (check.computed - check.tabulated).cwiseAbs().maxCoeff();
        check.ok = check.residual <= tol;
        report.checks.push_back(std::move(check));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Polytopes

[[nodiscard]] inline Polytope polytope_from(int n_qubits, std::string name,
                                            const std::vector<std::string> &labels) {
    Polytope poly{std::move(name), {}};
    const auto points = landmark_points(n_qubits);
    for (const auto &label : labels) {
        auto it = std::find_if(points.begin(), points.end(),
                               [&](const NamedPoint &np) { return np.name == label; });
        if (it == points.end()) {
            throw ParameterError("unknown landmark '" + label + "'");
        }
        poly.vertices.push_back(it->point);
    }
    return poly;
}

[[nodiscard]] inline Polytope s_triangle(int n) {
    return polytope_from(n, "S", {"S_x", "S_y", "S_z"});
}
[[nodiscard]] inline Polytope sc_polytope(int n) {
    return polytope_from(n, "SC", {"C", "S_x", "S_y", "S_z"});
}
[[nodiscard]] inline Polytope d_triangle(int n) {
    return polytope_from(n, "D", {"D_x", "D_y", "D_z"});
}
[[nodiscard]] inline Polytope cd_polytope(int n) {
    return polytope_from(n, "CD", {"C", "D_x", "D_y", "D_z"});
}
[[nodiscard]] inline Polytope dg_polytope(int n) {
    return polytope_from(n, "DG", {"D_x", "D_y", "D_z", "G_x", "G_y", "G_z"});
}

/**
 * Nonnegative weights over the vertices (summing to one) that reproduce q
 * within tol, or nullopt. Every subset of at most four vertices is tried
 * (Caratheodory in 3D) with a rank-revealing least-squares solve, so
 * degenerate vertex sets are handled by their affinely independent subsets.
 */
[[nodiscard]] inline std::optional<std::vector<double>>
barycentric_weights(const Polytope &poly, const Eigen::Vector3d &q,
                    double tol = kPolytopeTolerance) {
    const auto count = poly.vertices.size();
    if (count == 0) {
        throw ParameterError("polytope has no vertices");
    }
    if (count > 8) {
        throw ParameterError("polytope membership supports at most 8 vertices");
    }
    for (const auto &v : poly.vertices) {
        if (!v.p.allFinite()) {
            throw ParameterError("polytope vertex is not finite");
        }
    }
    if (!q.allFinite()) {
        return std::nullopt;
    }
    const unsigned limit = 1U << count;
    for (unsigned mask = 1; mask < limit; ++mask) {
        const int size = std::popcount(mask);
        if (size > 4) {
            continue;
        }
        std::vector<std::size_t> idx;
        for (std::size_t v = 0; v < count; ++v) {
            if ((mask >> v) & 1U) {
                idx.push_back(v);
            }
        }
        Eigen::MatrixXd a(4, size);
        for (int c = 0; c < size; ++c) {
            a.block<3, 1>(0, c) = poly.vertices[idx[static_cast<std::size_t>(c)]].p;
            a(3, c) = 1.0;
        }
        Eigen::Vector4d b;
        b << q, 1.0;
        Eigen::VectorXd w = a.completeOrthogonalDecomposition().solve(b);
        if (std::abs(w.sum() - 1.0) > 1e-9) {
            continue;
        }
        // Project onto the simplex by clipping, then judge the distance in F units.
        w = w.cwiseMax(0.0);
        w /= w.sum();
        const Eigen::Vector4d fit = a * w;
        if ((fit.head<3>() - q).cwiseAbs().maxCoeff() > tol) {
            continue;
        }
        std::vector<double> weights(count, 0.0);
        for (int c = 0; c < size; ++c) {
            weights[idx[static_cast<std::size_t>(c)]] = std::max(0.0, w(c));
        }
        return weights;
    }
    return std::nullopt;
}

[[nodiscard]] inline bool polytope_contains(const Polytope &poly,
                                            const FisherPoint &q,
                                            double tol = kPolytopeTolerance) {
    return barycentric_weights(poly, q.p, tol).has_value();
}

// ---------------------------------------------------------------------------
// White noise

/// Gamma_C scale factor p^2 / (p + (1 - p) 2^{-(N-1)}) of p rho + (1-p) I/2^N, rho pure.
[[nodiscard]] inline double noise_scale(double p, int n_qubits) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("noise weight p must lie in [0, 1]");
    }
    if (p == 0.0) {
        return 0.0;
    }
    const double a = std::ldexp(1.0, -(n_qubits - 1));
    return p * p / (p + (1.0 - p) * a);
}

/// Inverse of noise_scale on [0, 1].
[[nodiscard]] inline double noise_weight_for_scale(double scale, int n_qubits) {
    if (!(scale >= 0.0 && scale <= 1.0 + 1e-12)) {
        throw ParameterError("noise scale must lie in [0, 1]");
    }
    scale = std::min(scale, 1.0);
    const double a = std::ldexp(1.0, -(n_qubits - 1));
    // p^2 - scale (1 - a) p - scale a = 0
    const double b = scale * (1.0 - a);
    return 0.5 * (b + std::sqrt(b * b + 4.0 * scale * a));
}

struct NoiseLine {
    std::vector<double> p_grid;
    std::vector<FisherPoint> points;
    std::vector<double> predicted_scale;
    /// max |Gamma_C(mixed) - scale * Gamma_C(rho)| per grid point.
    std::vector<double> residuals;

    [[nodiscard]] double max_residual() const {
        return residuals.empty() ? 0.0
                                 : *std::max_element(residuals.begin(), residuals.end());
    }
};

/// Direct Gamma_C of the white-noise mixtures against the closed-form scaling.
[[nodiscard]] inline NoiseLine noise_line(const QuantumState &rho,
                                          const std::vector<double> &p_grid) {
    const Eigen::Matrix3d base = gamma_c(rho).gamma;
    NoiseLine out;
    out.p_grid = p_grid;
    for (double p : p_grid) {
        const double scale = noise_scale(p, rho.n_qubits());
        const Eigen::Matrix3d direct = gamma_c(white_noise_mix(rho, p)).gamma;
        out.points.push_back({direct.diagonal(), std::nullopt});
        out.predicted_scale.push_back(scale);
        out.residuals.push_back((direct - scale * base).cwiseAbs().maxCoeff());
    }
    return out;
}

[[nodiscard]] inline std::vector<double> uniform_grid(int count) {
    if (count < 2) {
        throw ParameterError("grid needs at least two points");
    }
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        grid.push_back(static_cast<double>(i) / (count - 1));
    }
    return grid;
}

// ---------------------------------------------------------------------------
// S-polytope

/// Bloch vector c with c_l^2 = 1 - q_l / N for a point of the S triangle.
[[nodiscard]] inline Eigen::Vector3d s_triangle_bloch(const Eigen::Vector3d &q,
                                                      int n_qubits,
                                                      double tol = kPolytopeTolerance) {
    detail::check_even(n_qubits, "fill_s_polytope");
    const double n = n_qubits;
    if (!q.allFinite() || std::abs(q.sum() - 2.0 * n) > tol ||
        q.minCoeff() < -tol || q.maxCoeff() > n + tol) {
        throw GeometryError("point is not in the S_x S_y S_z triangle");
    }
    Eigen::Vector3d c;
    for (int l = 0; l < 3; ++l) {
        c(l) = std::sqrt(std::clamp(1.0 - q(l) / n, 0.0, 1.0));
    }
    return c / c.norm();
}

/// Pure product state whose Fisher triple is q (q on the S triangle).
[[nodiscard]] inline QuantumState fill_s_polytope(const FisherPoint &q, int n_qubits) {
    return product_bloch(s_triangle_bloch(q.p, n_qubits), n_qubits);
}

/**
 * Separable state for a point of the {C, S_x, S_y, S_z} polytope: the
 * S-triangle point on the ray from C, mixed with white noise.
 */
[[nodiscard]] inline QuantumState fill_sc_polytope(const FisherPoint &q,
                                                   int n_qubits) {
    detail::check_even(n_qubits, "fill_sc_polytope");
    const double n = n_qubits;
    const double t = q.p.sum() / (2.0 * n);
    if (!q.p.allFinite() || q.p.minCoeff() < -kPolytopeTolerance ||
        t > 1.0 + kPolytopeTolerance) {
        throw GeometryError("point is not in the C S_x S_y S_z polytope");
    }
    if (t <= kPolytopeTolerance) {
        return completely_mixed(n_qubits);
    }
    const FisherPoint on_plane{q.p / t, std::nullopt};
    return white_noise_mix(fill_s_polytope(on_plane, n_qubits),
                           noise_weight_for_scale(t, n_qubits));
}

// ---------------------------------------------------------------------------
// Three-Dicke superpositions

/// Overlaps and J_l^2 matrix elements between the half-filled Dicke states in the x, y, z bases.
struct DickeTriangleData {
    int n_qubits = 0;
    /// overlap(k, m) = <D_k|D_m>
    Eigen::Matrix3cd overlap;
    /// j2[l](k, m) = <D_k|J_l^2|D_m>
    std::array<Eigen::Matrix3cd, 3> j2;

    /// Q = <D_x|J_y^2|D_z>.
    [[nodiscard]] Complex q() const { return j2[1](0, 2); }
};

[[nodiscard]] inline DickeTriangleData dicke_triangle_data(int n_qubits) {
    if (n_qubits % 4 != 0 || n_qubits < 4) {
        throw ParameterError("three-Dicke superpositions need N divisible by 4");
    }
    const ComplexVector dz = dicke_vector(n_qubits, n_qubits / 2);
    ComplexMatrix kets(dz.size(), 3);
    kets.col(0) = rotate_to_basis(dz, Axis::x, n_qubits);
    kets.col(1) = rotate_to_basis(dz, Axis::y, n_qubits);
    kets.col(2) = dz;
    DickeTriangleData data;
    data.n_qubits = n_qubits;
    data.overlap = kets.adjoint() * kets;
    for (Axis l : kAxes) {
        const ComplexMatrix jk = apply_collective(l, n_qubits, kets);
        data.j2[index_of(l)] = jk.adjoint() * jk;
    }
    return data;
}

/// Amplitudes rescaled so that sum_l a_l |D_l> has unit norm.
[[nodiscard]] inline std::array<Complex, 3>
normalized_amplitudes(const std::array<Complex, 3> &alpha,
                      const DickeTriangleData &data) {
    const Eigen::Vector3cd a(alpha[0], alpha[1], alpha[2]);
    const double norm2 = a.dot(data.overlap * a).real();
    if (!(norm2 > 0.0)) {
        throw ParameterError("dicke_superposition needs a nonzero alpha");
    }
    const double s = 1.0 / std::sqrt(norm2);
    return {alpha[0] * s, alpha[1] * s, alpha[2] * s};
}

/**
 * Closed-form diagonal of Gamma_C for sum_l a_l |D_l> (a normalized):
 *   Gamma_ll = (|a_k|^2 + |a_m|^2) N(N+2)/2 + 8 Re(a_k^* a_m <D_k|J_l^2|D_m>)
 * with (l, k, m) cyclic.
 */
[[nodiscard]] inline Eigen::Vector3d
dicke_superposition_closed_form(const std::array<Complex, 3> &alpha,
                                const DickeTriangleData &data) {
    const auto a = normalized_amplitudes(alpha, data);
    const double big = data.n_qubits * (data.n_qubits + 2.0) / 2.0;
    Eigen::Vector3d out;
    for (int l = 0; l < 3; ++l) {
        const int k = (l + 1) % 3;
        const int m = (l + 2) % 3;
        out(l) = (std::norm(a[k]) + std::norm(a[m])) * big +
                 8.0 * std::real(std::conj(a[k]) * a[m] * data.j2[l](k, m));
    }
    return out;
}

[[nodiscard]] inline FisherPoint d_plane_point(const std::array<Complex, 3> &alpha,
                                               int n_qubits) {
    return {fisher_triple(dicke_superposition(alpha, n_qubits)),
            make_spec(DickeSuperpositionSpec{n_qubits, alpha})};
}

namespace detail {

[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

} // namespace detail

/// Independent generator for draw `index` of a seeded run.
[[nodiscard]] inline std::mt19937_64 draw_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(index)));
}

/// Re and Im uniform on [-1, 1] per component.
template <class Rng>
[[nodiscard]] std::array<Complex, 3> random_alpha(Rng &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<Complex, 3> alpha{};
    for (auto &a : alpha) {
        const double re = u(rng);
        const double im = u(rng);
        a = Complex(re, im);
    }
    return alpha;
}

/// `count` random three-Dicke superpositions; draw i depends only on (seed, i).
[[nodiscard]] inline std::vector<FisherPoint> sample_d_plane(int n_qubits, int count,
                                                             std::uint64_t seed) {
    if (n_qubits % 4 != 0 || n_qubits < 4) {
        throw ParameterError("sample_d_plane needs N divisible by 4");
    }
    if (count < 0) {
        throw ParameterError("sample count must be nonnegative");
    }
    std::vector<FisherPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto rng = draw_rng(seed, static_cast<std::uint64_t>(i));
        out.push_back(d_plane_point(random_alpha(rng), n_qubits));
    }
    return out;
}

struct AppendixBReport {
    std::array<Complex, 3> normalized_alpha{};
    /// <D_x|J_y^2|D_z>
    Complex q;
    /// Matrix element used for each diagonal entry, <D_k|J_l^2|D_m>.
    std::array<Complex, 3> q_per_entry{};
    Eigen::Vector3d closed_form = Eigen::Vector3d::Zero();
    Eigen::Matrix3d direct = Eigen::Matrix3d::Zero();
    double max_residual = 0.0;
    double max_off_diagonal = 0.0;
};

[[nodiscard]] inline AppendixBReport appendix_b_check(const std::array<Complex, 3> &alpha,
                                                      const DickeTriangleData &data) {
    AppendixBReport r;
    r.normalized_alpha = normalized_amplitudes(alpha, data);
    r.q = data.q();
    for (int l = 0; l < 3; ++l) {
        r.q_per_entry[static_cast<std::size_t>(l)] =
            data.j2[static_cast<std::size_t>(l)]((l + 1) % 3, (l + 2) % 3);
    }
    r.closed_form = dicke_superposition_closed_form(alpha, data);
    r.direct = gamma_c(dicke_superposition(alpha, data.n_qubits)).gamma;
    r.max_residual = (r.direct.diagonal() - r.closed_form).cwiseAbs().maxCoeff();
    Eigen::Matrix3d off = r.direct;
    off.diagonal().setZero();
    r.max_off_diagonal = off.cwiseAbs().maxCoeff();
    return r;
}

[[nodiscard]] inline AppendixBReport appendix_b_check(const std::array<Complex, 3> &alpha,
                                                      int n_qubits) {
    return appendix_b_check(alpha, dicke_triangle_data(n_qubits));
}

namespace detail {

/// Parameters: polar/azimuthal angles of (|a_x|, |a_y|, |a_z|) and phases of a_y, a_z.
[[nodiscard]] inline std::array<Complex, 3> alpha_from_params(const Eigen::VectorXd &x) {
    const double sx = std::sin(x(0)) * std::cos(x(1));
    const double sy = std::sin(x(0)) * std::sin(x(1));
    const double sz = std::cos(x(0));
    return {Complex(sx, 0.0), std::polar(sy, x(2)), std::polar(sz, x(3))};
}

struct DTriangleFit {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const DickeTriangleData *data;
    Eigen::Vector3d target;

    [[nodiscard]] int inputs() const { return 4; }
    [[nodiscard]] int values() const { return 4; }

    int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
        const auto alpha = alpha_from_params(x);
        const Eigen::Vector3cd a(alpha[0], alpha[1], alpha[2]);
        if (!(a.dot(data->overlap * a).real() > 1e-12)) {
            f = Eigen::VectorXd::Constant(4, 1e6);
            return 0;
        }
        f.resize(4);
        f.head<3>() = dicke_superposition_closed_form(alpha, *data) - target;
        f(3) = 0.0;
        return 0;
    }
};

} // namespace detail

struct DTriangleFill {
    std::array<Complex, 3> alpha{};
    QuantumState state;
    /// max |F(state) - q| from a direct Gamma_C evaluation.
    double residual = 0.0;
};

/**
 * Finds alpha with Fisher triple q on the D triangle by least squares over
 * amplitude magnitudes and phases against the closed form, then confirms
 * the result with a direct Gamma_C evaluation. Accepts residual <= accept.
 */
[[nodiscard]] inline DTriangleFill fill_d_triangle(const FisherPoint &q, int n_qubits,
                                                   double accept = 1e-6) {
    const Polytope tri = d_triangle(n_qubits);
    const auto weights = barycentric_weights(tri, q.p, 1e-6);
    if (!weights) {
        throw GeometryError("point is not in the D_x D_y D_z triangle");
    }
    const auto data = dicke_triangle_data(n_qubits);
    const double pi = std::acos(-1.0);
    // D_l has weight w_l; a_l enters the other two coordinates, so |a_l|^2 ~ w_l.
    const Eigen::Vector3d mags(std::sqrt((*weights)[0]), std::sqrt((*weights)[1]),
                               std::sqrt((*weights)[2]));
    const double theta0 = std::acos(std::clamp(mags(2), -1.0, 1.0));
    const double phi0 = std::atan2(mags(1), mags(0));
    const std::array<std::pair<double, double>, 6> phase_starts{
        {{0.5 * pi, pi}, {0.5 * pi, 0.0}, {0.0, 0.5 * pi},
         {-0.5 * pi, 0.5 * pi}, {0.25 * pi, 0.75 * pi}, {pi, 0.5 * pi}}};

    detail::DTriangleFit fit{&data, q.p};
    std::optional<DTriangleFill> best;
    for (const auto &[py, pz] : phase_starts) {
        Eigen::VectorXd x(4);
        x << theta0, phi0, py, pz;
        Eigen::NumericalDiff<detail::DTriangleFit> functor(fit);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::DTriangleFit>> lm(functor);
        lm.parameters.xtol = 1e-14;
        lm.parameters.ftol = 1e-14;
        lm.parameters.maxfev = 4000;
        lm.minimize(x);
        const auto alpha = detail::alpha_from_params(x);
        Eigen::VectorXd f(4);
        fit(x, f);
        if (f.head<3>().cwiseAbs().maxCoeff() > accept) {
            continue;
        }
        auto state = dicke_superposition(alpha, n_qubits);
        const double residual =
            (fisher_triple(state) - q.p).cwiseAbs().maxCoeff();
        if (!best || residual < best->residual) {
            best = DTriangleFill{alpha, std::move(state), residual};
        }
        if (residual <= accept) {
            break;
        }
    }
    if (!best || best->residual > accept) {
        throw GeometryError("no three-Dicke superposition found for the point");
    }
    return *best;
}

/**
 * State for a point of the {C, D_x, D_y, D_z} polytope: the D-triangle
 * point on the ray from C, realized by fill_d_triangle and mixed with
 * white noise.
 */
[[nodiscard]] inline QuantumState fill_cd_polytope(const FisherPoint &q, int n_qubits,
                                                   double accept = 1e-6) {
    const double n = n_qubits;
    const double t = q.p.sum() / (n * (n + 2.0));
    if (!q.p.allFinite() || q.p.minCoeff() < -kPolytopeTolerance ||
        t > 1.0 + kPolytopeTolerance) {
        throw GeometryError("point is not in the C D_x D_y D_z polytope");
    }
    if (t <= kPolytopeTolerance) {
        return completely_mixed(n_qubits);
    }
    const auto on_plane = fill_d_triangle({q.p / t, std::nullopt}, n_qubits, accept);
    return white_noise_mix(on_plane.state, noise_weight_for_scale(t, n_qubits));
}

} // namespace qfisher
