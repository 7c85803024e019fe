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
 * Entanglement criteria on Fisher information data: separability,
 * k-producibility, biseparability, unentangled-particle counts and the
 * sum-of-variances condition, in both the axis form (Fisher triple) and
 * the coordinate-free form (eigenvalues and trace of Gamma_C).
 */

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qfi.hpp"
#include "states.hpp"

namespace qfisher {

/// A criterion is violated when its margin exceeds this.
inline constexpr double kViolationTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Bounds

/// Sum of the three Fisher terms for separable states: 2N.
[[nodiscard]] inline double bound_separable_sum(int n) {
    return 2.0 * n;
}

/// Any single Fisher term for separable states: N.
[[nodiscard]] inline double bound_separable_single(int n) {
    return static_cast<double>(n);
}

/// Sum of the three Fisher terms for any state: N(N+2).
[[nodiscard]] inline double bound_max_sum(int n) {
    return static_cast<double>(n) * (n + 2);
}

namespace detail {
inline void check_block_size(int n, int k) {
    if (n < 1) {
        throw ParameterError("number of qubits must be positive");
    }
    if (k < 1 || k > n) {
        throw ParameterError("block size k = " + std::to_string(k) +
                             " out of range [1, " + std::to_string(n) + "]");
    }
}
} // namespace detail

/// Single Fisher term for k-producible states: n k^2 + (N - n k)^2, n = floor(N/k).
[[nodiscard]] inline double bound_kprod_single(int n_qubits, int k) {
    detail::check_block_size(n_qubits, k);
    const long long n = n_qubits / k;
    const long long rest = n_qubits - n * k;
    return static_cast<double>(n * k * k + rest * rest);
}

/**
 * Sum of the three Fisher terms for k-producible states, n = floor(N/k):
 * n k (k+2) + (N - nk)(N - nk + 2), or n k (k+2) + 2 when one qubit is left over.
 */
[[nodiscard]] inline double bound_kprod_sum(int n_qubits, int k) {
    detail::check_block_size(n_qubits, k);
    const long long n = n_qubits / k;
    const long long rest = n_qubits - n * k;
    const long long blocks = n * k * (k + 2);
    if (rest == 1) {
        return static_cast<double>(blocks + 2);
    }
    return static_cast<double>(blocks + rest * (rest + 2));
}

/// bound_kprod_sum with the separable value 2N substituted at k = 1.
[[nodiscard]] inline double bound_kprod_sum_ladder(int n_qubits, int k) {
    if (k == 1) {
        detail::check_block_size(n_qubits, k);
        return bound_separable_sum(n_qubits);
    }
    return bound_kprod_sum(n_qubits, k);
}

/// ((N-1)^2 + 1, N^2 + 1): single-term and sum bounds for biseparable states.
[[nodiscard]] inline std::pair<double, double> bounds_biseparable(int n) {
    if (n < 2) {
        throw ParameterError("biseparability needs at least 2 qubits");
    }
    const double nd = n;
    return {(nd - 1.0) * (nd - 1.0) + 1.0, nd * nd + 1.0};
}

/// Sum of the three Fisher terms with at least M unentangled qubits: M + (N-M)(N-M+2).
[[nodiscard]] inline double bound_unentangled(int n_qubits, int m_unentangled) {
    if (n_qubits < 1 || m_unentangled < 0 || m_unentangled > n_qubits) {
        throw ParameterError("unentangled count M out of range [0, N]");
    }
    const long long rest = n_qubits - m_unentangled;
    return static_cast<double>(m_unentangled + rest * (rest + 2));
}

// ---------------------------------------------------------------------------
// Reports

enum class CriterionId {
    none,
    separable_sum,
    separable_single,
    max_sum,
    kprod_single,
    kprod_sum,
    biseparable_single,
    biseparable_sum,
    unentangled,
    sum_of_variances,
    gamma_trace_separable,
    gamma_max_eig_separable,
    gamma_trace_kprod,
    gamma_max_eig_kprod,
    gamma_trace_biseparable,
    gamma_max_eig_biseparable,
};

[[nodiscard]] inline std::string criterion_name(CriterionId id) {
    switch (id) {
    case CriterionId::none:
        return "none";
    case CriterionId::separable_sum:
        return "separable_sum";
    case CriterionId::separable_single:
        return "separable_single";
    case CriterionId::max_sum:
        return "max_sum";
    case CriterionId::kprod_single:
        return "kprod_single";
    case CriterionId::kprod_sum:
        return "kprod_sum";
    case CriterionId::biseparable_single:
        return "biseparable_single";
    case CriterionId::biseparable_sum:
        return "biseparable_sum";
    case CriterionId::unentangled:
        return "unentangled";
    case CriterionId::sum_of_variances:
        return "sum_of_variances";
    case CriterionId::gamma_trace_separable:
        return "gamma_trace_separable";
    case CriterionId::gamma_max_eig_separable:
        return "gamma_max_eig_separable";
    case CriterionId::gamma_trace_kprod:
        return "gamma_trace_kprod";
    case CriterionId::gamma_max_eig_kprod:
        return "gamma_max_eig_kprod";
    case CriterionId::gamma_trace_biseparable:
        return "gamma_trace_biseparable";
    case CriterionId::gamma_max_eig_biseparable:
        return "gamma_max_eig_biseparable";
    }
    return "unknown";
}

[[nodiscard]] inline CriterionId parse_criterion(const std::string &name) {
    for (int i = 0; i <= static_cast<int>(CriterionId::gamma_max_eig_biseparable);
         ++i) {
        const auto id = static_cast<CriterionId>(i);
        if (criterion_name(id) == name) {
            return id;
        }
    }
    throw ParameterError("unknown criterion '" + name + "'");
}

/// upper: states of the class satisfy value <= bound. lower: value >= bound.
enum class Sense { upper, lower };

enum class ImplicationKind {
    entangled,
    not_k_producible,
    fewer_than_m_unentangled,
    genuine_multipartite,
};

[[nodiscard]] inline std::string implication_name(ImplicationKind kind) {
    switch (kind) {
    case ImplicationKind::entangled:
        return "entangled";
    case ImplicationKind::not_k_producible:
        return "not_k_producible";
    case ImplicationKind::fewer_than_m_unentangled:
        return "fewer_than_m_unentangled";
    case ImplicationKind::genuine_multipartite:
        return "genuine_multipartite";
    }
    return "unknown";
}

[[nodiscard]] inline ImplicationKind parse_implication(const std::string &name) {
    for (auto kind : {ImplicationKind::entangled, ImplicationKind::not_k_producible,
                      ImplicationKind::fewer_than_m_unentangled,
                      ImplicationKind::genuine_multipartite}) {
        if (implication_name(kind) == name) {
            return kind;
        }
    }
    throw ParameterError("unknown implication '" + name + "'");
}

/**
 * One evaluated criterion. `parameter` is k for k-producibility and M for
 * unentangled-particle bounds, 0 otherwise. `margin` is the signed excess
 * in the violating direction, so violated == (margin > tolerance).
 */
struct CriterionReport {
    CriterionId id = CriterionId::none;
    int parameter = 0;
    Sense sense = Sense::upper;
    double bound = 0.0;
    double value = 0.0;
    double margin = 0.0;
    bool violated = false;
    ImplicationKind implication = ImplicationKind::entangled;
    /// k for not_k_producible, M for fewer_than_m_unentangled.
    int implication_parameter = 0;
};

[[nodiscard]] inline CriterionReport
make_report(CriterionId id, int parameter, Sense sense, double bound,
            double value, ImplicationKind implication,
            int implication_parameter, double tol = kViolationTolerance) {
    CriterionReport r;
    r.id = id;
    r.parameter = parameter;
    r.sense = sense;
    r.bound = bound;
    r.value = value;
    r.margin = sense == Sense::upper ? value - bound : bound - value;
    r.violated = r.margin > tol;
    r.implication = implication;
    r.implication_parameter = implication_parameter;
    return r;
}

struct DepthCertificate {
    /// Every decomposition contains a block of at least this many entangled qubits.
    int depth_lower_bound = 1;
    CriterionId witnessing_criterion = CriterionId::none;
    int witness_k = 0;
    double witness_value = 0.0;
    double witness_bound = 0.0;
};

// ---------------------------------------------------------------------------
// Evaluation

/**
 * Sum-of-variances condition. Separable states satisfy
 * sum_l (Delta J_l)^2 >= N/2 with equality for pure products, so the state
 * is flagged when the sum falls below N/2.
 */
[[nodiscard]] inline CriterionReport
variance_criterion(const QuantumState &rho, double tol = kViolationTolerance) {
    double sum = 0.0;
    for (Axis l : kAxes) {
        sum += collective_variance(rho, l);
    }
    return make_report(CriterionId::sum_of_variances, 0, Sense::lower,
                       0.5 * rho.n_qubits(), sum, ImplicationKind::entangled, 0,
                       tol);
}

/**
 * Coordinate-free criteria on Gamma_C for one block size k: trace and
 * largest eigenvalue against the separable, k-producible and biseparable
 * (n = 1, k = N - 1) bounds.
 */
[[nodiscard]] inline std::vector<CriterionReport>
gamma_criteria(const GammaMatrix &gamma, int n_qubits, int k,
               double tol = kViolationTolerance) {
    detail::check_block_size(n_qubits, k);
    const double trace = gamma.trace();
    const double lmax = gamma.max_eigenvalue();
    std::vector<CriterionReport> out;
    out.push_back(make_report(CriterionId::gamma_trace_separable, 0, Sense::upper,
                              bound_separable_sum(n_qubits), trace,
                              ImplicationKind::entangled, 0, tol));
    out.push_back(make_report(CriterionId::gamma_max_eig_separable, 0,
                              Sense::upper, bound_separable_single(n_qubits), lmax,
                              ImplicationKind::entangled, 0, tol));
    out.push_back(make_report(CriterionId::gamma_trace_kprod, k, Sense::upper,
                              bound_kprod_sum(n_qubits, k), trace,
                              ImplicationKind::not_k_producible, k, tol));
    out.push_back(make_report(CriterionId::gamma_max_eig_kprod, k, Sense::upper,
                              bound_kprod_single(n_qubits, k), lmax,
                              ImplicationKind::not_k_producible, k, tol));
    if (n_qubits >= 2) {
        const auto [single, sum] = bounds_biseparable(n_qubits);
        out.push_back(make_report(CriterionId::gamma_trace_biseparable, 0,
                                  Sense::upper, sum, trace,
                                  ImplicationKind::genuine_multipartite, 0, tol));
        out.push_back(make_report(CriterionId::gamma_max_eig_biseparable, 0,
                                  Sense::upper, single, lmax,
                                  ImplicationKind::genuine_multipartite, 0, tol));
    }
    return out;
}

/**
 * Largest k for which Gamma_C rules out k-producibility, plus one. Uses
 * Lambda_max against the single-term bound and Tr(Gamma_C) against the sum
 * bound (2N at k = 1). When both fire at the same k, Lambda_max is the
 * reported witness.
 */
[[nodiscard]] inline DepthCertificate
depth_lower_bound(const GammaMatrix &gamma, int n_qubits,
                  double tol = kViolationTolerance) {
    const double trace = gamma.trace();
    const double lmax = gamma.max_eigenvalue();
    DepthCertificate cert;
    for (int k = n_qubits - 1; k >= 1; --k) {
        const double single = bound_kprod_single(n_qubits, k);
        const double sum = bound_kprod_sum_ladder(n_qubits, k);
        if (lmax - single > tol) {
            cert = {k + 1, CriterionId::gamma_max_eig_kprod, k, lmax, single};
            return cert;
        }
        if (trace - sum > tol) {
            cert = {k + 1, CriterionId::gamma_trace_kprod, k, trace, sum};
            return cert;
        }
    }
    return cert;
}

[[nodiscard]] inline DepthCertificate
depth_lower_bound(const QuantumState &rho, double tol = kViolationTolerance) {
    return depth_lower_bound(gamma_c(rho), rho.n_qubits(), tol);
}

struct Evaluation {
    std::vector<CriterionReport> reports;
    DepthCertificate depth;
    /// Smallest M whose unentangled-particle bound is violated.
    std::optional<int> fewer_than_unentangled;

    [[nodiscard]] std::size_t violation_count() const {
        return static_cast<std::size_t>(std::count_if(
            reports.begin(), reports.end(),
            [](const CriterionReport &r) { return r.violated; }));
    }
};

/**
 * Every criterion in a fixed order: separable sum and single, absolute
 * maximum, k-producible single and sum (k = 2..N-1), biseparable single and
 * sum, unentangled-particle sweep (M = 1..N), sum of variances, then the
 * Gamma_C forms (separable, k = 2..N-1, biseparable).
 */
[[nodiscard]] inline Evaluation evaluate_all(const QuantumState &rho,
                                             const GammaMatrix &gamma,
                                             double tol = kViolationTolerance) {
    const int n = rho.n_qubits();
    const FisherTriple f = gamma.fisher_triple();
    const double sum = f.sum();
    const double max_single = f.maxCoeff();

    Evaluation ev;
    auto &out = ev.reports;
    out.push_back(make_report(CriterionId::separable_sum, 0, Sense::upper,
                              bound_separable_sum(n), sum,
                              ImplicationKind::entangled, 0, tol));
    out.push_back(make_report(CriterionId::separable_single, 0, Sense::upper,
                              bound_separable_single(n), max_single,
                              ImplicationKind::entangled, 0, tol));
    out.push_back(make_report(CriterionId::max_sum, 0, Sense::upper,
                              bound_max_sum(n), sum,
                              ImplicationKind::not_k_producible, n, tol));
    for (int k = 2; k <= n - 1; ++k) {
        out.push_back(make_report(CriterionId::kprod_single, k, Sense::upper,
                                  bound_kprod_single(n, k), max_single,
                                  ImplicationKind::not_k_producible, k, tol));
        out.push_back(make_report(CriterionId::kprod_sum, k, Sense::upper,
                                  bound_kprod_sum(n, k), sum,
                                  ImplicationKind::not_k_producible, k, tol));
    }
    if (n >= 2) {
        const auto [single_b, sum_b] = bounds_biseparable(n);
        out.push_back(make_report(CriterionId::biseparable_single, 0,
                                  Sense::upper, single_b, max_single,
                                  ImplicationKind::genuine_multipartite, 0, tol));
        out.push_back(make_report(CriterionId::biseparable_sum, 0, Sense::upper,
                                  sum_b, sum,
                                  ImplicationKind::genuine_multipartite, 0, tol));
    }
    for (int m = 1; m <= n; ++m) {
        auto r = make_report(CriterionId::unentangled, m, Sense::upper,
                             bound_unentangled(n, m), sum,
                             ImplicationKind::fewer_than_m_unentangled, m, tol);
        if (r.violated && !ev.fewer_than_unentangled) {
            ev.fewer_than_unentangled = m;
        }
        out.push_back(r);
    }
    out.push_back(variance_criterion(rho, tol));

    const double trace = gamma.trace();
    const double lmax = gamma.max_eigenvalue();
    out.push_back(make_report(CriterionId::gamma_trace_separable, 0, Sense::upper,
                              bound_separable_sum(n), trace,
                              ImplicationKind::entangled, 0, tol));
    out.push_back(make_report(CriterionId::gamma_max_eig_separable, 0,
                              Sense::upper, bound_separable_single(n), lmax,
                              ImplicationKind::entangled, 0, tol));
    for (int k = 2; k <= n - 1; ++k) {
        out.push_back(make_report(CriterionId::gamma_trace_kprod, k, Sense::upper,
                                  bound_kprod_sum(n, k), trace,
                                  ImplicationKind::not_k_producible, k, tol));
        out.push_back(make_report(CriterionId::gamma_max_eig_kprod, k,
                                  Sense::upper, bound_kprod_single(n, k), lmax,
                                  ImplicationKind::not_k_producible, k, tol));
    }
    if (n >= 2) {
        const auto [single_b, sum_b] = bounds_biseparable(n);
        out.push_back(make_report(CriterionId::gamma_trace_biseparable, 0,
                                  Sense::upper, sum_b, trace,
                                  ImplicationKind::genuine_multipartite, 0, tol));
        out.push_back(make_report(CriterionId::gamma_max_eig_biseparable, 0,
                                  Sense::upper, single_b, lmax,
                                  ImplicationKind::genuine_multipartite, 0, tol));
    }
    ev.depth = depth_lower_bound(gamma, n, tol);
    return ev;
}

[[nodiscard]] inline Evaluation evaluate_all(const QuantumState &rho,
                                             double tol = kViolationTolerance) {
    return evaluate_all(rho, gamma_c(rho), tol);
}

/// Reports in `ev` matching `id` (and `parameter`, when given).
[[nodiscard]] inline std::vector<CriterionReport>
find_reports(const Evaluation &ev, CriterionId id,
             std::optional<int> parameter = std::nullopt) {
    std::vector<CriterionReport> out;
    for (const auto &r : ev.reports) {
        if (r.id == id && (!parameter || r.parameter == *parameter)) {
            out.push_back(r);
        }
    }
    return out;
}

} // namespace qfisher
