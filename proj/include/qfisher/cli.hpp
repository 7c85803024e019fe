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
 * Command-line plumbing: analysis configuration, report documents, point
 * cloud tables, Cramer-Rao reports and the error to exit-code mapping. The
 * executable in tools/ is a thin argument parser over these functions.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "errors.hpp"
#include "interferometer.hpp"
#include "landscape.hpp"
#include "qfi.hpp"
#include "spec_io.hpp"
#include "states.hpp"

namespace qfisher {

inline constexpr const char *kToolVersion = "0.1.0";

enum class ExitCode : int {
    ok = 0,
    parse = 2,
    validation = 3,
    numerical = 4,
    dimension_cap = 5,
};

struct AnalysisConfig {
    double tol_violation = kViolationTolerance;
    double eps_rank = kRankEpsilon;
    double fd_step = kDefaultFdStep;
    std::uint64_t seed = 0;
    std::size_t dimension_cap = kDefaultDimensionCap;

    void validate() const {
        std::vector<std::string> bad;
        if (!(tol_violation > 0.0) || !std::isfinite(tol_violation)) {
            bad.emplace_back("tol_violation must be positive");
        }
        if (!(eps_rank > 0.0) || !std::isfinite(eps_rank)) {
            bad.emplace_back("eps_rank must be positive");
        }
        if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
            bad.emplace_back("fd_step must be positive");
        }
        if (dimension_cap == 0 || (dimension_cap & (dimension_cap - 1)) != 0) {
            bad.emplace_back("dimension_cap must be a power of two");
        }
        if (!bad.empty()) {
            std::string msg = "invalid configuration:";
            for (const auto &b : bad) {
                msg += " [" + b + "]";
            }
            throw ParameterError(msg);
        }
    }
};

[[nodiscard]] inline Json config_to_json(const AnalysisConfig &c) {
    return Json{{"tol_violation", c.tol_violation},
                {"eps_rank", c.eps_rank},
                {"fd_step", c.fd_step},
                {"seed", c.seed},
                {"dimension_cap", c.dimension_cap}};
}

/// Missing keys keep their defaults; unknown keys are a parse error.
[[nodiscard]] inline AnalysisConfig config_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ParseError("config must be a JSON object");
    }
    AnalysisConfig c;
    for (const auto &[key, value] : j.items()) {
        if (key == "tol_violation" || key == "eps_rank" || key == "fd_step") {
            if (!value.is_number()) {
                throw ParseError("config field '" + key + "' must be a number");
            }
            const double v = value.get<double>();
            (key == "tol_violation" ? c.tol_violation
             : key == "eps_rank"    ? c.eps_rank
                                    : c.fd_step) = v;
        } else if (key == "seed") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
                throw ParseError("config field 'seed' must be a nonnegative integer");
            }
            c.seed = value.get<std::uint64_t>();
        } else if (key == "dimension_cap") {
            if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) {
                throw ParseError("config field 'dimension_cap' must be a positive integer");
            }
            c.dimension_cap = value.get<std::size_t>();
        } else {
            throw ParseError("unknown config field '" + key + "'");
        }
    }
    c.validate();
    return c;
}

[[nodiscard]] inline AnalysisConfig load_config_file(const std::string &path) {
    return config_from_json(parse_json_text(read_text_file(path)));
}

// ---------------------------------------------------------------------------
// Report document

struct Diagnostics {
    double rho_hermiticity_residue = 0.0;
    double gamma_imag_residue = 0.0;
    double min_rho_eigenvalue = 0.0;
    /// Diagonal Gamma entries in [-clamp tolerance, 0) reset to zero.
    int clamped_entries = 0;
};

struct ReportDocument {
    std::string version = kToolVersion;
    Json spec;
    Eigen::Vector3d triple = Eigen::Vector3d::Zero();
    Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
    Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();
    std::vector<CriterionReport> criteria;
    DepthCertificate depth;
    std::optional<int> fewer_than_unentangled;
    Diagnostics diagnostics;
};

namespace detail {

[[nodiscard]] inline Json vec3_to_json(const Eigen::Vector3d &v) {
    return Json::array({v(0), v(1), v(2)});
}

[[nodiscard]] inline Eigen::Vector3d vec3_from_json(const Json &j, const char *key) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError(std::string("field '") + key + "' must hold three numbers");
    }
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        if (!j[static_cast<std::size_t>(i)].is_number()) {
            throw ParseError(std::string("field '") + key + "' must hold three numbers");
        }
        v(i) = j[static_cast<std::size_t>(i)].get<double>();
    }
    return v;
}

[[nodiscard]] inline std::string sense_name(Sense s) {
    return s == Sense::upper ? "upper" : "lower";
}

[[nodiscard]] inline Sense parse_sense(const std::string &s) {
    if (s == "upper") {
        return Sense::upper;
    }
    if (s == "lower") {
        return Sense::lower;
    }
    throw ParseError("unknown sense '" + s + "'");
}

template <class F>
auto as_parse_error(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError &) {
        throw;
    } catch (const Json::exception &e) {
        throw ParseError(e.what());
    } catch (const ParameterError &e) {
        throw ParseError(e.what());
    }
}

} // namespace detail

[[nodiscard]] inline Json depth_to_json(const DepthCertificate &d) {
    return Json{{"depth_lower_bound", d.depth_lower_bound},
                {"witnessing_criterion", criterion_name(d.witnessing_criterion)},
                {"witness_k", d.witness_k},
                {"witness_value", d.witness_value},
                {"witness_bound", d.witness_bound}};
}

[[nodiscard]] inline DepthCertificate depth_from_json(const Json &j) {
    return detail::as_parse_error([&] {
        DepthCertificate d;
        d.depth_lower_bound = j.at("depth_lower_bound").get<int>();
        d.witnessing_criterion =
            parse_criterion(j.at("witnessing_criterion").get<std::string>());
        d.witness_k = j.at("witness_k").get<int>();
        d.witness_value = j.at("witness_value").get<double>();
        d.witness_bound = j.at("witness_bound").get<double>();
        return d;
    });
}

[[nodiscard]] inline Json criterion_to_json(const CriterionReport &r) {
    return Json{{"criterion", criterion_name(r.id)},
                {"parameter", r.parameter},
                {"sense", detail::sense_name(r.sense)},
                {"bound", r.bound},
                {"value", r.value},
                {"margin", r.margin},
                {"violated", r.violated},
                {"implication", implication_name(r.implication)},
                {"implication_parameter", r.implication_parameter}};
}

[[nodiscard]] inline CriterionReport criterion_from_json(const Json &j) {
    return detail::as_parse_error([&] {
        CriterionReport r;
        r.id = parse_criterion(j.at("criterion").get<std::string>());
        r.parameter = j.at("parameter").get<int>();
        r.sense = detail::parse_sense(j.at("sense").get<std::string>());
        r.bound = j.at("bound").get<double>();
        r.value = j.at("value").get<double>();
        r.margin = j.at("margin").get<double>();
        r.violated = j.at("violated").get<bool>();
        r.implication = parse_implication(j.at("implication").get<std::string>());
        r.implication_parameter = j.at("implication_parameter").get<int>();
        return r;
    });
}

[[nodiscard]] inline Json report_to_json(const ReportDocument &doc) {
    Json gamma = Json::array();
    for (int r = 0; r < 3; ++r) {
        gamma.push_back(detail::vec3_to_json(doc.gamma.row(r).transpose()));
    }
    Json criteria = Json::array();
    for (const auto &r : doc.criteria) {
        criteria.push_back(criterion_to_json(r));
    }
    Json j;
    j["version"] = doc.version;
    j["spec"] = doc.spec;
    j["fisher_triple"] = detail::vec3_to_json(doc.triple);
    j["gamma"] = std::move(gamma);
    j["gamma_eigenvalues"] = detail::vec3_to_json(doc.eigenvalues);
    j["criteria"] = std::move(criteria);
    j["depth"] = depth_to_json(doc.depth);
    j["fewer_than_unentangled"] =
        doc.fewer_than_unentangled ? Json(*doc.fewer_than_unentangled) : Json(nullptr);
    j["diagnostics"] = {
        {"rho_hermiticity_residue", doc.diagnostics.rho_hermiticity_residue},
        {"gamma_imag_residue", doc.diagnostics.gamma_imag_residue},
        {"min_rho_eigenvalue", doc.diagnostics.min_rho_eigenvalue},
        {"clamped_entries", doc.diagnostics.clamped_entries}};
    return j;
}

[[nodiscard]] inline ReportDocument report_from_json(const Json &j) {
    return detail::as_parse_error([&] {
        ReportDocument doc;
        doc.version = j.at("version").get<std::string>();
        doc.spec = j.at("spec");
        doc.triple = detail::vec3_from_json(j.at("fisher_triple"), "fisher_triple");
        const Json &g = j.at("gamma");
        if (!g.is_array() || g.size() != 3) {
            throw ParseError("field 'gamma' must be a 3x3 matrix");
        }
        for (int r = 0; r < 3; ++r) {
            doc.gamma.row(r) =
                detail::vec3_from_json(g[static_cast<std::size_t>(r)], "gamma").transpose();
        }
        doc.eigenvalues =
            detail::vec3_from_json(j.at("gamma_eigenvalues"), "gamma_eigenvalues");
        for (const auto &c : j.at("criteria")) {
            doc.criteria.push_back(criterion_from_json(c));
        }
        doc.depth = depth_from_json(j.at("depth"));
        if (!j.at("fewer_than_unentangled").is_null()) {
            doc.fewer_than_unentangled = j.at("fewer_than_unentangled").get<int>();
        }
        const Json &d = j.at("diagnostics");
        doc.diagnostics.rho_hermiticity_residue =
            d.at("rho_hermiticity_residue").get<double>();
        doc.diagnostics.gamma_imag_residue = d.at("gamma_imag_residue").get<double>();
        doc.diagnostics.min_rho_eigenvalue = d.at("min_rho_eigenvalue").get<double>();
        doc.diagnostics.clamped_entries = d.at("clamped_entries").get<int>();
        return doc;
    });
}

/// Pretty-printed JSON with a trailing newline.
[[nodiscard]] inline std::string dump_document(const Json &j) { return j.dump(2) + "\n"; }

/// Applies the configuration's dimension cap for the lifetime of the guard.
class DimensionCapGuard {
  public:
    explicit DimensionCapGuard(std::size_t cap) : previous_(dimension_cap()) {
        set_dimension_cap(cap);
    }
    ~DimensionCapGuard() { set_dimension_cap(previous_); }
    DimensionCapGuard(const DimensionCapGuard &) = delete;
    DimensionCapGuard &operator=(const DimensionCapGuard &) = delete;

  private:
    std::size_t previous_;
};

[[nodiscard]] inline ReportDocument analyze_spec(const StateSpec &spec,
                                                 const AnalysisConfig &config = {}) {
    config.validate();
    DimensionCapGuard cap(config.dimension_cap);
    const QuantumState rho = from_spec(spec);
    const GammaMatrix gamma = gamma_c(rho, config.eps_rank);
    if (!gamma.gamma.allFinite()) {
        throw NumericalError("Gamma_C has non-finite entries");
    }
    const Evaluation ev = evaluate_all(rho, gamma, config.tol_violation);

    ReportDocument doc;
    doc.spec = spec_to_json(spec);
    doc.gamma = gamma.gamma;
    doc.triple = gamma.fisher_triple();
    for (int l = 0; l < 3; ++l) {
        if (doc.triple(l) < 0.0 && doc.triple(l) >= -kClampTolerance) {
            doc.triple(l) = 0.0;
            ++doc.diagnostics.clamped_entries;
        }
    }
    if (doc.triple.minCoeff() < 0.0) {
        throw NumericalError("Gamma_C has a negative diagonal entry beyond tolerance");
    }
    doc.eigenvalues = gamma.eigenvalues();
    doc.criteria = ev.reports;
    doc.depth = ev.depth;
    doc.fewer_than_unentangled = ev.fewer_than_unentangled;
    doc.diagnostics.rho_hermiticity_residue = rho.hermiticity_residue();
    doc.diagnostics.gamma_imag_residue = gamma.imag_residue;
    doc.diagnostics.min_rho_eigenvalue = rho.spectrum().eigenvalues.minCoeff();
    return doc;
}

// ---------------------------------------------------------------------------
// Point clouds

struct TableRow {
    Eigen::Vector3d f = Eigen::Vector3d::Zero();
    std::string spec_id;
};

[[nodiscard]] inline std::vector<std::string> landscape_families() {
    return {"landmarks", "d_plane", "s_fill", "noise_line"};
}

namespace detail {

[[nodiscard]] inline std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

/// Uniform barycentric weights over `k` vertices.
template <class Rng>
[[nodiscard]] std::vector<double> random_simplex_weights(int k, Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto &x : w) {
        x = e(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

} // namespace detail

/**
 * Rows for one landscape family.
 *   landmarks:  tabulated C, S, D, G and GHZ points (count ignored)
 *   d_plane:    `count` seeded three-Dicke superpositions (N divisible by 4)
 *   s_fill:     `count` separable states realizing random points of the
 *               {C, S_x, S_y, S_z} polytope (N even)
 *   noise_line: ghz(N, z) mixed with white noise on a `count`-point grid
 */
[[nodiscard]] inline std::vector<TableRow>
landscape_table(const std::string &family, int n_qubits, int count,
                std::uint64_t seed, const AnalysisConfig &config = {}) {
    config.validate();
    DimensionCapGuard cap(config.dimension_cap);
    static_cast<void>(qubit_dimension(n_qubits));
    std::vector<TableRow> rows;
    if (family == "landmarks") {
        for (const auto &lm : landmark_points(n_qubits)) {
            rows.push_back({lm.point.p, lm.name});
        }
        return rows;
    }
    if (count < 0) {
        throw ParameterError("count must be nonnegative");
    }
    if (family == "d_plane") {
        const auto points = sample_d_plane(n_qubits, count, seed);
        for (std::size_t i = 0; i < points.size(); ++i) {
            rows.push_back({points[i].p, "dicke_superposition#" + std::to_string(i)});
        }
        return rows;
    }
    if (family == "s_fill") {
        const Polytope poly = sc_polytope(n_qubits);
        for (int i = 0; i < count; ++i) {
            auto rng = draw_rng(seed, static_cast<std::uint64_t>(i));
            const auto w = detail::random_simplex_weights(
                static_cast<int>(poly.vertices.size()), rng);
            Eigen::Vector3d target = Eigen::Vector3d::Zero();
            for (std::size_t v = 0; v < w.size(); ++v) {
                target += w[v] * poly.vertices[v].p;
            }
            const QuantumState rho = fill_sc_polytope({target, std::nullopt}, n_qubits);
            rows.push_back({fisher_triple(rho), "separable#" + std::to_string(i)});
        }
        return rows;
    }
    if (family == "noise_line") {
        const auto grid = uniform_grid(count);
        const NoiseLine line = noise_line(ghz(n_qubits, Axis::z), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            rows.push_back({line.points[i].p, "ghz_z_noise_p=" + detail::format_real(grid[i])});
        }
        return rows;
    }
    throw ParameterError("unknown landscape family '" + family + "'");
}

inline void write_table(std::ostream &os, const std::vector<TableRow> &rows) {
    os << "F_x,F_y,F_z,spec_id\n";
    for (const auto &r : rows) {
        os << detail::format_real(r.f(0)) << ',' << detail::format_real(r.f(1))
           << ',' << detail::format_real(r.f(2)) << ',' << r.spec_id << '\n';
    }
}

// ---------------------------------------------------------------------------
// Cramer-Rao

[[nodiscard]] inline std::vector<std::string> measurement_choices() {
    return {"parity_x", "parity_y", "parity_z", "product_x", "product_y",
            "product_z", "eigen", "random"};
}

/// "eigen" measures in the eigenbasis of the state's density matrix.
[[nodiscard]] inline Measurement make_measurement(const std::string &choice,
                                                  const QuantumState &rho,
                                                  std::uint64_t seed) {
    const int n = rho.n_qubits();
    for (Axis l : kAxes) {
        if (choice == "parity_" + axis_name(l)) {
            return parity_measurement(l, n);
        }
        if (choice == "product_" + axis_name(l)) {
            return product_measurement(l, n);
        }
    }
    if (choice == "eigen") {
        return eigenbasis_measurement(rho.rho());
    }
    if (choice == "random") {
        auto rng = draw_rng(seed, 0);
        return random_basis_measurement(n, rng);
    }
    throw ParameterError("unknown measurement '" + choice + "'");
}

/// Ordering slack between the finite-difference F_cl and F_Q.
inline constexpr double kCrbOrderingTolerance = 1e-6;

struct CrbReport {
    Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
    double theta = kDefaultProbeTheta;
    std::string measurement;
    double quantum_fisher = 0.0;
    double classical_fisher = 0.0;
    std::size_t excluded_outcomes = 0;
    /// 1/sqrt(F_Q); empty when the state is insensitive to the rotation.
    std::optional<double> crb;
    bool ordering_holds = true;

    [[nodiscard]] std::string status() const {
        return crb ? "bounded" : "unbounded_variance";
    }
};

[[nodiscard]] inline CrbReport crb_report(const StateSpec &spec, const Direction &n,
                                          const std::string &measurement,
                                          const AnalysisConfig &config = {},
                                          double theta = kDefaultProbeTheta) {
    config.validate();
    DimensionCapGuard cap(config.dimension_cap);
    const QuantumState rho = from_spec(spec);
    const Measurement meas = make_measurement(measurement, rho, config.seed);
    CrbReport r;
    r.direction = n.vector();
    r.theta = theta;
    r.measurement = measurement;
    r.quantum_fisher = qfi_direction(gamma_c(rho, config.eps_rank), n);
    const auto fcl = classical_fisher(rho, {theta, n}, meas, config.fd_step);
    if (!std::isfinite(fcl.value)) {
        throw NumericalError("classical Fisher information is not finite");
    }
    r.classical_fisher = fcl.value;
    r.excluded_outcomes = fcl.excluded_outcomes;
    r.crb = crb_bound(r.quantum_fisher);
    r.ordering_holds = r.classical_fisher <= r.quantum_fisher + kCrbOrderingTolerance;
    return r;
}

[[nodiscard]] inline Json crb_to_json(const CrbReport &r) {
    return Json{{"version", kToolVersion},
                {"direction", detail::vec3_to_json(r.direction)},
                {"theta", r.theta},
                {"measurement", r.measurement},
                {"quantum_fisher", r.quantum_fisher},
                {"classical_fisher", r.classical_fisher},
                {"excluded_outcomes", r.excluded_outcomes},
                {"crb", r.crb ? Json(*r.crb) : Json(nullptr)},
                {"status", r.status()},
                {"ordering_holds", r.ordering_holds}};
}

// ---------------------------------------------------------------------------
// Errors

struct ErrorReport {
    ExitCode code = ExitCode::ok;
    std::string kind;
    std::string message;
    std::vector<std::string> details;
};

/// Classifies the in-flight exception. Call only from a catch block.
[[nodiscard]] inline ErrorReport classify_current_exception() {
    try {
        throw;
    } catch (const ParseError &e) {
        return {ExitCode::parse, "parse_error", e.what(), {}};
    } catch (const DimensionCapError &e) {
        return {ExitCode::dimension_cap, "dimension_cap_exceeded", e.what(), {}};
    } catch (const ValidationError &e) {
        return {ExitCode::validation, "validation_error", e.what(), e.failed_checks()};
    } catch (const NumericalError &e) {
        return {ExitCode::numerical, "numerical_error", e.what(), {}};
    } catch (const Json::exception &e) {
        return {ExitCode::parse, "parse_error", e.what(), {}};
    } catch (const Error &e) {
        return {ExitCode::validation, "validation_error", e.what(), {}};
    } catch (const std::exception &e) {
        return {ExitCode::numerical, "numerical_error", e.what(), {}};
    }
}

[[nodiscard]] inline Json error_to_json(const ErrorReport &e) {
    return Json{{"error",
                 {{"kind", e.kind},
                  {"exit_code", static_cast<int>(e.code)},
                  {"message", e.message},
                  {"details", e.details}}}};
}

} // namespace qfisher
