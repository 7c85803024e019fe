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
 * JSON encoding of StateSpec documents.
 *
 *   {"kind": "ghz", "n_qubits": 4, "basis": "z"}
 *   {"kind": "dicke", "n_qubits": 4, "m": 2, "basis": "z"}
 *   {"kind": "product_bloch", "n_qubits": 4, "c": [0, 0, 1]}
 *   {"kind": "even_parity", "n_qubits": 8, "coeffs": [[re, im], ...]}
 *   {"kind": "dicke_superposition", "n_qubits": 8, "alpha": [[re, im] x 3]}
 *   {"kind": "g_state", "n_qubits": 6, "basis": "z"}
 *   {"kind": "white_noise_mix", "p": 0.3, "inner": {...}}
 *   {"kind": "completely_mixed", "n_qubits": 3}
 *   {"kind": "raw_matrix", "n_qubits": 1, "real": [[...]], "imag": [[...]]}
 *
 * Complex numbers are [re, im] pairs. "imag" may be omitted for real matrices.
 */

#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "collective.hpp"
#include "errors.hpp"
#include "states.hpp"

namespace qfisher {

using Json = nlohmann::json;

namespace detail {

[[nodiscard]] inline const Json &require(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

[[nodiscard]] inline int require_int(const Json &j, const char *key) {
    const Json &v = require(j, key);
    if (!v.is_number_integer()) {
        throw ParseError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

[[nodiscard]] inline double require_number(const Json &j, const char *key) {
    const Json &v = require(j, key);
    if (!v.is_number()) {
        throw ParseError(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

[[nodiscard]] inline Axis basis_or_z(const Json &j) {
    if (!j.contains("basis")) {
        return Axis::z;
    }
    if (!j.at("basis").is_string()) {
        throw ParseError("field 'basis' must be one of x, y, z");
    }
    try {
        return parse_axis(j.at("basis").get<std::string>());
    } catch (const ParameterError &e) {
        throw ParseError(e.what());
    }
}

[[nodiscard]] inline Json complex_to_json(Complex c) {
    return Json::array({c.real(), c.imag()});
}

[[nodiscard]] inline Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex numbers must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

[[nodiscard]] inline Eigen::MatrixXd real_matrix_from_json(const Json &j, const char *key) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(std::string("field '") + key + "' must be a non-empty matrix");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ParseError(std::string("field '") + key + "' must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            if (!row[static_cast<std::size_t>(c)].is_number()) {
                throw ParseError(std::string("field '") + key + "' has a non-numeric entry");
            }
            m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

[[nodiscard]] inline Json real_matrix_to_json(const Eigen::MatrixXd &m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline Json spec_to_json(const StateSpec &spec) {
    Json j;
    j["kind"] = kind_name(spec);
    std::visit(
        overloaded{
            [&](const GhzSpec &s) {
                j["n_qubits"] = s.n_qubits;
                j["basis"] = axis_name(s.basis);
            },
            [&](const DickeSpec &s) {
                j["n_qubits"] = s.n_qubits;
                j["m"] = s.excitations;
                j["basis"] = axis_name(s.basis);
            },
            [&](const ProductBlochSpec &s) {
                j["n_qubits"] = s.n_qubits;
                j["c"] = {s.bloch(0), s.bloch(1), s.bloch(2)};
            },
            [&](const EvenParitySpec &s) {
                j["n_qubits"] = s.n_qubits;
                Json coeffs = Json::array();
                for (const auto &c : s.coeffs) {
                    coeffs.push_back(detail::complex_to_json(c));
                }
                j["coeffs"] = std::move(coeffs);
            },
            [&](const DickeSuperpositionSpec &s) {
                j["n_qubits"] = s.n_qubits;
                Json alpha = Json::array();
                for (const auto &a : s.alpha) {
                    alpha.push_back(detail::complex_to_json(a));
                }
                j["alpha"] = std::move(alpha);
            },
            [&](const GStateSpec &s) {
                j["n_qubits"] = s.n_qubits;
                j["basis"] = axis_name(s.basis);
            },
            [&](const WhiteNoiseMixSpec &s) {
                j["p"] = s.p;
                if (s.inner) {
                    j["inner"] = spec_to_json(*s.inner);
                }
            },
            [&](const CompletelyMixedSpec &s) { j["n_qubits"] = s.n_qubits; },
            [&](const RawMatrixSpec &s) {
                j["n_qubits"] = s.n_qubits;
                j["real"] = detail::real_matrix_to_json(s.rho.real());
                j["imag"] = detail::real_matrix_to_json(s.rho.imag());
            },
        },
        spec.kind);
    return j;
}

/// Throws ParseError for structurally invalid documents. Value ranges are
/// checked later by from_spec.
[[nodiscard]] inline StateSpec spec_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ParseError("state spec must be a JSON object");
    }
    const Json &kind_json = detail::require(j, "kind");
    if (!kind_json.is_string()) {
        throw ParseError("field 'kind' must be a string");
    }
    const auto kind = kind_json.get<std::string>();
    if (kind == "ghz") {
        return {GhzSpec{detail::require_int(j, "n_qubits"), detail::basis_or_z(j)}};
    }
    if (kind == "dicke") {
        return {DickeSpec{detail::require_int(j, "n_qubits"),
                          detail::require_int(j, "m"), detail::basis_or_z(j)}};
    }
    if (kind == "product_bloch") {
        const Json &c = detail::require(j, "c");
        if (!c.is_array() || c.size() != 3) {
            throw ParseError("field 'c' must hold three numbers");
        }
        Eigen::Vector3d bloch;
        for (int l = 0; l < 3; ++l) {
            if (!c[static_cast<std::size_t>(l)].is_number()) {
                throw ParseError("field 'c' must hold three numbers");
            }
            bloch(l) = c[static_cast<std::size_t>(l)].get<double>();
        }
        return {ProductBlochSpec{detail::require_int(j, "n_qubits"), bloch}};
    }
    if (kind == "even_parity") {
        const Json &c = detail::require(j, "coeffs");
        if (!c.is_array()) {
            throw ParseError("field 'coeffs' must be an array");
        }
        EvenParitySpec s{detail::require_int(j, "n_qubits"), {}};
        for (const auto &v : c) {
            s.coeffs.push_back(detail::complex_from_json(v));
        }
        return {std::move(s)};
    }
    if (kind == "dicke_superposition") {
        const Json &a = detail::require(j, "alpha");
        if (!a.is_array() || a.size() != 3) {
            throw ParseError("field 'alpha' must hold three complex numbers");
        }
        DickeSuperpositionSpec s{detail::require_int(j, "n_qubits"), {}};
        for (std::size_t l = 0; l < 3; ++l) {
            s.alpha[l] = detail::complex_from_json(a[l]);
        }
        return {s};
    }
    if (kind == "g_state") {
        return {GStateSpec{detail::require_int(j, "n_qubits"), detail::basis_or_z(j)}};
    }
    if (kind == "white_noise_mix") {
        return noise_mixed_spec(spec_from_json(detail::require(j, "inner")),
                                detail::require_number(j, "p"));
    }
    if (kind == "completely_mixed") {
        return {CompletelyMixedSpec{detail::require_int(j, "n_qubits")}};
    }
    if (kind == "raw_matrix") {
        const Eigen::MatrixXd re = detail::real_matrix_from_json(detail::require(j, "real"), "real");
        Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
        if (j.contains("imag")) {
            im = detail::real_matrix_from_json(j.at("imag"), "imag");
            if (im.rows() != re.rows()) {
                throw ParseError("fields 'real' and 'imag' differ in size");
            }
        }
        ComplexMatrix rho(re.rows(), re.cols());
        rho.real() = re;
        rho.imag() = im;
        return {RawMatrixSpec{detail::require_int(j, "n_qubits"), std::move(rho)}};
    }
    throw ParseError("unknown state kind '" + kind + "'");
}

[[nodiscard]] inline Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

[[nodiscard]] inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

[[nodiscard]] inline StateSpec load_spec_file(const std::string &path) {
    return spec_from_json(parse_json_text(read_text_file(path)));
}

} // namespace qfisher
