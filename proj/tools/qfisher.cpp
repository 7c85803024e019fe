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

// qfisher command-line tool.
//
//   qfisher analyze   <spec.json>
//   qfisher depth     <spec.json>
//   qfisher landscape <family> --n-qubits N [--count K]
//   qfisher crb       <spec.json> --direction x|y|z|a,b,c --measurement M

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <qfisher.hpp>

namespace {

using namespace qfisher;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::optional<double> tol;
    std::optional<int> max_qubits;
};

AnalysisConfig resolve_config(const GlobalOptions &g) {
    AnalysisConfig c;
    if (!g.config_path.empty()) {
        c = load_config_file(g.config_path);
    }
    if (g.seed) {
        c.seed = *g.seed;
    }
    if (g.tol) {
        c.tol_violation = *g.tol;
    }
    if (g.max_qubits) {
        if (*g.max_qubits < 1 || *g.max_qubits > 30) {
            throw ParameterError("--max-qubits must be in [1, 30]");
        }
        c.dimension_cap = std::size_t{1} << static_cast<unsigned>(*g.max_qubits);
    }
    c.validate();
    return c;
}

void emit(const GlobalOptions &g, const std::string &text) {
    if (g.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) {
        throw ParameterError("cannot write '" + g.out_path + "'");
    }
    out << text;
}

Direction parse_direction(const std::string &text) {
    if (text == "x" || text == "y" || text == "z") {
        return Direction::along(parse_axis(text));
    }
    std::istringstream in(text);
    Eigen::Vector3d v;
    char comma = 0;
    if (!(in >> v(0) >> comma >> v(1) >> comma >> v(2)) || !in.eof()) {
        throw ParseError("direction must be x, y, z or a,b,c");
    }
    return Direction::normalized(v);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum Fisher information and entanglement criteria for "
                 "collective spin operators"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out_path, "output file (default stdout)");
    app.add_option("--tol", g.tol, "violation tolerance");
    app.add_option("--max-qubits", g.max_qubits, "dimension cap as a qubit count");

    std::string spec_path;
    auto *analyze = app.add_subcommand("analyze", "full report for a state spec");
    analyze->add_option("spec", spec_path, "state spec file")->required();
    auto *depth = app.add_subcommand("depth", "entanglement depth certificate only");
    depth->add_option("spec", spec_path, "state spec file")->required();

    std::string family;
    int n_qubits = 0;
    std::optional<int> count;
    auto *landscape = app.add_subcommand("landscape", "Fisher-space point cloud");
    landscape->add_option("family", family, "landmarks | d_plane | s_fill | noise_line")
        ->required();
    landscape->add_option("-n,--n-qubits", n_qubits, "number of qubits")->required();
    landscape->add_option("--count", count, "number of rows");

    std::string direction = "z";
    std::string measurement = "eigen";
    double theta = kDefaultProbeTheta;
    auto *crb = app.add_subcommand("crb", "Cramer-Rao ordering for one measurement");
    crb->add_option("spec", spec_path, "state spec file")->required();
    crb->add_option("--direction", direction, "x, y, z or a,b,c");
    crb->add_option("--measurement", measurement,
                    "parity_{x,y,z} | product_{x,y,z} | eigen | random");
    crb->add_option("--theta", theta, "probe phase");

    // Global flags are accepted after the subcommand too.
    for (auto *sub : {analyze, depth, landscape, crb}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        static_cast<void>(app.exit(e));
        return static_cast<int>(ExitCode::parse);
    }

    try {
        const AnalysisConfig config = resolve_config(g);
        if (analyze->parsed() || depth->parsed()) {
            const ReportDocument doc = analyze_spec(load_spec_file(spec_path), config);
            emit(g, dump_document(analyze->parsed() ? report_to_json(doc)
                                                    : depth_to_json(doc.depth)));
        } else if (landscape->parsed()) {
            const int default_count = family == "noise_line" ? 11 : 100;
            const auto rows = landscape_table(family, n_qubits, count.value_or(default_count),
                                              config.seed, config);
            std::ostringstream os;
            write_table(os, rows);
            emit(g, os.str());
        } else if (crb->parsed()) {
            const auto report = crb_report(load_spec_file(spec_path),
                                           parse_direction(direction), measurement,
                                           config, theta);
            emit(g, dump_document(crb_to_json(report)));
        }
    } catch (...) {
        const ErrorReport err = classify_current_exception();
        std::cerr << error_to_json(err).dump(2) << '\n';
        return static_cast<int>(err.code);
    }
    return 0;
}
