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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include <qfisher/cli.hpp>

using namespace qfisher;

namespace {

const std::string kSamples = QFISHER_SAMPLES_DIR;

std::vector<StateSpec> all_families() {
    ComplexMatrix raw = ComplexMatrix::Zero(2, 2);
    raw(0, 0) = 0.7;
    raw(1, 1) = 0.3;
    raw(0, 1) = Complex(0.1, 0.2);
    raw(1, 0) = Complex(0.1, -0.2);
    return {
        make_spec(GhzSpec{4, Axis::y}),
        make_spec(DickeSpec{5, 2, Axis::x}),
        make_spec(ProductBlochSpec{4, Eigen::Vector3d(0.1, std::sqrt(0.35), std::sqrt(0.64))}),
        make_spec(EvenParitySpec{8, {std::sqrt(0.2), Complex(0.0, std::sqrt(0.3)),
                                     Complex(std::sqrt(0.25), std::sqrt(0.25))}}),
        make_spec(DickeSuperpositionSpec{8, {Complex(0.3, -0.7), Complex(1.0 / 3.0, 0.1), 0.9}}),
        make_spec(GStateSpec{6, Axis::x}),
        noise_mixed_spec(make_spec(DickeSpec{4, 2, Axis::z}), 0.3),
        make_spec(CompletelyMixedSpec{3}),
        make_spec(RawMatrixSpec{1, raw}),
    };
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string &args) {
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("qfisher_cli_" + std::to_string(::getpid()) + ".out");
    const std::string cmd = std::string(QFISHER_CLI_PATH) + " " + args + " > " + tmp.string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::filesystem::remove(tmp);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(SpecIo, EveryFamilyRoundTrips) {
    for (const auto &spec : all_families()) {
        const Json j = spec_to_json(spec);
        const StateSpec back = spec_from_json(parse_json_text(j.dump()));
        EXPECT_EQ(kind_name(back), kind_name(spec));
        EXPECT_EQ(spec_to_json(back), j);
        const double diff = (from_spec(back).rho() - from_spec(spec).rho()).cwiseAbs().maxCoeff();
        EXPECT_LE(diff, 1e-12) << kind_name(spec);
    }
}

TEST(SpecIo, DefaultsAndErrors) {
    const auto ghz_spec = spec_from_json(Json{{"kind", "ghz"}, {"n_qubits", 3}});
    EXPECT_EQ(std::get<GhzSpec>(ghz_spec.kind).basis, Axis::z);
    EXPECT_THROW(static_cast<void>(spec_from_json(Json{{"kind", "nope"}})), ParseError);
    EXPECT_THROW(static_cast<void>(spec_from_json(Json{{"kind", "ghz"}})), ParseError);
    EXPECT_THROW(static_cast<void>(spec_from_json(Json{{"kind", "ghz"}, {"n_qubits", "4"}})),
                 ParseError);
    EXPECT_THROW(static_cast<void>(
                     spec_from_json(Json{{"kind", "ghz"}, {"n_qubits", 4}, {"basis", "w"}})),
                 ParseError);
    EXPECT_THROW(static_cast<void>(spec_from_json(Json::array())), ParseError);
    EXPECT_THROW(static_cast<void>(parse_json_text("{")), ParseError);
    EXPECT_THROW(static_cast<void>(load_spec_file(kSamples + "/does_not_exist.json")),
                 ParseError);
    EXPECT_THROW(static_cast<void>(spec_from_json(parse_json_text(
                     R"({"kind": "raw_matrix", "n_qubits": 1, "real": [[1, 0], [0]]})"))),
                 ParseError);
}

TEST(SpecIo, SampleFilesLoad) {
    for (const auto &entry : std::filesystem::directory_iterator(kSamples)) {
        EXPECT_NO_THROW(static_cast<void>(from_spec(load_spec_file(entry.path().string()))))
            << entry.path();
    }
}

TEST(Config, ParseAndValidate) {
    const auto c = config_from_json(Json{{"tol_violation", 1e-8}, {"seed", 42}});
    EXPECT_EQ(c.tol_violation, 1e-8);
    EXPECT_EQ(c.seed, 42U);
    EXPECT_EQ(c.dimension_cap, kDefaultDimensionCap);
    EXPECT_THROW(static_cast<void>(config_from_json(Json{{"bogus", 1}})), ParseError);
    EXPECT_THROW(static_cast<void>(config_from_json(Json{{"seed", -1}})), ParseError);
    EXPECT_THROW(static_cast<void>(config_from_json(Json{{"dimension_cap", 1000}})),
                 ParameterError);
    EXPECT_THROW(static_cast<void>(config_from_json(Json{{"fd_step", 0.0}})), ParameterError);
    EXPECT_EQ(config_to_json(AnalysisConfig{}).at("eps_rank"), 1e-12);
}

TEST(Analyze, GhzSix) {
    const auto doc = analyze_spec(make_spec(GhzSpec{6, Axis::z}));
    EXPECT_LT((doc.triple - Eigen::Vector3d(6, 6, 36)).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_EQ(doc.depth.depth_lower_bound, 6);
    EXPECT_EQ(doc.version, kToolVersion);
    EXPECT_LT(doc.diagnostics.gamma_imag_residue, 1e-10);
    EXPECT_NEAR(doc.eigenvalues(2), 36.0, 1e-9);
}

TEST(Analyze, CompletelyMixedHasNoViolations) {
    const auto doc = analyze_spec(make_spec(CompletelyMixedSpec{4}));
    for (const auto &r : doc.criteria) {
        EXPECT_FALSE(r.violated) << criterion_name(r.id);
    }
    EXPECT_NEAR(doc.diagnostics.min_rho_eigenvalue, 1.0 / 16.0, 1e-15);
}

TEST(Analyze, DimensionCapFromConfig) {
    AnalysisConfig c;
    c.dimension_cap = 16;
    EXPECT_THROW(static_cast<void>(analyze_spec(make_spec(GhzSpec{6, Axis::z}), c)),
                 DimensionCapError);
    // The guard restores the previous cap.
    EXPECT_EQ(dimension_cap(), kDefaultDimensionCap);
}

TEST(Report, RoundTripIsLossless) {
    for (const auto &spec : all_families()) {
        const auto doc = analyze_spec(spec);
        const std::string text = dump_document(report_to_json(doc));
        const auto back = report_from_json(parse_json_text(text));
        EXPECT_EQ(dump_document(report_to_json(back)), text);
        EXPECT_EQ(back.gamma, doc.gamma);
        EXPECT_EQ(back.triple, doc.triple);
        ASSERT_EQ(back.criteria.size(), doc.criteria.size());
        for (std::size_t i = 0; i < doc.criteria.size(); ++i) {
            EXPECT_EQ(back.criteria[i].value, doc.criteria[i].value);
            EXPECT_EQ(back.criteria[i].sense, doc.criteria[i].sense);
        }
    }
    EXPECT_THROW(static_cast<void>(report_from_json(Json{{"version", "0.1.0"}})), ParseError);
}

TEST(Report, Deterministic) {
    const auto spec = make_spec(DickeSuperpositionSpec{8, {Complex(0.3, -0.7), 0.2, 0.9}});
    EXPECT_EQ(dump_document(report_to_json(analyze_spec(spec))),
              dump_document(report_to_json(analyze_spec(spec))));
}

TEST(Landscape, Landmarks) {
    const auto rows = landscape_table("landmarks", 6, 0, 0);
    ASSERT_EQ(rows.size(), 13U);
    EXPECT_EQ(rows[0].spec_id, "C");
    EXPECT_EQ(rows[9].spec_id, "G_z");
    EXPECT_EQ(rows[9].f, Eigen::Vector3d(18.5, 18.5, 0));
    std::ostringstream os;
    write_table(os, rows);
    const auto csv = parse_csv(os.str());
    ASSERT_EQ(csv.size(), 14U);
    EXPECT_EQ(csv[0], (std::vector<std::string>{"F_x", "F_y", "F_z", "spec_id"}));
    EXPECT_EQ(csv[13], (std::vector<std::string>{"6", "6", "36", "GHZ_z"}));
}

TEST(Landscape, DPlaneRowsAreCoplanarAndSeeded) {
    const auto rows = landscape_table("d_plane", 8, 1000, 7);
    ASSERT_EQ(rows.size(), 1000U);
    for (const auto &r : rows) {
        EXPECT_NEAR(r.f.sum(), 80.0, 1e-8);
    }
    std::ostringstream a, b;
    write_table(a, rows);
    write_table(b, landscape_table("d_plane", 8, 1000, 7));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(landscape_table("d_plane", 8, 1, 8)[0].f, rows[0].f);
}

TEST(Landscape, NoiseLineMonotone) {
    const auto rows = landscape_table("noise_line", 4, 11, 0);
    ASSERT_EQ(rows.size(), 11U);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double p = static_cast<double>(i) / 10.0;
        EXPECT_LT((rows[i].f - noise_scale(p, 4) * Eigen::Vector3d(4, 4, 16)).cwiseAbs().maxCoeff(),
                  1e-9);
        if (i > 0) {
            EXPECT_GT(rows[i].f(2), rows[i - 1].f(2));
        }
    }
}

TEST(Landscape, SFillRowsInsideSeparablePolytope) {
    const auto rows = landscape_table("s_fill", 6, 30, 3);
    const auto poly = sc_polytope(6);
    for (const auto &r : rows) {
        EXPECT_TRUE(polytope_contains(poly, {r.f, std::nullopt}, 1e-6));
    }
}

TEST(Landscape, Errors) {
    EXPECT_THROW(static_cast<void>(landscape_table("d_plane", 6, 10, 0)), ParameterError);
    EXPECT_THROW(static_cast<void>(landscape_table("landmarks", 5, 0, 0)), ParameterError);
    EXPECT_THROW(static_cast<void>(landscape_table("cubes", 4, 1, 0)), ParameterError);
}

TEST(Crb, Examples) {
    const auto ghz_report =
        crb_report(make_spec(GhzSpec{4, Axis::z}), Direction::along(Axis::z), "parity_x");
    EXPECT_NEAR(ghz_report.classical_fisher, 16.0, 16.0 * 1e-6);
    EXPECT_NEAR(ghz_report.quantum_fisher, 16.0, 1e-9);
    EXPECT_TRUE(ghz_report.ordering_holds);
    EXPECT_NEAR(*ghz_report.crb, 0.25, 1e-12);

    const auto mixed =
        crb_report(make_spec(CompletelyMixedSpec{3}), Direction::along(Axis::x), "random");
    EXPECT_EQ(mixed.status(), "unbounded_variance");
    EXPECT_TRUE(crb_to_json(mixed).at("crb").is_null());

    AnalysisConfig c;
    c.seed = 5;
    const auto rnd =
        crb_report(make_spec(DickeSpec{4, 2, Axis::z}), Direction::along(Axis::x), "random", c);
    EXPECT_LE(rnd.classical_fisher, 12.0 + 1e-6);
    EXPECT_THROW(static_cast<void>(crb_report(make_spec(GhzSpec{2, Axis::z}),
                                              Direction::along(Axis::x), "telepathy")),
                 ParameterError);
}

TEST(Errors, Classification) {
    auto classify = [](auto thrower) {
        try {
            thrower();
        } catch (...) {
            return classify_current_exception().code;
        }
        return ExitCode::ok;
    };
    EXPECT_EQ(classify([] { throw ParseError("x"); }), ExitCode::parse);
    EXPECT_EQ(classify([] { throw ValidationError({"a"}); }), ExitCode::validation);
    EXPECT_EQ(classify([] { throw ParameterError("x"); }), ExitCode::validation);
    EXPECT_EQ(classify([] { throw NumericalError("x"); }), ExitCode::numerical);
    EXPECT_EQ(classify([] { throw DimensionCapError(8, 4); }), ExitCode::dimension_cap);
    const Json j = error_to_json({ExitCode::validation, "validation_error", "m", {"a", "b"}});
    EXPECT_EQ(j.at("error").at("exit_code"), 3);
    EXPECT_EQ(j.at("error").at("details").size(), 2U);
}

TEST(Executable, AnalyzeAndDepth) {
    const auto r = run_cli("analyze " + kSamples + "/ghz6_z.json");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const auto doc = report_from_json(parse_json_text(r.out));
    EXPECT_EQ(doc.depth.depth_lower_bound, 6);
    const auto d = run_cli("depth " + kSamples + "/dicke6_z.json");
    ASSERT_EQ(d.exit_code, 0);
    EXPECT_EQ(depth_from_json(parse_json_text(d.out)).depth_lower_bound, 6);
}

TEST(Executable, ByteIdenticalReports) {
    const auto a = run_cli("analyze " + kSamples + "/dicke_sup8.json --seed 3");
    const auto b = run_cli("analyze " + kSamples + "/dicke_sup8.json --seed 3");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Executable, ExitCodes) {
    EXPECT_EQ(run_cli("analyze " + kSamples + "/../malformed.json").exit_code, 2);
    EXPECT_EQ(run_cli("analyze " + kSamples + "/missing.json").exit_code, 2);
    EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli("analyze " + kSamples + "/ghz6_z.json --max-qubits 4").exit_code, 5);
    EXPECT_EQ(run_cli("landscape d_plane -n 6").exit_code, 3);
    const auto bad = run_cli("analyze " + kSamples + "/ghz6_z.json --tol -1");
    EXPECT_EQ(bad.exit_code, 3);
    EXPECT_NE(bad.out.find("\"kind\": \"validation_error\""), std::string::npos);
}

TEST(Executable, LandscapeToFile) {
    const auto path = std::filesystem::temp_directory_path() / "qfisher_landmarks.csv";
    const auto r = run_cli("landscape landmarks -n 4 --out " + path.string());
    ASSERT_EQ(r.exit_code, 0) << r.out;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(parse_csv(ss.str()).size(), 14U);
    std::filesystem::remove(path);
}

TEST(Executable, Crb) {
    const auto r = run_cli("crb " + kSamples + "/ghz4_z.json --direction z --measurement parity_x");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    const Json j = parse_json_text(r.out);
    EXPECT_NEAR(j.at("classical_fisher").get<double>(), 16.0, 1e-4);
    EXPECT_EQ(j.at("status"), "bounded");
    const auto m = run_cli("crb " + kSamples + "/mixed4.json --measurement eigen");
    ASSERT_EQ(m.exit_code, 0);
    EXPECT_EQ(parse_json_text(m.out).at("status"), "unbounded_variance");
}
