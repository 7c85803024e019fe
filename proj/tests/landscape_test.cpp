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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <qfisher/criteria.hpp>
#include <qfisher/landscape.hpp>

#include "oracles.hpp"

using namespace qfisher;

namespace {

Eigen::Vector3d brute_triple(const QuantumState &s) {
    return oracle::gamma(s.rho(), s.n_qubits()).diagonal();
}

double linf(const Eigen::Vector3d &a, const Eigen::Vector3d &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST(Landmarks, Coordinates) {
    EXPECT_EQ(landmark(6, "D_z").p, Eigen::Vector3d(24, 24, 0));
    EXPECT_EQ(landmark(6, "G_z").p, Eigen::Vector3d(18.5, 18.5, 0));
    EXPECT_EQ(landmark(6, "GHZ_z").p, Eigen::Vector3d(6, 6, 36));
    EXPECT_EQ(landmark(6, "S_z").p, Eigen::Vector3d(6, 6, 0));
    EXPECT_EQ(landmark(6, "S_x").p, Eigen::Vector3d(0, 6, 6));
    EXPECT_EQ(landmark(6, "C").p, Eigen::Vector3d::Zero());
    EXPECT_EQ(landmark_points(6).size(), 13U);
    EXPECT_THROW(static_cast<void>(landmark_points(5)), ParameterError);
    EXPECT_THROW(static_cast<void>(landmark(6, "Q")), ParameterError);
}

TEST(Landmarks, ConsistencyAgainstBruteForce) {
    for (int n : {4, 8}) {
        const auto report = landmark_consistency(n);
        for (const auto &check : report.checks) {
            const auto &np = landmark(n, check.name);
            EXPECT_LT(linf(check.computed, brute_triple(from_spec(*np.provenance))), 1e-9)
                << check.name;
        }
    }
}

TEST(Landmarks, OnlyGVerticesDeviate) {
    // The constructed G states reach N^2/2, half a unit below the table.
    for (int n : {4, 6, 8}) {
        const auto report = landmark_consistency(n);
        EXPECT_EQ(report.failures(), (std::vector<std::string>{"G_x", "G_y", "G_z"})) << n;
        for (const auto &check : report.checks) {
            if (check.name.rfind("G_", 0) == 0) {
                EXPECT_NEAR(check.residual, 0.5, 1e-9);
                EXPECT_NEAR(check.computed.sum(), n * n, 1e-9);
            }
        }
    }
}

TEST(Polytope, Membership) {
    EXPECT_TRUE(polytope_contains(s_triangle(6), {Eigen::Vector3d(4, 4, 4), std::nullopt}));
    for (int n : {4, 6}) {
        EXPECT_TRUE(polytope_contains(sc_polytope(n), {Eigen::Vector3d::Zero(), std::nullopt}));
    }
    EXPECT_FALSE(polytope_contains(dg_polytope(6), {Eigen::Vector3d(6, 6, 36), std::nullopt}));
    EXPECT_FALSE(polytope_contains(s_triangle(6), {Eigen::Vector3d(4, 4, 4.1), std::nullopt}));
    EXPECT_TRUE(polytope_contains(s_triangle(6), {Eigen::Vector3d(4, 4, 4 + 1e-9), std::nullopt}));
    EXPECT_TRUE(polytope_contains(cd_polytope(8), {Eigen::Vector3d(10, 10, 10), std::nullopt}));
    EXPECT_FALSE(polytope_contains(cd_polytope(8), {Eigen::Vector3d(-1, 10, 10), std::nullopt}));
}

TEST(Polytope, DegenerateVertexSets) {
    Polytope line{"line", {{Eigen::Vector3d(0, 0, 0), {}}, {Eigen::Vector3d(1, 1, 1), {}},
                           {Eigen::Vector3d(2, 2, 2), {}}}};
    EXPECT_TRUE(polytope_contains(line, {Eigen::Vector3d(1.5, 1.5, 1.5), {}}));
    EXPECT_FALSE(polytope_contains(line, {Eigen::Vector3d(1.5, 1.5, 1.0), {}}));
    EXPECT_THROW(static_cast<void>(polytope_contains(Polytope{"empty", {}}, {})), ParameterError);
}

TEST(Polytope, BarycentricOracle) {
    // Random convex combinations of the 6 DG vertices must be recognised.
    std::mt19937_64 rng(13);
    std::exponential_distribution<double> e(1.0);
    const auto poly = dg_polytope(8);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Vector3d q = Eigen::Vector3d::Zero();
        double total = 0.0;
        std::vector<double> w(poly.vertices.size());
        for (auto &x : w) {
            x = e(rng);
            total += x;
        }
        for (std::size_t v = 0; v < w.size(); ++v) {
            q += w[v] / total * poly.vertices[v].p;
        }
        const auto weights = barycentric_weights(poly, q);
        ASSERT_TRUE(weights.has_value());
        Eigen::Vector3d back = Eigen::Vector3d::Zero();
        for (std::size_t v = 0; v < w.size(); ++v) {
            back += (*weights)[v] * poly.vertices[v].p;
        }
        EXPECT_LT(linf(back, q), 1e-8);
    }
}

TEST(SFill, Examples) {
    const auto sx = fill_s_polytope(landmark(6, "S_x"), 6);
    EXPECT_LT(linf(brute_triple(sx), Eigen::Vector3d(0, 6, 6)), 1e-8);
    const Eigen::Vector3d centroid(4, 4, 4);
    EXPECT_LT(linf(brute_triple(fill_s_polytope({centroid, {}}, 6)), centroid), 1e-8);
    const Eigen::Vector3d c2 = s_triangle_bloch(Eigen::Vector3d(2, 4, 6), 6).cwiseAbs2();
    EXPECT_LT(linf(c2, Eigen::Vector3d(2.0 / 3, 1.0 / 3, 0)), 1e-12);
    EXPECT_LT(linf(brute_triple(fill_s_polytope({Eigen::Vector3d(2, 4, 6), {}}, 6)),
                   Eigen::Vector3d(2, 4, 6)),
              1e-8);
    EXPECT_THROW(static_cast<void>(fill_s_polytope({Eigen::Vector3d(1, 1, 1), {}}, 6)),
                 GeometryError);
    EXPECT_THROW(static_cast<void>(fill_sc_polytope({Eigen::Vector3d(6, 6, 6), {}}, 6)),
                 GeometryError);
}

TEST(SFill, RandomPointsAreSeparableRealizations) {
    const int n = 6;
    const auto poly = sc_polytope(n);
    std::mt19937_64 rng(17);
    std::exponential_distribution<double> e(1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Vector4d w(e(rng), e(rng), e(rng), e(rng));
        w /= w.sum();
        Eigen::Vector3d q = Eigen::Vector3d::Zero();
        for (int v = 0; v < 4; ++v) {
            q += w(v) * poly.vertices[static_cast<std::size_t>(v)].p;
        }
        const auto s = fill_sc_polytope({q, {}}, n);
        EXPECT_LT(linf(brute_triple(s), q), 1e-6);
    }
}

TEST(NoiseLine, ClosedFormScaling) {
    EXPECT_NEAR(noise_scale(0.6, 4), 0.36 / (0.6 + 0.4 / 8.0), 1e-15);
    EXPECT_EQ(noise_scale(0.0, 4), 0.0);
    EXPECT_NEAR(noise_scale(1.0, 4), 1.0, 1e-15);
    for (double s : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(noise_scale(noise_weight_for_scale(s, 5), 5), s, 1e-12);
    }
    const auto line = noise_line(ghz(4), uniform_grid(11));
    ASSERT_EQ(line.points.size(), 11U);
    EXPECT_LT(line.max_residual(), 1e-9);
    EXPECT_LT(line.points.front().p.norm(), 1e-12);
    EXPECT_LT(linf(line.points.back().p, Eigen::Vector3d(4, 4, 16)), 1e-9);
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        EXPECT_GT(line.points[i].p(2), line.points[i - 1].p(2));
    }
    EXPECT_THROW(static_cast<void>(uniform_grid(1)), ParameterError);
}

TEST(DPlane, SamplesArePlanar) {
    const auto points = sample_d_plane(8, 50, 7);
    ASSERT_EQ(points.size(), 50U);
    for (const auto &p : points) {
        EXPECT_NEAR(p.p.sum(), 80.0, 1e-8);
        EXPECT_GE(p.p.minCoeff(), -1e-9);
        ASSERT_TRUE(p.provenance.has_value());
    }
    const auto again = sample_d_plane(8, 50, 7);
    for (std::size_t i = 0; i < points.size(); ++i) {
        EXPECT_EQ(points[i].p, again[i].p);
    }
    // Draw i does not depend on the total count.
    EXPECT_EQ(sample_d_plane(8, 3, 7)[2].p, points[2].p);
    EXPECT_THROW(static_cast<void>(sample_d_plane(6, 1, 0)), ParameterError);
}

TEST(DPlane, SpecialAlphas) {
    EXPECT_LT(linf(d_plane_point({1.0, 0.0, 0.0}, 8).p, Eigen::Vector3d(0, 40, 40)), 1e-8);
    const auto mid = d_plane_point({Complex(0, 1), 1.0, 0.0}, 8);
    EXPECT_LT(linf(mid.p, Eigen::Vector3d(20, 20, 40)), 1e-8);
}

TEST(AppendixB, ClosedFormAndQ) {
    const auto data = dicke_triangle_data(8);
    // Q as an independent dense matrix element.
    const ComplexVector dz = dicke_vector(8, 4);
    oracle::Mat ux = oracle::Mat::Identity(1, 1), uy = ux;
    oracle::Mat hx(2, 2), hy(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    hx << s, s, s, -s;
    hy << s, s, oracle::cd(0, s), oracle::cd(0, -s);
    for (int k = 0; k < 8; ++k) {
        ux = oracle::kron(ux, hx);
        uy = oracle::kron(uy, hy);
    }
    const oracle::Mat jy = oracle::collective(1, 8);
    const oracle::cd q = (ux * dz).dot(jy * jy * dz);
    EXPECT_LT(std::abs(q - data.q()), 1e-10);
    EXPECT_NEAR(q.imag(), 0.0, 1e-10);

    const auto z = appendix_b_check({0.0, 0.0, 1.0}, data);
    EXPECT_LT(linf(z.direct.diagonal(), Eigen::Vector3d(40, 40, 0)), 1e-8);
    EXPECT_LT(z.max_residual, 1e-8);
    const auto yz = appendix_b_check({0.0, 1.0, 1.0}, data);
    EXPECT_LT(yz.max_residual, 1e-8);
    EXPECT_LT(yz.max_off_diagonal, 1e-9);
}

TEST(AppendixB, RandomAlpha) {
    const auto data = dicke_triangle_data(8);
    for (int i = 0; i < 20; ++i) {
        auto rng = draw_rng(99, static_cast<std::uint64_t>(i));
        const auto r = appendix_b_check(random_alpha(rng), data);
        EXPECT_LT(r.max_residual, 1e-8);
        EXPECT_LT(r.max_off_diagonal, 1e-9);
    }
    EXPECT_THROW(static_cast<void>(dicke_triangle_data(6)), ParameterError);
}

TEST(DFill, ReachesTrianglePoints) {
    const int n = 8;
    const auto tri = d_triangle(n);
    std::mt19937_64 rng(23);
    std::exponential_distribution<double> e(1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Vector3d w(e(rng), e(rng), e(rng));
        w /= w.sum();
        Eigen::Vector3d q = Eigen::Vector3d::Zero();
        for (int v = 0; v < 3; ++v) {
            q += w(v) * tri.vertices[static_cast<std::size_t>(v)].p;
        }
        const auto fill = fill_d_triangle({q, {}}, n);
        EXPECT_LE(fill.residual, 1e-6);
        EXPECT_LT(linf(brute_triple(fill.state), q), 1e-6);
    }
    EXPECT_THROW(static_cast<void>(fill_d_triangle({Eigen::Vector3d(10, 10, 10), {}}, n)),
                 GeometryError);
}

TEST(DFill, CdPolytopePointsAboveGPlaneAreGenuine) {
    const int n = 8;
    const Eigen::Vector3d q(30, 25, 15); // sum 70 > N^2 + 1
    const auto s = fill_cd_polytope({q, {}}, n);
    EXPECT_LT(linf(fisher_triple(s), q), 1e-6);
    const auto ev = evaluate_all(s);
    EXPECT_TRUE(find_reports(ev, CriterionId::biseparable_sum).front().violated);
}

TEST(DiagonalGamma, AllConstructedFamilies) {
    std::vector<QuantumState> states = {
        completely_mixed(4), product_bloch(Eigen::Vector3d(0, 1, 0), 4), dicke(4, 2, Axis::x),
        ghz(4, Axis::y), g_state(4, Axis::x), dicke_superposition({1.0, Complex(0, 2), 0.5}, 8),
        even_parity({0.6, 0.0, Complex(0, 0.8)}, 8), white_noise_mix(ghz(4), 0.3)};
    for (const auto &s : states) {
        Eigen::Matrix3d g = gamma_c(s).gamma;
        g.diagonal().setZero();
        EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(DiagonalGamma, TiltedProductStatesAreNotDiagonal) {
    // Gamma_ij = N (delta_ij - c_i c_j) for the opposed-spin product states.
    const Eigen::Vector3d c(0.6, 0.0, 0.8);
    const auto s = product_bloch(c, 4);
    const Eigen::Matrix3d expected = 4.0 * (Eigen::Matrix3d::Identity() - c * c.transpose());
    EXPECT_LT((gamma_c(s).gamma - expected).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((oracle::gamma(s.rho(), 4) - expected).cwiseAbs().maxCoeff(), 1e-10);
}

// Random amplitudes stay on the plane but are not confined to the triangle:
// equal real weights on |D>_x and |D>_z overshoot the D_y corner value.
TEST(DPlane, SuperpositionsLeaveTheTriangle) {
    const auto p = d_plane_point({1.0, 0.0, 1.0}, 8);
    EXPECT_NEAR(p.p.sum(), 80.0, 1e-9);
    EXPECT_NEAR(p.p(1), 560.0 / 11.0, 1e-9);
    EXPECT_FALSE(polytope_contains(d_triangle(8), p));
    int outside = 0;
    for (const auto &q : sample_d_plane(8, 50, 7)) {
        outside += polytope_contains(d_triangle(8), q) ? 0 : 1;
    }
    EXPECT_GT(outside, 0);
}
