#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dualmink/errors.hpp"
#include "dualmink/geometry.hpp"
#include "helpers.hpp"

using namespace dualmink;
using testutil::kPi;

TEST_CASE("unit square: vertices, supports, radial map") {
    const Polytope P = testutil::unit_square();
    CHECK(P.dim() == 2);
    CHECK(P.facet_count() == 4);
    CHECK(P.vertex_count() == 4);
    CHECK(P.active_facet_count() == 4);

    // Vertices are the four corners (+-1, +-1) in some order.
    for (int k = 0; k < 4; ++k) {
        const auto v = P.vertex(k);
        CHECK(std::fabs(v[0]) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(v[1]) == doctest::Approx(1.0).epsilon(1e-14));
    }

    const Direction diag{1, 1};
    CHECK(support_value(P, diag) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // At angle pi/6 the +x facet is hit first: rho = 1/cos(pi/6).
    const Direction u{std::cos(kPi / 6), std::sin(kPi / 6)};
    CHECK(radial_value(P, u) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(owning_facet(P, u) == 0);

    // The diagonal lies on the boundary of two cells.
    const auto cells = reverse_gauss_cell(P, diag);
    CHECK(cells.size() == 2);
    CHECK(std::find(cells.begin(), cells.end(), 0) != cells.end());
    CHECK(std::find(cells.begin(), cells.end(), 1) != cells.end());
}

TEST_CASE("regular hexagon with unit supports has circumradius 2/sqrt(3)") {
    const Polytope H = testutil::regular_polygon(6);
    CHECK(H.vertex_count() == 6);
    for (int k = 0; k < 6; ++k) {
        const auto v = H.vertex(k);
        CHECK(std::hypot(v[0], v[1]) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
    }
}

TEST_CASE("polar body: square <-> diamond, involution on random bodies") {
    const Polytope S = testutil::unit_square();
    const Polytope D = polar(S);
    // Polar of [-1,1]^2 is |x|+|y| <= 1: supports 1/sqrt(2) at diagonal normals.
    CHECK(D.facet_count() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(D.support_coeff(i) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(hausdorff_distance(S, polar(D)) == doctest::Approx(0.0).epsilon(1e-12));

    for (uint64_t seed : {11u, 12u, 13u}) {
        const Polytope P = testutil::random_active_body(2, 7, seed);
        CHECK(hausdorff_distance(P, polar(polar(P))) < 1e-9);
    }
    const Polytope C = testutil::unit_cube();
    CHECK(hausdorff_distance(polar(C), testutil::unit_octahedron()) < 1e-12);
    const Polytope P3 = testutil::random_active_body(3, 9, 21);
    CHECK(hausdorff_distance(P3, polar(polar(P3))) < 1e-9);
}

TEST_CASE("polar radial-support duality: rho_K(u) * h_polar(u) = 1") {
    const Polytope P = testutil::random_active_body(2, 8, 31);
    const Polytope Q = polar(P);
    for (int j = 0; j < 64; ++j) {
        const double a = 2 * kPi * (j + 0.37) / 64;
        const Direction u{std::cos(a), std::sin(a)};
        CHECK(radial_value(P, u) * support_value(Q, u) == doctest::Approx(1.0).epsilon(1e-11));
    }
    const Polytope P3 = testutil::random_active_body(3, 10, 32);
    const Polytope Q3 = polar(P3);
    const auto dirs = testutil::random_directions(3, 50, 77);
    for (const auto& u : dirs)
        CHECK(radial_value(P3, u) * support_value(Q3, u) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("Wulff shape of a body's own supports reproduces the body") {
    const Polytope P = testutil::random_active_body(2, 9, 41);
    std::vector<double> h(P.supports().begin(), P.supports().end());
    const Polytope W = wulff_shape(2, P.normals(), h);
    CHECK(hausdorff_distance(P, W) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("Wulff shape drops dominated halfspaces from the vertex set") {
    // Extra facet at the diagonal: h = 1.5 > sqrt(2) never cuts the square.
    std::vector<Direction> normals = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}};
    std::vector<double> h = {1, 1, 1, 1, 1.5};
    const Polytope P(2, normals, h);
    CHECK(P.facet_count() == 5);
    CHECK(P.active_facet_count() == 4);
    CHECK(!P.facet_active(4));
    CHECK(P.vertex_count() == 4);

    // h = 1.2 < sqrt(2) does cut the corner.
    h[4] = 1.2;
    const Polytope Q(2, normals, h);
    CHECK(Q.active_facet_count() == 5);
    CHECK(Q.vertex_count() == 5);
    CHECK(support_value(Q, Direction{1, 1}) == doctest::Approx(1.2).epsilon(1e-13));
}

TEST_CASE("scaling scales supports, vertices, and distances linearly") {
    const Polytope S = testutil::unit_square();
    const Polytope S2 = scale_body(S, 2.0);
    CHECK(S2.support_coeff(0) == 2.0);
    CHECK(hausdorff_distance(S, S2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    // d_H(P, sP) = (s-1) * outradius for s > 1.
    const Polytope P = testutil::random_active_body(2, 11, 51);
    double outradius = 0;
    for (int k = 0; k < P.vertex_count(); ++k) {
        const auto v = P.vertex(k);
        outradius = std::max(outradius, std::hypot(v[0], v[1]));
    }
    CHECK(hausdorff_distance(P, scale_body(P, 1.75)) ==
          doctest::Approx(0.75 * outradius).epsilon(1e-11));

    const Polytope C = testutil::unit_cube();
    CHECK(hausdorff_distance(C, scale_body(C, 2.0)) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("Hausdorff distance square vs inscribed diamond is sqrt(2)/2") {
    const Polytope S = testutil::unit_square();
    const Polytope D = polar(S);
    CHECK(hausdorff_distance(S, D) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(hausdorff_distance(D, S) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(hausdorff_distance(S, S) == 0.0);
}

TEST_CASE("radial distance square vs diamond is sqrt(2)/2 at the corner") {
    const Polytope S = testutil::unit_square();
    const Polytope D = polar(S);
    CHECK(radial_distance(S, D) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-11));
}

TEST_CASE("3D Hausdorff reports its mesh resolution") {
    const Polytope C = testutil::unit_cube();
    double res = 0;
    const double d = hausdorff_distance(C, scale_body(C, 1.5), &res);
    CHECK(d == doctest::Approx(0.5 * std::sqrt(3.0)).epsilon(1e-9));
    CHECK(res > 0);
    CHECK(res < 0.02);
}

TEST_CASE("hemisphere check: textbook direction sets") {
    auto measure_on = [](int dim, std::vector<std::vector<double>> dirs) {
        std::vector<DiscreteMeasure::Atom> atoms;
        for (auto& v : dirs) atoms.push_back({Direction(std::span<const double>(v)), 1.0});
        return DiscreteMeasure(dim, atoms);
    };
    CHECK(hemisphere_check(measure_on(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}})));
    CHECK(!hemisphere_check(measure_on(2, {{1, 0}, {0, 1}})));
    CHECK(!hemisphere_check(measure_on(2, {{1, 0}, {-1, 0}})));
    CHECK(hemisphere_check(measure_on(2, {{1, 0}, {-0.5, std::sqrt(3.) / 2}, {-0.5, -std::sqrt(3.) / 2}})));
    CHECK(hemisphere_check(
        measure_on(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}})));
    CHECK(!hemisphere_check(
        measure_on(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}})));
    // 4D cross-polytope directions minus one: concentrated.
    CHECK(hemisphere_check(measure_on(4, {{1, 0, 0, 0},
                                          {-1, 0, 0, 0},
                                          {0, 1, 0, 0},
                                          {0, -1, 0, 0},
                                          {0, 0, 1, 0},
                                          {0, 0, -1, 0},
                                          {0, 0, 0, 1},
                                          {0, 0, 0, -1}})));
    CHECK(!hemisphere_check(measure_on(4, {{1, 0, 0, 0},
                                           {-1, 0, 0, 0},
                                           {0, 1, 0, 0},
                                           {0, -1, 0, 0},
                                           {0, 0, 1, 0},
                                           {0, 0, -1, 0},
                                           {0, 0, 0, 1}})));
}

TEST_CASE("construction rejects invalid data") {
    std::vector<Direction> sq = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CHECK_THROWS_AS(Polytope(2, sq, std::vector<double>{1, 1, 1}), ShapeMismatch);
    CHECK_THROWS_AS(Polytope(2, sq, std::vector<double>{1, 1, 1, -1}), InvalidBody);
    CHECK_THROWS_AS(Polytope(2, sq, std::vector<double>{1, 1, 1, 0}), InvalidBody);

    std::vector<Direction> dup = {{1, 0}, {1, 1e-12}, {0, 1}, {-1, -1}};
    CHECK_THROWS_AS(Polytope(2, dup, std::vector<double>(4, 1.0)), InvalidBody);

    std::vector<Direction> half = {{1, 0}, {0, 1}, {1, 1}};
    CHECK_THROWS_AS(Polytope(2, half, std::vector<double>(3, 1.0)), UnboundedWulff);

    std::vector<Direction> few = {{1, 0}, {-1, 0}};
    CHECK_THROWS_AS(Polytope(2, few, std::vector<double>(2, 1.0)), UnboundedWulff);

    std::vector<Direction> half3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.5, 0.5, 0.70710678}};
    CHECK_THROWS_AS(Polytope(3, half3, std::vector<double>(4, 1.0)), UnboundedWulff);
}

TEST_CASE("4D cross-polytope normals build a hypercube (no vertex data)") {
    std::vector<Direction> normals;
    for (int d = 0; d < 4; ++d)
        for (int s : {-1, 1}) {
            std::vector<double> v(4, 0.0);
            v[d] = s;
            normals.emplace_back(std::span<const double>(v));
        }
    const Polytope P(4, normals, std::vector<double>(8, 1.0));
    CHECK(P.facet_count() == 8);
    CHECK(P.active_facet_count() == 8);
    std::vector<double> e1 = {1, 0, 0, 0};
    CHECK(radial_value(P, Direction(std::span<const double>(e1))) == doctest::Approx(1.0));
    std::vector<double> diag = {0.5, 0.5, 0.5, 0.5};
    CHECK(radial_value(P, Direction(std::span<const double>(diag))) == doctest::Approx(2.0));
}

TEST_CASE("random bodies satisfy the vertex-halfspace invariant") {
    for (uint64_t seed = 0; seed < 24; ++seed) {
        const Polytope P = testutil::random_body(2, 5 + static_cast<int>(seed % 9), 600 + seed);
        for (int k = 0; k < P.vertex_count(); ++k) {
            const auto v = P.vertex(k);
            for (int i = 0; i < P.facet_count(); ++i) {
                const double dot =
                    v[0] * P.normals()[i][0] + v[1] * P.normals()[i][1];
                CHECK(dot <= P.support_coeff(i) + 1e-9);
            }
        }
    }
    for (uint64_t seed = 0; seed < 8; ++seed) {
        const Polytope P = testutil::random_body(3, 6 + static_cast<int>(seed % 7), 700 + seed);
        for (int k = 0; k < P.vertex_count(); ++k) {
            const auto v = P.vertex(k);
            for (int i = 0; i < P.facet_count(); ++i) {
                const double dot = v[0] * P.normals()[i][0] + v[1] * P.normals()[i][1] +
                                   v[2] * P.normals()[i][2];
                CHECK(dot <= P.support_coeff(i) + 1e-9);
            }
        }
    }
}

TEST_CASE("2D ring is counterclockwise: vertex angles wrap exactly once") {
    const Polytope P = testutil::random_active_body(2, 10, 91);
    const auto& ring = P.ring();
    REQUIRE(static_cast<int>(ring.size()) == P.active_facet_count());
    const int r = static_cast<int>(ring.size());
    int descents = 0;
    for (int k = 0; k < r; ++k)
        if (P.ring_vertex_angle((k + 1) % r) <= P.ring_vertex_angle(k)) ++descents;
    CHECK(descents == 1);
}
