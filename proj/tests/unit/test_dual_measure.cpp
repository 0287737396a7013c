#include <doctest.h>

#include <cmath>
#include <vector>

#include "dualmink/dual_measure.hpp"
#include "dualmink/errors.hpp"
#include "helpers.hpp"

using namespace dualmink;
using testutil::kPi;

// Closed-form reference values for the unit square (supports 1,1,1,1):
//   V_q = (1/2) * 4 * int_{-pi/4}^{pi/4} cos(t)^(-q) dt
// evaluated in 20-digit arithmetic. Each facet carries a quarter of it.
namespace {
struct SquareValue {
    double q;
    double vq;
};
constexpr SquareValue kSquare[] = {
    {-0.5, 2.9772123190419714992},
    {-1.0, 2.8284271247461900976},
    {-2.0, 2.5707963267948966192},
    {-5.0, 2.0270394394014362366},
};
} // namespace

TEST_CASE("dual volume of the unit square matches closed forms") {
    const Polytope S = testutil::unit_square();
    const QuadratureRule rule = build_rule(2, 0, S);
    for (const auto& [q, vq] : kSquare)
        CHECK(dual_volume(S, q, rule) == doctest::Approx(vq).epsilon(1e-12));
}

TEST_CASE("dual curvature of the unit square: equal masses sqrt(2)/2 at q = -1") {
    const Polytope S = testutil::unit_square();
    const QuadratureRule rule = build_rule(2, 0, S);
    const DualCurvature c = dual_curvature(S, -1.0, rule);
    REQUIRE(c.masses.size() == 4);
    for (double m : c.masses)
        CHECK(m == doctest::Approx(0.7071067811865475244).epsilon(1e-13));
    CHECK(c.rule_error == 0.0);

    // Partition identity: the bucket total is the dual volume.
    double s = 0;
    for (double m : c.masses) s += m;
    CHECK(s == c.total);
    CHECK(c.total == doctest::Approx(dual_volume(S, -1.0, rule)).epsilon(1e-14));
}

TEST_CASE("normalized dual volume of the square: q = -1 and the q = 0 limit") {
    const Polytope S = testutil::unit_square();
    const QuadratureRule rule = build_rule(2, 0, S);
    CHECK(normalized_dual_volume(S, -1.0, rule) ==
          doctest::Approx(1.1107207345395915618).epsilon(1e-12));
    CHECK(normalized_dual_volume(S, 0.0, rule) ==
          doctest::Approx(1.1163063935816376595).epsilon(1e-12));
    // Continuity across q = 0.
    CHECK(normalized_dual_volume(S, -1e-6, rule) ==
          doctest::Approx(normalized_dual_volume(S, 0.0, rule)).epsilon(1e-5));
    CHECK(normalized_dual_volume(S, 1e-6, rule) ==
          doctest::Approx(normalized_dual_volume(S, 0.0, rule)).epsilon(1e-5));
}

TEST_CASE("regular 256-gon approximates the disk: V_q near pi") {
    const Polytope G = testutil::regular_polygon(256);
    const QuadratureRule rule = build_rule(2, 0, G);
    CHECK(dual_volume(G, -0.5, rule) == doctest::Approx(3.14155322692173).epsilon(1e-11));
    CHECK(dual_volume(G, -1.0, rule) == doctest::Approx(3.1415138011443).epsilon(1e-11));
    CHECK(dual_volume(G, -2.0, rule) == doctest::Approx(3.14143495226128).epsilon(1e-11));
    CHECK(dual_volume(G, -5.0, rule) == doctest::Approx(3.14119842698516).epsilon(1e-11));
}

TEST_CASE("regular hexagon with unit supports has V_{-1} = 3 exactly") {
    const Polytope H = testutil::regular_polygon(6);
    const QuadratureRule rule = build_rule(2, 0, H);
    // V_{-1}(P) is half the perimeter of the polar body. The polar here is
    // the hexagon with vertices on the unit circle: perimeter 6.
    CHECK(dual_volume(H, -1.0, rule) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("3D dual volumes: cube and octahedron reference values") {
    // The geodesic rule converges at second order; level 4 lands within
    // about 2.5e-4 relative on these bodies, so the gate is 5e-4.
    const Polytope C = testutil::unit_cube();
    const QuadratureRule rc = build_rule(3, 4, C);
    CHECK(dual_volume(C, -1.0, rc) == doctest::Approx(3.481679005468413).epsilon(5e-4));
    CHECK(dual_volume(C, -2.0, rc) == doctest::Approx(2.935864119434466).epsilon(5e-4));

    const Polytope O = testutil::unit_octahedron();
    const QuadratureRule ro = build_rule(3, 4, O);
    CHECK(dual_volume(O, -1.0, ro) == doctest::Approx(2 * kPi).epsilon(5e-4));

    // One level up cuts the error by about 4x, pinning the convergence order.
    const double e4 = std::fabs(dual_volume(C, -1.0, rc) - 3.481679005468413);
    const double e5 = std::fabs(dual_volume(C, -1.0, build_rule(3, 5, C)) - 3.481679005468413);
    CHECK(e5 < e4 / 2.5);
    CHECK(e5 < 3e-4);
}

TEST_CASE("dual volume is homogeneous of degree q, normalized of degree 1") {
    for (const uint64_t seed : {71u, 72u}) {
        const Polytope P = testutil::random_active_body(2, 8, seed);
        const Polytope P3 = scale_body(P, 3.0);
        const QuadratureRule rule = build_rule(2, 0, P);
        for (const double q : {-0.5, -1.0, -3.5}) {
            const double lhs = dual_volume(P3, q, rule);
            const double rhs = std::pow(3.0, q) * dual_volume(P, q, rule);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            CHECK(normalized_dual_volume(P3, q, rule) ==
                  doctest::Approx(3.0 * normalized_dual_volume(P, q, rule)).epsilon(1e-12));
        }
        CHECK(normalized_dual_volume(P3, 0.0, rule) ==
              doctest::Approx(3.0 * normalized_dual_volume(P, 0.0, rule)).epsilon(1e-12));
    }
    const Polytope C = testutil::unit_cube();
    const QuadratureRule rule = build_rule(3, 2, C);
    CHECK(dual_volume(scale_body(C, 2.0), -1.5, rule) ==
          doctest::Approx(std::pow(2.0, -1.5) * dual_volume(C, -1.5, rule)).epsilon(1e-12));
}

TEST_CASE("dual curvature masses are homogeneous of degree q") {
    const Polytope P = testutil::random_active_body(2, 6, 81);
    const QuadratureRule rule = build_rule(2, 0, P);
    const DualCurvature a = dual_curvature(P, -2.0, rule);
    const DualCurvature b = dual_curvature(scale_body(P, 1.7), -2.0, rule);
    const double s = std::pow(1.7, -2.0);
    for (size_t i = 0; i < a.masses.size(); ++i)
        CHECK(b.masses[i] == doctest::Approx(s * a.masses[i]).epsilon(1e-12));
}

TEST_CASE("inactive facets carry zero dual curvature mass") {
    std::vector<Direction> normals = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}};
    std::vector<double> h = {1, 1, 1, 1, 1.6}; // 1.6 > sqrt(2): dominated
    const Polytope P(2, normals, h);
    REQUIRE(!P.facet_active(4));
    const QuadratureRule rule = build_rule(2, 0, P);
    const DualCurvature c = dual_curvature(P, -1.0, rule);
    CHECK(c.masses[4] == 0.0);
    for (int i = 0; i < 4; ++i)
        CHECK(c.masses[i] == doctest::Approx(0.7071067811865475244).epsilon(1e-13));
}

TEST_CASE("total curvature mass matches an independent finer rule") {
    const Polytope P = testutil::random_active_body(2, 9, 91);
    for (const double q : {-0.5, -1.0, -2.0, -5.0}) {
        const double coarse = dual_curvature(P, q, build_rule(2, 0, P)).total;
        const double fine = dual_volume(P, q, build_rule(2, 3, P));
        CHECK(coarse == doctest::Approx(fine).epsilon(1e-10));
    }
    // Levels 3 and 4 carry their own discretization errors (second-order
    // rule, roughly 1e-3 and 2.5e-4 relative), so they agree to about their
    // sum.
    const Polytope C = testutil::random_active_body(3, 8, 92);
    const double coarse3 = dual_curvature(C, -1.0, build_rule(3, 3, C)).total;
    const double fine3 = dual_volume(C, -1.0, build_rule(3, 4, C));
    CHECK(coarse3 == doctest::Approx(fine3).epsilon(2e-3));
}

TEST_CASE("entropy functional is scale invariant") {
    const Polytope P = testutil::random_active_body(2, 7, 101);
    const DiscreteMeasure mu = testutil::random_measure(2, 5, 102);
    const Polytope P2 = scale_body(P, 4.2);
    const double f1 = phi_functional(mu, P, -1.5, build_rule(2, 0, P));
    const double f2 = phi_functional(mu, P2, -1.5, build_rule(2, 0, P2));
    CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));
}

TEST_CASE("variational identity: log-derivative equals the measure pairing") {
    std::mt19937_64 g(rng::derive_seed(5, 0xF0));
    for (const uint64_t seed : {111u, 112u}) {
        const Polytope P = testutil::random_active_body(2, 8, seed);
        std::vector<double> gcoef(8);
        for (double& x : gcoef) x = rng::uniform(g, -1.0, 1.0);
        for (const double q : {-0.5, -1.0, -2.0}) {
            const VariationalCheck vc = variational_check(P, q, gcoef, 1e-4, 0);
            CHECK(vc.gap < 1e-6);
        }
    }
    const Polytope C = testutil::unit_cube();
    std::vector<double> gc(6);
    for (double& x : gc) x = rng::uniform(g, -1.0, 1.0);
    const VariationalCheck vc3 = variational_check(C, -1.0, gc, 1e-4, 3);
    CHECK(vc3.gap < 1e-3);
}

TEST_CASE("smooth density: disk of radius r has constant density r^q / 2") {
    SupportCurve disk;
    disk.h = [](double) { return 2.0; };
    disk.dh = [](double) { return 0.0; };
    disk.d2h = [](double) { return 0.0; };
    for (const double q : {-0.5, -1.0, -3.0})
        CHECK(smooth_density(disk, 0.7, q) ==
              doctest::Approx(std::pow(2.0, q) / 2.0).epsilon(1e-14));
}

TEST_CASE("smooth density of the 2x1 ellipse: spot values and total mass") {
    // Support function of the ellipse x^2/4 + y^2 = 1.
    SupportCurve ell;
    ell.h = [](double t) { return std::sqrt(4 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t)); };
    ell.dh = [](double t) {
        const double h = std::sqrt(4 * std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t));
        return -3 * std::sin(t) * std::cos(t) / h;
    };
    ell.d2h = [](double t) {
        const double c = std::cos(t), s = std::sin(t);
        const double h2 = 4 * c * c + s * s;
        const double h = std::sqrt(h2);
        const double dh = -3 * s * c / h;
        return (-3 * (c * c - s * s) - dh * dh) / h;
    };
    const double q = -1.0;
    CHECK(smooth_density(ell, 0.0, q) == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(smooth_density(ell, 0.5, q) == doctest::Approx(0.0818258397136751).epsilon(1e-11));
    CHECK(smooth_density(ell, 1.0, q) == doctest::Approx(0.219573975712886).epsilon(1e-11));
    CHECK(smooth_density(ell, kPi / 2, q) == doctest::Approx(2.0).epsilon(1e-12));

    // Integral of the density over [0, 2pi) is the dual volume V_q.
    std::vector<double> gx, gw;
    gauss_legendre(16, gx, gw);
    double total = 0;
    const int panels = 64;
    for (int p = 0; p < panels; ++p) {
        const double a = 2 * kPi * p / panels, b = 2 * kPi * (p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t j = 0; j < gx.size(); ++j)
            total += half * gw[j] * smooth_density(ell, mid + half * gx[j], q);
    }
    CHECK(total == doctest::Approx(2.4221120551369190496).epsilon(1e-12));
}

TEST_CASE("smooth density rejects non-convex support data") {
    SupportCurve bad;
    bad.h = [](double) { return 1.0; };
    bad.dh = [](double) { return 0.0; };
    bad.d2h = [](double) { return -2.0; }; // h'' + h < 0
    CHECK_THROWS_AS(smooth_density(bad, 0.0, -1.0), NonConvexData);
}

TEST_CASE("dimension mismatches are rejected") {
    const Polytope S = testutil::unit_square();
    const Polytope C = testutil::unit_cube();
    const QuadratureRule r3 = build_rule(3, 2, C);
    CHECK_THROWS_AS(dual_volume(S, -1.0, r3), ShapeMismatch);
    const DiscreteMeasure mu3 = testutil::random_measure(3, 5, 7);
    CHECK_THROWS_AS(phi_functional(mu3, S, -1.0, build_rule(2, 0, S)), ShapeMismatch);
    std::vector<double> g(3, 0.1);
    CHECK_THROWS_AS(variational_check(S, -1.0, g, 1e-4, 0), ShapeMismatch);
}
