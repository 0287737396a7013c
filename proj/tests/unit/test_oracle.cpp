#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "dualmink/oracle.hpp"
#include "dualmink/dual_measure.hpp"
#include "helpers.hpp"

using namespace dualmink;

TEST_CASE("sampled directions are unit and deterministic in the seed") {
    std::vector<double> a, b;
    sample_directions(3, 1000, 42, a);
    sample_directions(3, 1000, 42, b);
    CHECK(a == b);
    for (int j = 0; j < 1000; ++j) {
        const double n2 = a[j] * a[j] + a[1000 + j] * a[1000 + j] + a[2000 + j] * a[2000 + j];
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    sample_directions(3, 1000, 43, b);
    CHECK(a != b);
}

TEST_CASE("chunked sampling: a longer stream extends a shorter one") {
    // Chunks draw from derived seeds, so the first 65536 samples agree for
    // any total count.
    const int64_t small = 65536, large = 65536 + 1000;
    std::vector<double> a, b;
    sample_directions(2, small, 7, a);
    sample_directions(2, large, 7, b);
    for (int64_t j = 0; j < small; ++j) {
        CHECK(a[j] == b[j]);
        CHECK(a[small + j] == b[large + j]);
    }
}

TEST_CASE("Monte Carlo dual volume is thread-count invariant") {
    const Polytope S = testutil::unit_square();
    setenv("DUALMINK_THREADS", "1", 1);
    const McEstimate serial = mc_dual_volume(S, -1.0, 200000, 11);
    setenv("DUALMINK_THREADS", "4", 1);
    const McEstimate parallel = mc_dual_volume(S, -1.0, 200000, 11);
    unsetenv("DUALMINK_THREADS");
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("Monte Carlo agrees with quadrature within 4 standard errors") {
    const Polytope S = testutil::unit_square();
    const McEstimate e = mc_dual_volume(S, -1.0, 200000, 5);
    CHECK(e.std_error > 0);
    CHECK(e.std_error < 0.01);
    CHECK(std::fabs(e.mean - 2.8284271247461900976) <= 4 * e.std_error);

    const Polytope C = testutil::unit_cube();
    const McEstimate ec = mc_dual_volume(C, -1.0, 200000, 6);
    CHECK(std::fabs(ec.mean - 3.481679005468413) <= 4 * ec.std_error);

    const Polytope O = testutil::unit_octahedron();
    const McEstimate eo = mc_dual_volume(O, -2.0, 200000, 8);
    const double ref = dual_volume(O, -2.0, build_rule(3, 4, O));
    CHECK(std::fabs(eo.mean - ref) <= 4 * eo.std_error + 1e-4);
}

TEST_CASE("stratified bucket means sum exactly to the volume estimate") {
    const Polytope P = testutil::random_active_body(2, 7, 900);
    const McEstimate total = mc_dual_volume(P, -1.5, 150000, 17);
    const auto buckets = mc_dual_curvature(P, -1.5, 150000, 17);
    REQUIRE(static_cast<int>(buckets.size()) == P.facet_count());
    double s = 0;
    for (const auto& b : buckets) s += b.mean;
    CHECK(s == total.mean); // bit-exact by construction

    // Each bucket agrees with the quadrature mass within 4 SE.
    const DualCurvature c = dual_curvature(P, -1.5, build_rule(2, 0, P));
    for (size_t i = 0; i < buckets.size(); ++i)
        CHECK(std::fabs(buckets[i].mean - c.masses[i]) <= 4 * buckets[i].std_error + 1e-12);
}

TEST_CASE("comparison check: crossing rectangles satisfy the radial laws") {
    // Q1 = [-1,1]^2; Q2 taller and narrower, so supports cross: the +-x
    // facets of both bodies are eta1, the +-y facets eta2.
    std::vector<Direction> axes = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Polytope Q1(2, axes, {1, 1, 1, 1});
    const Polytope Q2(2, axes, {0.8, 1.25, 0.8, 1.25});
    const ComparisonReport rep = comparison_check(Q1, Q2, 100000, 3);
    CHECK(rep.applicable);
    CHECK(rep.eta1_count > 0);
    CHECK(rep.eta2_count > 0);
    CHECK(rep.violations_a == 0);
    CHECK(rep.violations_b == 0);
    CHECK(rep.violations_c == 0);
    CHECK(rep.frac_d1 > 0);
    CHECK(rep.frac_d2 > 0);
}

TEST_CASE("comparison check on random crossing pairs reports no violations") {
    for (const uint64_t seed : {21u, 22u, 23u}) {
        const Polytope A = testutil::random_active_body(2, 6, seed);
        const Polytope B = testutil::random_active_body(2, 7, seed + 50);
        const ComparisonReport rep = comparison_check(A, B, 50000, seed);
        if (!rep.applicable) continue;
        CHECK(rep.violations_a == 0);
        CHECK(rep.violations_b == 0);
        CHECK(rep.violations_c == 0);
    }
    const Polytope A3 = testutil::random_active_body(3, 8, 31);
    const Polytope B3 = testutil::random_active_body(3, 9, 77);
    const ComparisonReport rep3 = comparison_check(A3, B3, 50000, 9);
    if (rep3.applicable) {
        CHECK(rep3.violations_a == 0);
        CHECK(rep3.violations_b == 0);
        CHECK(rep3.violations_c == 0);
    }
}

TEST_CASE("comparison check: nested bodies are not applicable") {
    const Polytope S = testutil::unit_square();
    // Strictly larger copy: every support difference is one-signed.
    const ComparisonReport rep = comparison_check(S, scale_body(S, 1.0001), 1000, 1);
    CHECK(!rep.applicable);
    CHECK(rep.eta1_count == 0);
    CHECK(rep.eta2_count == 0);

    // Square vs its inscribed diamond: supports touch but never cross.
    const ComparisonReport rep2 = comparison_check(S, polar(S), 1000, 1);
    CHECK(!rep2.applicable);
}

TEST_CASE("estimates remember their sampling parameters") {
    const Polytope S = testutil::unit_square();
    const McEstimate e = mc_dual_volume(S, -1.0, 4096, 99);
    CHECK(e.samples == 4096);
    CHECK(e.seed == 99);
}
