#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dualmink/direction.hpp"
#include "dualmink/geometry.hpp"
#include "../../src/rng.hpp"

namespace testutil {

inline constexpr double kPi = 3.1415926535897932384626433832795;

/// Regular m-gon with all supports equal to r, first normal at angle phase.
inline dualmink::Polytope regular_polygon(int m, double r = 1.0, double phase = 0.0) {
    std::vector<dualmink::Direction> normals;
    std::vector<double> h(m, r);
    for (int i = 0; i < m; ++i) {
        const double a = phase + 2.0 * kPi * i / m;
        normals.push_back({std::cos(a), std::sin(a)});
    }
    return dualmink::Polytope(2, normals, h);
}

inline dualmink::Polytope unit_square() { return regular_polygon(4); }

/// Axis-aligned cube [-1, 1]^3 as 6 halfspaces.
inline dualmink::Polytope unit_cube() {
    std::vector<dualmink::Direction> normals = {
        {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    return dualmink::Polytope(3, normals, std::vector<double>(6, 1.0));
}

/// Octahedron |x|+|y|+|z| <= 1 (polar of the cube).
inline dualmink::Polytope unit_octahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<dualmink::Direction> normals;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) normals.push_back({sx * s, sy * s, sz * s});
    return dualmink::Polytope(3, normals, std::vector<double>(8, s));
}

/// Random direction set, uniform on the sphere, deterministic in seed.
inline std::vector<dualmink::Direction> random_directions(int dim, int m, uint64_t seed) {
    std::mt19937_64 g(dualmink::rng::derive_seed(seed, 0xD1));
    std::vector<dualmink::Direction> out;
    out.reserve(m);
    while (static_cast<int>(out.size()) < m) {
        std::vector<double> v(dim);
        double n2 = 0.0;
        for (int d = 0; d + 1 < dim + 1; d += 2) {
            double a, b;
            dualmink::rng::normal_pair(g, a, b);
            v[d] = a;
            if (d + 1 < dim) v[d + 1] = b;
        }
        for (const double x : v) n2 += x * x;
        if (n2 < 1e-12) continue;
        bool dup = false;
        dualmink::Direction cand{std::span<const double>(v)};
        for (const auto& u : out)
            if (cand.angle_to(u) < 2e-2) dup = true; // keep test bodies generic
        if (!dup) out.push_back(std::move(cand));
    }
    return out;
}

/// Random bounded body: normals resampled until they span positively,
/// supports uniform in [0.8, 1.2]. Facets need not all be active.
inline dualmink::Polytope random_body(int dim, int m, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        auto dirs = random_directions(dim, m, dualmink::rng::derive_seed(seed, attempt));
        if (!dualmink::directions_span_positively(dim, dirs)) continue;
        std::mt19937_64 g(dualmink::rng::derive_seed(seed, attempt + 0x1000));
        std::vector<double> h(m);
        for (double& x : h) x = dualmink::rng::uniform(g, 0.8, 1.2);
        try {
            return dualmink::Polytope(dim, dirs, h);
        } catch (const dualmink::Error&) {
            continue; // degenerate draw; next attempt
        }
    }
}

/// Random body with every facet active (used by round-trip style tests).
inline dualmink::Polytope random_active_body(int dim, int m, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        dualmink::Polytope P = random_body(dim, m, dualmink::rng::derive_seed(seed, attempt));
        if (P.active_facet_count() == P.facet_count()) return P;
    }
}

/// Random measure passing the hemisphere check, weights in [0.5, 1.5).
inline dualmink::DiscreteMeasure random_measure(int dim, int m, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        auto dirs = random_directions(dim, m, dualmink::rng::derive_seed(seed, attempt ^ 0xA5));
        std::mt19937_64 g(dualmink::rng::derive_seed(seed, attempt + 0x2000));
        std::vector<dualmink::DiscreteMeasure::Atom> atoms;
        for (auto& d : dirs) atoms.push_back({d, dualmink::rng::uniform(g, 0.5, 1.5)});
        dualmink::DiscreteMeasure mu(dim, atoms);
        if (dualmink::hemisphere_check(mu)) return mu;
    }
}

} // namespace testutil
