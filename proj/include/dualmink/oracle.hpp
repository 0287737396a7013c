#pragma once

#include <cstdint>
#include <vector>

#include "dualmink/geometry.hpp"

namespace dualmink {

/// Monte Carlo estimate with its standard error. Deterministic for a
/// fixed (seed, samples) pair: sampling is chunked, each chunk draws from
/// its own derived seed, and chunks are merged in index order, so results
/// do not depend on thread count (DUALMINK_THREADS caps workers).
struct McEstimate {
    double mean = 0;
    double std_error = 0;
    int64_t samples = 0;
    uint64_t seed = 0;
};

/// Estimate the q-th dual volume: omega_n * average of rho^q over uniform
/// directions (Box-Muller over mt19937_64 draws, normalized).
McEstimate mc_dual_volume(const Polytope& P, double q, int64_t samples, uint64_t seed);

/// Stratified per-facet estimates: sample i contributes to the bucket of
/// its owning facet. Bucket means sum exactly to the mc_dual_volume mean
/// for the same (samples, seed).
std::vector<McEstimate> mc_dual_curvature(const Polytope& P, double q, int64_t samples,
                                          uint64_t seed);

/// Empirical check of the radial comparison inequalities between two
/// bodies with the same q < 0 semantics. Partition the facet normals of
/// each body by sign of h_Q1 - h_Q2 into eta1 (h1 > h2), eta2 (h1 < h2),
/// eta0 (equal within tolerance); then over sampled directions:
///   (a) u owned by an eta1 facet of Q1  =>  rho_Q1(u) > rho_Q2(u)
///   (b) u owned by an eta2 facet of Q2  =>  rho_Q1(u) < rho_Q2(u)
///   (c) u owned by an eta1 facet of Q1  =>  u's owner in Q2 is eta1 too
///   (d) some sampled u is owned by an eta1 facet of Q2 and some by an
///       eta2 facet of Q1 (both boundary sets have positive area).
struct ComparisonReport {
    bool applicable = false;   // false if eta1 or eta2 is empty
    int64_t samples = 0;
    int64_t eta1_count = 0;    // samples owned by eta1 facets of Q1
    int64_t eta2_count = 0;    // samples owned by eta2 facets of Q2
    int64_t violations_a = 0;
    int64_t violations_b = 0;
    int64_t violations_c = 0;
    double frac_d1 = 0;        // fraction owned by eta1 facets of Q2
    double frac_d2 = 0;        // fraction owned by eta2 facets of Q1
};

ComparisonReport comparison_check(const Polytope& Q1, const Polytope& Q2, int64_t samples,
                                  uint64_t seed);

/// Fill `out` (size 3*count, SoA x|y|z) with uniform directions on S^2,
/// or 2*count for dim == 2. Exposed for tests that need the exact stream.
void sample_directions(int dim, int64_t count, uint64_t seed, std::vector<double>& soa);

} // namespace dualmink
