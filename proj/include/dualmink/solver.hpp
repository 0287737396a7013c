#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualmink/dual_measure.hpp"
#include "dualmink/geometry.hpp"

namespace dualmink {

struct SolverConfig {
    double q = -1.0;          // must be < 0
    double tol = 1e-6;        // residual target
    int max_iter = 5000;
    int quad_level = 0;       // 2D: sub-panels exponent; 3D: mesh level (0 -> default 4)
    int starts = 1;           // multi-start count (start 0 is h == 1)
    uint64_t seed = 1;        // seeds the start perturbations
    double step0 = 1.0;       // initial step of each line search
    double backtrack = 0.5;   // step shrink factor
    double armijo = 1e-4;     // sufficient-increase parameter
    double h_floor = 1e-10;   // hard floor on support entries
};

enum class SolverStatus { Converged, MaxIter, InvalidMeasure };

struct SolverReport {
    SolverStatus status = SolverStatus::MaxIter;
    int iterations = 0;
    double residual = 0;          // max_i |c_i - w_i| / |mu| on the returned body
    std::vector<double> phi_trace; // objective per accepted iterate, non-decreasing
    double bound_M = 0;           // polar outradius bound for this (q, |mu|, n)
    bool bound_satisfied = false;
    int start_index = 0;          // which start produced the returned body
};

std::string to_string(SolverStatus s);

/// Solve the discrete inverse problem for q < 0: find a polytope whose
/// dual curvature measure is mu. Maximizes
///   Phi(x) = -(1/|mu|) sum w_i x_i + log normalized_dual_volume([exp x])
/// over x = log h by steepest ascent with Armijo backtracking, then
/// rescales so the dual volume equals |mu|. Existence requires mu not
/// concentrated in a closed hemisphere (else status InvalidMeasure and no
/// body). With `starts` > 1 every start is run and the best residual wins.
std::optional<Polytope> solve(const DiscreteMeasure& mu, const SolverConfig& cfg,
                              SolverReport& report);

/// max_i |c_i(P) - w_i| / |mu| where c = dual_curvature(P, q, rule).
/// P's normals must match mu's atoms in order (ShapeMismatch otherwise).
double residual(const DiscreteMeasure& mu, const Polytope& P, double q,
                const QuadratureRule& rule);

/// A-priori outradius bound for the polar body when dual_volume(P, q) = c:
/// with m0 = integral of (u·v)_+^{-q} over the sphere (any fixed v),
/// M = (n c / m0)^{-1/q}; every solution's polar body fits in M B_n.
/// Returns M and whether polar(P) satisfies it (within 1e-9 relative).
double bound_check(const Polytope& P, double c, double q, bool* satisfied);

/// Run `starts` solves from perturbed initial data and report the largest
/// pairwise Hausdorff distance between the returned bodies.
double uniqueness_probe(const DiscreteMeasure& mu, const SolverConfig& cfg, int starts);

/// dual_curvature(P) -> measure (zero-mass atoms dropped) -> solve ->
/// Hausdorff distance to P. The measure's total mass equals P's dual
/// volume, so no rescaling enters and the distance isolates solver error.
double round_trip(const Polytope& P, double q, const SolverConfig& cfg);

} // namespace dualmink
