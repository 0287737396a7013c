#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dualmink/geometry.hpp"

namespace dualmink {

/// One angular panel of a 2D decomposition: directions
/// theta in [theta_begin, theta_end] are owned by `facet`.
struct Arc {
    int facet;
    double theta_begin;
    double theta_end; // > theta_begin; panels partition [0, 2pi) mod 2pi
};

/// Spherical quadrature rule adapted to a body's radial-map cells.
/// Nodes are unit directions (SoA), weights are surface measures, and
/// cell[k] is the owning facet of node k at build time.
struct QuadratureRule {
    int dim = 0;
    std::vector<double> ux, uy, uz; // uz empty when dim == 2
    std::vector<double> w;
    std::vector<int32_t> cell;

    // 2D: the generating arcs. Integration of functions that are smooth
    // per cell is exact to Gauss-Legendre(16) accuracy per arc.
    std::vector<Arc> arcs;

    // 3D: total spherical area of triangles still straddling a cell
    // boundary when the subdivision depth cap was hit, and how many such
    // triangles remain. Bounds the mass that may sit in a neighboring
    // cell's bucket. Zero for 2D rules.
    double mixed_area = 0.0;
    int depth_cap_hits = 0;

    int size() const { return static_cast<int>(w.size()); }
    double node_dot(int k, const Direction& v) const;
};

/// Angular panels of the radial-map cells of a 2D body: one arc per active
/// facet, endpoints exactly at the vertex angles, CCW, covering [0, 2pi).
std::vector<Arc> arc_decomposition(const Polytope& P);

/// Build a rule adapted to P.
///
/// n=2: arc decomposition with a Gauss-Legendre(16) panel per arc (`level`
/// additionally splits each arc into 2^level equal sub-panels; 0 is exact
/// for the fixtures used here and the default).
///
/// n=3: icosahedral geodesic mesh with `level` uniform subdivisions;
/// triangles whose corners/centroid disagree on the owning facet are
/// split adaptively down to `extra_depth` further levels (cap per the
/// module contract: 12). Node = projected centroid, weight = spherical
/// triangle area; leftover mixed area is reported on the rule.
QuadratureRule build_rule(int dim, int level, const Polytope& P, int extra_depth = 12);

/// Sum of w_k * f(node_k). Throws NonFiniteIntegrand on NaN/inf values.
double integrate(const QuadratureRule& rule,
                 const std::function<double(std::span<const double>)>& f);

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence (deterministic, ~1e-15 accurate).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Unit-sphere surface area n * omega_n (2pi for n=2, 4pi for n=3).
double sphere_area(int dim);

/// Volume omega_n of the unit n-ball.
double unit_ball_volume(int dim);

} // namespace dualmink
