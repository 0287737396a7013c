#pragma once

#include <span>
#include <vector>

#include "dualmink/direction.hpp"
#include "dualmink/errors.hpp"

namespace dualmink {

/// Convex polytope with the origin in its interior, stored as an
/// intersection of halfspaces { x : x·v_i <= h_i }, v_i unit, h_i > 0.
///
/// Construction requires the normals to positively span R^n (otherwise the
/// intersection is unbounded and UnboundedWulff is thrown). For n = 2 and
/// n = 3 the vertex set is enumerated and facets are flagged active
/// (touching the body in a face of full facet dimension) or inactive
/// (redundant or merely touching). Inactive facets are retained: they keep
/// their index and receive zero curvature mass downstream. For n >= 4 only
/// support/radial evaluation and Monte Carlo paths are available; vertex
/// queries throw InvalidBody.
class Polytope {
  public:
    Polytope(int dim, std::vector<Direction> normals, std::vector<double> supports);

    int dim() const { return dim_; }
    int facet_count() const { return m_; }
    int vertex_count() const;

    const std::vector<Direction>& normals() const { return normals_; }
    std::span<const double> supports() const { return h_; }
    double support_coeff(int i) const { return h_[static_cast<size_t>(i)]; }
    bool facet_active(int i) const { return active_[static_cast<size_t>(i)] != 0; }
    int active_facet_count() const;

    /// Vertex coordinates, row-major [vertex_count() x dim]. n <= 3 only.
    std::span<const double> vertices_flat() const;
    std::vector<double> vertex(int k) const;

    // SoA views consumed by the batch kernels. Component j of normal i is
    // normals_soa()[j][i]; same layout for vertices. n <= 3 only.
    const std::vector<double>& normals_comp(int j) const { return ncomp_[static_cast<size_t>(j)]; }
    const std::vector<double>& vertices_comp(int j) const { return vcomp_[static_cast<size_t>(j)]; }

    // 2D combinatorics: active facet indices in CCW order of their normal
    // angles, and the vertex angles between consecutive ring facets.
    // ring()[k] and ring()[k+1] meet at the vertex with angle
    // ring_vertex_angle(k); vertex coordinates are vertex(k).
    const std::vector<int>& ring() const;
    double ring_vertex_angle(int k) const;

  private:
    int dim_;
    int m_;
    std::vector<Direction> normals_;
    std::vector<double> h_;
    std::vector<double> ncomp_[3];
    std::vector<char> active_;
    std::vector<double> verts_;     // row-major
    std::vector<double> vcomp_[3];
    std::vector<int> ring_;         // 2D only
    std::vector<double> ring_ang_;  // 2D only, aligned with ring_

    void build_2d();
    void build_3d();
    friend Polytope scale_body(const Polytope& P, double lambda);
};

/// h_P(v) = max { v·x : x in P }, evaluated over the vertex set (n <= 3).
double support_value(const Polytope& P, const Direction& v);

/// rho_P(u) = max { r > 0 : r u in P } = min over { i : u·v_i > 0 } of
/// h_i / (u·v_i). Any dimension.
double radial_value(const Polytope& P, const Direction& u);

/// Indices of all facets attaining the radial minimum at u, smallest
/// first. Ties are detected with relative tolerance 1e-14.
std::vector<int> reverse_gauss_cell(const Polytope& P, const Direction& u);

/// Lowest-index element of reverse_gauss_cell (the owning facet of u).
int owning_facet(const Polytope& P, const Direction& u);

/// Polar body: normals are the normalized vertices of P, supports their
/// reciprocal norms. Satisfies rho_P(u) * h_{polar(P)}(u) = 1.
Polytope polar(const Polytope& P);

/// Wulff shape (aleksandrov body) of positive data f over the given
/// normals: the intersection of { x·v_i <= f_i }. Identical to the
/// Polytope constructor; provided as the named operation.
Polytope wulff_shape(int dim, std::vector<Direction> normals, std::vector<double> f);

/// Dilate by lambda > 0; combinatorics (activity, ring) are preserved.
Polytope scale_body(const Polytope& P, double lambda);

/// Hausdorff distance. Exact for n = 2 (piecewise-sinusoidal support
/// difference maximized per angular panel); for n = 3 a dense direction
/// sample is used and `resolution_out`, when non-null, receives the mesh
/// spacing of the sample in radians.
double hausdorff_distance(const Polytope& P, const Polytope& Q, double* resolution_out = nullptr);

/// sup_u |rho_P(u) - rho_Q(u)| over a dense sample (exact arcs in 2D are
/// still sampled; the radial difference is not sinusoidal per panel).
double radial_distance(const Polytope& P, const Polytope& Q);

} // namespace dualmink
