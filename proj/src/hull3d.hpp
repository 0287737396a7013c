#pragma once

#include <vector>

namespace dualmink::hull3d {

// Incremental 3D convex hull over a flat xyz point array. Good enough for
// the point sets this library produces (hundreds to a few thousand points
// in generic position after input validation); not a general-purpose
// robust hull.

struct Face {
    int a, b, c;               // corner point indices, outward CCW
    double nx, ny, nz, off;    // unit outward normal, plane n·x = off
};

struct Hull {
    bool ok = false;           // false when the points are (near) coplanar
    std::vector<Face> faces;
    std::vector<char> is_vertex; // per input point: referenced by a face
};

/// Build the hull. eps_rel scales all degeneracy/visibility thresholds by
/// the largest point norm.
Hull build(const std::vector<double>& pts_xyz, double eps_rel = 1e-12);

/// True iff the hull is full-dimensional and every face plane has distance
/// > tol from the origin with the origin on the inner side.
bool origin_strictly_interior(const std::vector<double>& pts_xyz, double tol);

} // namespace dualmink::hull3d
