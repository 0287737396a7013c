#include "hull3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>

namespace dualmink::hull3d {

namespace {

struct V3 {
    double x, y, z;
};

V3 at(const std::vector<double>& p, int i) {
    return {p[3 * static_cast<size_t>(i)], p[3 * static_cast<size_t>(i) + 1],
            p[3 * static_cast<size_t>(i) + 2]};
}

V3 sub(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
V3 cross(V3 a, V3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(V3 a) { return std::sqrt(dot(a, a)); }

struct LiveFace {
    int a, b, c;
    V3 n; // unit outward
    double off;
    bool alive = true;
};

// Plane through the corners, oriented away from g.
LiveFace make_face(const std::vector<double>& pts, int a, int b, int c, V3 g) {
    V3 pa = at(pts, a), pb = at(pts, b), pc = at(pts, c);
    V3 n = cross(sub(pb, pa), sub(pc, pa));
    const double ln = norm(n);
    if (ln > 0) {
        n.x /= ln;
        n.y /= ln;
        n.z /= ln;
    }
    double off = dot(n, pa);
    if (dot(n, g) > off) {
        std::swap(b, c);
        n.x = -n.x;
        n.y = -n.y;
        n.z = -n.z;
        off = -off;
    }
    return LiveFace{a, b, c, n, off, true};
}

} // namespace

Hull build(const std::vector<double>& pts, double eps_rel) {
    Hull out;
    const int n = static_cast<int>(pts.size() / 3);
    out.is_vertex.assign(static_cast<size_t>(n), 0);
    if (n < 4) return out;

    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, norm(at(pts, i)));
    if (scale == 0) return out;
    const double eps_len = eps_rel * scale;

    // Seed tetrahedron from extreme points.
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (at(pts, i).x > at(pts, i0).x) i0 = i;
    int i1 = -1;
    double best = -1;
    for (int i = 0; i < n; ++i) {
        const double d = norm(sub(at(pts, i), at(pts, i0)));
        if (d > best) {
            best = d;
            i1 = i;
        }
    }
    if (best < 100 * eps_len) return out;
    int i2 = -1;
    best = -1;
    for (int i = 0; i < n; ++i) {
        const double d = norm(cross(sub(at(pts, i), at(pts, i0)), sub(at(pts, i1), at(pts, i0))));
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best < 100 * eps_len * eps_len) return out;
    V3 seed_n = cross(sub(at(pts, i1), at(pts, i0)), sub(at(pts, i2), at(pts, i0)));
    int i3 = -1;
    best = -1;
    for (int i = 0; i < n; ++i) {
        const double d = std::fabs(dot(seed_n, sub(at(pts, i), at(pts, i0))));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best < 100 * eps_len * norm(seed_n)) return out; // coplanar set
    V3 g{(at(pts, i0).x + at(pts, i1).x + at(pts, i2).x + at(pts, i3).x) / 4,
         (at(pts, i0).y + at(pts, i1).y + at(pts, i2).y + at(pts, i3).y) / 4,
         (at(pts, i0).z + at(pts, i1).z + at(pts, i2).z + at(pts, i3).z) / 4};

    std::vector<LiveFace> faces;
    faces.push_back(make_face(pts, i0, i1, i2, g));
    faces.push_back(make_face(pts, i0, i1, i3, g));
    faces.push_back(make_face(pts, i0, i2, i3, g));
    faces.push_back(make_face(pts, i1, i2, i3, g));

    const double eps_vis = eps_len;
    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        const V3 pp = at(pts, p);
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[static_cast<size_t>(f)].alive &&
                dot(faces[static_cast<size_t>(f)].n, pp) - faces[static_cast<size_t>(f)].off > eps_vis)
                visible.push_back(f);
        if (visible.empty()) continue;

        // Horizon: directed edges of visible faces whose twin face stays.
        std::map<std::pair<int, int>, int> edge_count; // directed edge -> occurrences in visible set
        for (int f : visible) {
            const LiveFace& F = faces[static_cast<size_t>(f)];
            const std::array<std::pair<int, int>, 3> es{{{F.a, F.b}, {F.b, F.c}, {F.c, F.a}}};
            for (auto e : es) ++edge_count[e];
        }
        std::vector<std::pair<int, int>> horizon;
        for (const auto& [e, cnt] : edge_count) {
            (void)cnt;
            // An edge is on the horizon iff its reverse is not among the
            // visible faces' edges (each undirected interior edge appears
            // once forward, once reversed).
            if (edge_count.find({e.second, e.first}) == edge_count.end()) horizon.push_back(e);
        }
        for (int f : visible) faces[static_cast<size_t>(f)].alive = false;
        for (auto [ea, eb] : horizon) faces.push_back(make_face(pts, ea, eb, p, g));
    }

    out.ok = true;
    for (const LiveFace& f : faces) {
        if (!f.alive) continue;
        out.faces.push_back(Face{f.a, f.b, f.c, f.n.x, f.n.y, f.n.z, f.off});
        out.is_vertex[static_cast<size_t>(f.a)] = 1;
        out.is_vertex[static_cast<size_t>(f.b)] = 1;
        out.is_vertex[static_cast<size_t>(f.c)] = 1;
    }
    return out;
}

bool origin_strictly_interior(const std::vector<double>& pts, double tol) {
    const Hull h = build(pts);
    if (!h.ok || h.faces.empty()) return false;
    double min_off = std::numeric_limits<double>::infinity();
    for (const Face& f : h.faces) min_off = std::min(min_off, f.off);
    return min_off > tol;
}

} // namespace dualmink::hull3d
