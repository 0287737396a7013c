#include "dualmink/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dualmink/kernels.hpp"
#include "hull3d.hpp"

namespace dualmink {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kGaussOrder = 16;

struct V3 {
    double x, y, z;
};

V3 normalize(V3 a) {
    const double n = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
    return {a.x / n, a.y / n, a.z / n};
}

// Solid angle of a spherical triangle (van Oosterom-Strackee).
double spherical_area(V3 a, V3 b, V3 c) {
    const double triple = a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
                          a.z * (b.x * c.y - b.y * c.x);
    const double ab = a.x * b.x + a.y * b.y + a.z * b.z;
    const double bc = b.x * c.x + b.y * c.y + b.z * c.z;
    const double ca = c.x * a.x + c.y * a.y + c.z * a.z;
    return std::fabs(2.0 * std::atan2(std::fabs(triple), 1.0 + ab + bc + ca));
}

// Unit icosahedron triangles, derived once from the hull of the standard
// vertex coordinates.
const std::vector<std::array<V3, 3>>& icosahedron() {
    static const std::vector<std::array<V3, 3>> tris = [] {
        const double p = (1.0 + std::sqrt(5.0)) / 2.0;
        std::vector<double> pts;
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) {
                pts.insert(pts.end(), {s1 * 1.0, s2 * p, 0.0});
                pts.insert(pts.end(), {0.0, s1 * 1.0, s2 * p});
                pts.insert(pts.end(), {s1 * p, 0.0, s2 * 1.0});
            }
        const double nrm = std::sqrt(1.0 + p * p);
        for (double& c : pts) c /= nrm;
        const hull3d::Hull hull = hull3d::build(pts);
        std::vector<std::array<V3, 3>> out;
        for (const hull3d::Face& f : hull.faces) {
            auto at = [&](int i) {
                return V3{pts[3 * static_cast<size_t>(i)], pts[3 * static_cast<size_t>(i) + 1],
                          pts[3 * static_cast<size_t>(i) + 2]};
            };
            out.push_back({at(f.a), at(f.b), at(f.c)});
        }
        return out;
    }();
    return tris;
}

int32_t owning_cells_4(const Polytope& P, const V3* dirs, int32_t* cells) {
    double ux[4], uy[4], uz[4], rho[4];
    for (int k = 0; k < 4; ++k) {
        ux[k] = dirs[k].x;
        uy[k] = dirs[k].y;
        uz[k] = dirs[k].z;
    }
    kern::active_impl().radial_cell_3d(P.normals_comp(0).data(), P.normals_comp(1).data(),
                                       P.normals_comp(2).data(), P.supports().data(),
                                       P.facet_count(), ux, uy, uz, 4, rho, cells);
    return cells[3];
}

void emit_node(QuadratureRule& rule, V3 u, double w, int32_t cell) {
    rule.ux.push_back(u.x);
    rule.uy.push_back(u.y);
    rule.uz.push_back(u.z);
    rule.w.push_back(w);
    rule.cell.push_back(cell);
}

void refine_triangle(QuadratureRule& rule, const Polytope& P, V3 a, V3 b, V3 c, int depth_left) {
    const V3 centroid = normalize({a.x + b.x + c.x, a.y + b.y + c.y, a.z + b.z + c.z});
    const V3 dirs[4] = {a, b, c, centroid};
    int32_t cells[4];
    const int32_t cc = owning_cells_4(P, dirs, cells);
    const double area = spherical_area(a, b, c);
    if (area == 0.0) return;
    if (cells[0] == cells[1] && cells[1] == cells[2] && cells[2] == cc) {
        emit_node(rule, centroid, area, cc);
        return;
    }
    if (depth_left == 0) {
        emit_node(rule, centroid, area, cc);
        rule.mixed_area += area;
        rule.depth_cap_hits += 1;
        return;
    }
    const V3 mab = normalize({a.x + b.x, a.y + b.y, a.z + b.z});
    const V3 mbc = normalize({b.x + c.x, b.y + c.y, b.z + c.z});
    const V3 mca = normalize({c.x + a.x, c.y + a.y, c.z + a.z});
    refine_triangle(rule, P, a, mab, mca, depth_left - 1);
    refine_triangle(rule, P, mab, b, mbc, depth_left - 1);
    refine_triangle(rule, P, mca, mbc, c, depth_left - 1);
    refine_triangle(rule, P, mab, mbc, mca, depth_left - 1);
}

QuadratureRule build_rule_2d(int level, const Polytope& P) {
    QuadratureRule rule;
    rule.dim = 2;
    rule.arcs = arc_decomposition(P);
    std::vector<double> gx, gw;
    gauss_legendre(kGaussOrder, gx, gw);
    const int splits = 1 << level;
    for (const Arc& arc : rule.arcs) {
        const double len = arc.theta_end - arc.theta_begin;
        for (int s = 0; s < splits; ++s) {
            const double a = arc.theta_begin + len * s / splits;
            const double b = arc.theta_begin + len * (s + 1) / splits;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int g = 0; g < kGaussOrder; ++g) {
                const double t = mid + half * gx[static_cast<size_t>(g)];
                rule.ux.push_back(std::cos(t));
                rule.uy.push_back(std::sin(t));
                rule.w.push_back(half * gw[static_cast<size_t>(g)]);
                rule.cell.push_back(arc.facet);
            }
        }
    }
    return rule;
}

QuadratureRule build_rule_3d(int level, const Polytope& P, int extra_depth) {
    QuadratureRule rule;
    rule.dim = 3;
    std::vector<std::array<V3, 3>> tris = icosahedron();
    for (int l = 0; l < level; ++l) {
        std::vector<std::array<V3, 3>> next;
        next.reserve(tris.size() * 4);
        for (const auto& t : tris) {
            const V3 a = t[0], b = t[1], c = t[2];
            const V3 mab = normalize({a.x + b.x, a.y + b.y, a.z + b.z});
            const V3 mbc = normalize({b.x + c.x, b.y + c.y, b.z + c.z});
            const V3 mca = normalize({c.x + a.x, c.y + a.y, c.z + a.z});
            next.push_back({a, mab, mca});
            next.push_back({mab, b, mbc});
            next.push_back({mca, mbc, c});
            next.push_back({mab, mbc, mca});
        }
        tris = std::move(next);
    }
    const size_t expect = tris.size(); // 20 * 4^level pure nodes minimum
    rule.ux.reserve(expect);
    rule.uy.reserve(expect);
    rule.uz.reserve(expect);
    rule.w.reserve(expect);
    rule.cell.reserve(expect);
    for (const auto& t : tris) refine_triangle(rule, P, t[0], t[1], t[2], extra_depth);
    return rule;
}

} // namespace

double QuadratureRule::node_dot(int k, const Direction& v) const {
    double s = ux[static_cast<size_t>(k)] * v[0] + uy[static_cast<size_t>(k)] * v[1];
    if (dim == 3) s += uz[static_cast<size_t>(k)] * v[2];
    return s;
}

std::vector<Arc> arc_decomposition(const Polytope& P) {
    if (P.dim() != 2) throw InvalidBody("arc decomposition is a 2D notion");
    const auto& ring = P.ring();
    const int r = static_cast<int>(ring.size());
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(r));
    // Facet ring[k] spans from the vertex it shares with ring[k-1] to the
    // vertex it shares with ring[k+1].
    for (int k = 0; k < r; ++k) {
        const double a = P.ring_vertex_angle((k + r - 1) % r);
        double b = P.ring_vertex_angle(k);
        if (b <= a) b += 2 * kPi;
        arcs.push_back(Arc{ring[static_cast<size_t>(k)], a, b});
    }
    return arcs;
}

QuadratureRule build_rule(int dim, int level, const Polytope& P, int extra_depth) {
    if (dim != P.dim()) throw ShapeMismatch("rule dimension mismatch");
    if (level < 0 || level > 24) throw Error("quadrature level out of range");
    if (extra_depth < 0 || extra_depth > 12) throw Error("adaptive depth out of range [0, 12]");
    if (dim == 2) return build_rule_2d(level, P);
    if (dim == 3) return build_rule_3d(level, P, extra_depth);
    throw InvalidBody("quadrature rules support dim 2 and 3");
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(std::span<const double>)>& f) {
    double sum = 0;
    double point[3] = {0, 0, 0};
    const int n = rule.size();
    for (int k = 0; k < n; ++k) {
        point[0] = rule.ux[static_cast<size_t>(k)];
        point[1] = rule.uy[static_cast<size_t>(k)];
        if (rule.dim == 3) point[2] = rule.uz[static_cast<size_t>(k)];
        const double val = f(std::span<const double>(point, static_cast<size_t>(rule.dim)));
        if (!std::isfinite(val)) throw NonFiniteIntegrand("integrand not finite at a node");
        sum += rule.w[static_cast<size_t>(k)] * val;
    }
    return sum;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (n + 0.5)); // Chebyshev initial guess
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P'_n(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        // Final weight from the converged node.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<size_t>(n - 1 - k)] = x;
        nodes[static_cast<size_t>(k)] = -x;
        weights[static_cast<size_t>(n - 1 - k)] = w;
        weights[static_cast<size_t>(k)] = w;
    }
}

double sphere_area(int dim) { return dim * unit_ball_volume(dim); }

double unit_ball_volume(int dim) {
    return std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

} // namespace dualmink
