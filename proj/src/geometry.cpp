#include "dualmink/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dualmink/kernels.hpp"
#include "hull3d.hpp"

namespace dualmink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}

// Spherical Fibonacci lattice: deterministic, near-uniform, spacing about
// sqrt(4 pi / n). Used for sampled 3D distances.
void fibonacci_sphere(int n, std::vector<double>& x, std::vector<double>& y,
                      std::vector<double>& z) {
    x.resize(static_cast<size_t>(n));
    y.resize(static_cast<size_t>(n));
    z.resize(static_cast<size_t>(n));
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double zz = 1.0 - (2.0 * k + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - zz * zz));
        const double ph = ga * k;
        x[static_cast<size_t>(k)] = r * std::cos(ph);
        y[static_cast<size_t>(k)] = r * std::sin(ph);
        z[static_cast<size_t>(k)] = zz;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Polytope::Polytope(int dim, std::vector<Direction> normals, std::vector<double> supports)
    : dim_(dim), m_(static_cast<int>(normals.size())), normals_(std::move(normals)),
      h_(std::move(supports)) {
    if (dim_ < 2 || dim_ > 8) throw InvalidBody("dimension must be in [2, 8]");
    if (h_.size() != normals_.size()) throw ShapeMismatch("normals/supports count mismatch");
    if (m_ < dim_ + 1) throw UnboundedWulff("fewer than dim + 1 facets cannot bound a body");
    for (const Direction& v : normals_)
        if (v.dim() != dim_) throw InvalidBody("normal dimension mismatch");
    for (double h : h_)
        if (!(h > 0) || !std::isfinite(h)) throw InvalidBody("supports must be positive finite");

    // Reject (near) duplicate normals: they make facet identity ambiguous.
    if (dim_ == 2) {
        std::vector<double> ang(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i) ang[static_cast<size_t>(i)] = wrap_angle(std::atan2(normals_[static_cast<size_t>(i)][1], normals_[static_cast<size_t>(i)][0]));
        std::vector<double> sorted = ang;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < m_; ++i) {
            const double gap = (i + 1 < m_) ? sorted[static_cast<size_t>(i) + 1] - sorted[static_cast<size_t>(i)]
                                            : sorted.front() + 2 * kPi - sorted.back();
            if (gap < 1e-9) throw InvalidBody("duplicate normals (closer than 1e-9 rad)");
        }
    } else if (m_ <= 1024) {
        for (int i = 0; i < m_; ++i)
            for (int j = i + 1; j < m_; ++j)
                if (normals_[static_cast<size_t>(i)].angle_to(normals_[static_cast<size_t>(j)]) < 1e-9)
                    throw InvalidBody("duplicate normals (closer than 1e-9 rad)");
    } else {
        // Large sets: near-duplicates coincide to ~1e-9 in every coordinate,
        // so lexicographic neighbors catch them.
        std::vector<int> order(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i) order[static_cast<size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            for (int d = 0; d < dim_; ++d) {
                if (normals_[static_cast<size_t>(a)][d] < normals_[static_cast<size_t>(b)][d]) return true;
                if (normals_[static_cast<size_t>(a)][d] > normals_[static_cast<size_t>(b)][d]) return false;
            }
            return a < b;
        });
        for (int i = 0; i + 1 < m_; ++i)
            if (normals_[static_cast<size_t>(order[static_cast<size_t>(i)])].angle_to(
                    normals_[static_cast<size_t>(order[static_cast<size_t>(i) + 1])]) < 1e-9)
                throw InvalidBody("duplicate normals (closer than 1e-9 rad)");
    }

    if (dim_ <= 3) {
        for (int d = 0; d < dim_; ++d) {
            ncomp_[static_cast<size_t>(d)].resize(static_cast<size_t>(m_));
            for (int i = 0; i < m_; ++i) ncomp_[static_cast<size_t>(d)][static_cast<size_t>(i)] = normals_[static_cast<size_t>(i)][d];
        }
    }

    active_.assign(static_cast<size_t>(m_), 0);
    if (dim_ == 2) {
        build_2d();
    } else if (dim_ == 3) {
        build_3d();
    } else {
        if (!directions_span_positively(dim_, normals_))
            throw UnboundedWulff("normals fit in a closed hemisphere");
        active_.assign(static_cast<size_t>(m_), 1); // combinatorics not computed for n >= 4
    }

    // Every vertex must satisfy every halfspace.
    if (dim_ <= 3) {
        double h_scale = 0;
        for (double h : h_) h_scale = std::max(h_scale, h);
        const int nv = vertex_count();
        for (int k = 0; k < nv; ++k) {
            const double* x = verts_.data() + static_cast<size_t>(k) * dim_;
            for (int i = 0; i < m_; ++i) {
                double d = 0;
                for (int c = 0; c < dim_; ++c) d += x[c] * normals_[static_cast<size_t>(i)][c];
                if (d > h_[static_cast<size_t>(i)] + 1e-9 * h_scale)
                    throw InvalidBody("vertex escapes a halfspace (degenerate input)");
            }
        }
    }
}

void Polytope::build_2d() {
    // Sorted normal angles; a circular gap of pi or more leaves a
    // direction unconstrained.
    std::vector<int> order(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) order[static_cast<size_t>(i)] = i;
    std::vector<double> phi(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i)
        phi[static_cast<size_t>(i)] = wrap_angle(std::atan2(normals_[static_cast<size_t>(i)][1], normals_[static_cast<size_t>(i)][0]));
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return phi[static_cast<size_t>(a)] < phi[static_cast<size_t>(b)]; });
    for (int k = 0; k < m_; ++k) {
        const double a0 = phi[static_cast<size_t>(order[static_cast<size_t>(k)])];
        const double a1 = (k + 1 < m_) ? phi[static_cast<size_t>(order[static_cast<size_t>(k) + 1])]
                                       : phi[static_cast<size_t>(order.front())] + 2 * kPi;
        if (a1 - a0 >= kPi - 1e-10) throw UnboundedWulff("normals fit in a closed half-plane");
    }

    // Facet i is active iff p_i = v_i / h_i is a vertex of conv{p}. The
    // origin is interior to conv{p} (gaps < pi), so convex position is
    // equivalent to every angularly consecutive triple turning left.
    // Remove middles of non-left triples until a clean circular pass.
    auto px = [&](int i) { return normals_[static_cast<size_t>(i)][0] / h_[static_cast<size_t>(i)]; };
    auto py = [&](int i) { return normals_[static_cast<size_t>(i)][1] / h_[static_cast<size_t>(i)]; };
    std::vector<int> ring = order;
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        size_t k = 0;
        while (k < ring.size() && ring.size() >= 3) {
            const size_t r = ring.size();
            const int a = ring[(k + r - 1) % r];
            const int b = ring[k];
            const int c = ring[(k + 1) % r];
            const double e1x = px(b) - px(a), e1y = py(b) - py(a);
            const double e2x = px(c) - px(b), e2y = py(c) - py(b);
            const double cr = e1x * e2y - e1y * e2x;
            const double tol = 1e-14 * std::sqrt((e1x * e1x + e1y * e1y) * (e2x * e2x + e2y * e2y));
            if (cr <= tol) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
                changed = true;
                if (k > 0) --k; // re-examine the predecessor triple
            } else {
                ++k;
            }
        }
    }
    if (ring.size() < 3) throw UnboundedWulff("fewer than 3 active facets");

    ring_ = std::move(ring);
    for (size_t k = 0; k < ring_.size(); ++k) active_[static_cast<size_t>(ring_[k])] = 1;

    // Vertex k joins ring[k] and ring[k+1].
    const int r = static_cast<int>(ring_.size());
    verts_.resize(static_cast<size_t>(r) * 2);
    ring_ang_.resize(static_cast<size_t>(r));
    for (int k = 0; k < r; ++k) {
        const int i = ring_[static_cast<size_t>(k)];
        const int j = ring_[static_cast<size_t>((k + 1) % r)];
        const double vix = normals_[static_cast<size_t>(i)][0], viy = normals_[static_cast<size_t>(i)][1];
        const double vjx = normals_[static_cast<size_t>(j)][0], vjy = normals_[static_cast<size_t>(j)][1];
        const double det = vix * vjy - viy * vjx;
        if (!(det > 0)) throw NonConvexData("adjacent active facets are not in CCW order");
        const double hi = h_[static_cast<size_t>(i)], hj = h_[static_cast<size_t>(j)];
        const double x = (hi * vjy - hj * viy) / det;
        const double y = (hj * vix - hi * vjx) / det;
        verts_[static_cast<size_t>(k) * 2] = x;
        verts_[static_cast<size_t>(k) * 2 + 1] = y;
        ring_ang_[static_cast<size_t>(k)] = wrap_angle(std::atan2(y, x));
    }
    vcomp_[0].resize(static_cast<size_t>(r));
    vcomp_[1].resize(static_cast<size_t>(r));
    for (int k = 0; k < r; ++k) {
        vcomp_[0][static_cast<size_t>(k)] = verts_[static_cast<size_t>(k) * 2];
        vcomp_[1][static_cast<size_t>(k)] = verts_[static_cast<size_t>(k) * 2 + 1];
    }
}

void Polytope::build_3d() {
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(m_) * 3);
    double pscale = 0;
    for (int i = 0; i < m_; ++i) {
        const double inv = 1.0 / h_[static_cast<size_t>(i)];
        pts.push_back(normals_[static_cast<size_t>(i)][0] * inv);
        pts.push_back(normals_[static_cast<size_t>(i)][1] * inv);
        pts.push_back(normals_[static_cast<size_t>(i)][2] * inv);
        pscale = std::max(pscale, inv);
    }
    const hull3d::Hull hull = hull3d::build(pts);
    if (!hull.ok) throw UnboundedWulff("normals do not positively span (degenerate polar hull)");
    for (const hull3d::Face& f : hull.faces)
        if (!(f.off > 1e-12 * pscale))
            throw UnboundedWulff("normals fit in a closed hemisphere");

    for (int i = 0; i < m_; ++i) active_[static_cast<size_t>(i)] = hull.is_vertex[static_cast<size_t>(i)];

    // One primal vertex per polar facet plane; triangulated coplanar hull
    // faces map to the same point, so cluster them.
    std::vector<double> vx, vy, vz;
    double vscale = 0;
    for (const hull3d::Face& f : hull.faces) {
        const double X = f.nx / f.off, Y = f.ny / f.off, Z = f.nz / f.off;
        vscale = std::max(vscale, std::fabs(X) + std::fabs(Y) + std::fabs(Z));
        bool found = false;
        for (size_t k = 0; k < vx.size() && !found; ++k) {
            const double dx = vx[k] - X, dy = vy[k] - Y, dz = vz[k] - Z;
            if (dx * dx + dy * dy + dz * dz <= 1e-18 * vscale * vscale) found = true;
        }
        if (!found) {
            vx.push_back(X);
            vy.push_back(Y);
            vz.push_back(Z);
        }
    }
    const int nv = static_cast<int>(vx.size());
    verts_.resize(static_cast<size_t>(nv) * 3);
    for (int k = 0; k < nv; ++k) {
        verts_[static_cast<size_t>(k) * 3] = vx[static_cast<size_t>(k)];
        verts_[static_cast<size_t>(k) * 3 + 1] = vy[static_cast<size_t>(k)];
        verts_[static_cast<size_t>(k) * 3 + 2] = vz[static_cast<size_t>(k)];
    }
    vcomp_[0] = std::move(vx);
    vcomp_[1] = std::move(vy);
    vcomp_[2] = std::move(vz);
}

// ---------------------------------------------------------------------------
// Accessors
// ---------------------------------------------------------------------------

int Polytope::vertex_count() const {
    if (dim_ > 3) throw InvalidBody("vertex enumeration unavailable for dim > 3");
    return static_cast<int>(verts_.size()) / dim_;
}

int Polytope::active_facet_count() const {
    int n = 0;
    for (char a : active_) n += a != 0;
    return n;
}

std::span<const double> Polytope::vertices_flat() const {
    if (dim_ > 3) throw InvalidBody("vertex enumeration unavailable for dim > 3");
    return verts_;
}

std::vector<double> Polytope::vertex(int k) const {
    if (dim_ > 3) throw InvalidBody("vertex enumeration unavailable for dim > 3");
    std::vector<double> x(static_cast<size_t>(dim_));
    for (int c = 0; c < dim_; ++c) x[static_cast<size_t>(c)] = verts_[static_cast<size_t>(k) * dim_ + static_cast<size_t>(c)];
    return x;
}

const std::vector<int>& Polytope::ring() const {
    if (dim_ != 2) throw InvalidBody("facet ring is a 2D notion");
    return ring_;
}

double Polytope::ring_vertex_angle(int k) const {
    if (dim_ != 2) throw InvalidBody("facet ring is a 2D notion");
    return ring_ang_[static_cast<size_t>(k)];
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

double support_value(const Polytope& P, const Direction& v) {
    if (v.dim() != P.dim()) throw ShapeMismatch("direction dimension mismatch");
    if (P.dim() > 3) throw InvalidBody("support_value needs vertices (dim <= 3)");
    const int nv = P.vertex_count();
    const auto& X = P.vertices_comp(0);
    const auto& Y = P.vertices_comp(1);
    double best = -kInf;
    if (P.dim() == 2) {
        for (int k = 0; k < nv; ++k) best = std::max(best, X[static_cast<size_t>(k)] * v[0] + Y[static_cast<size_t>(k)] * v[1]);
    } else {
        const auto& Z = P.vertices_comp(2);
        for (int k = 0; k < nv; ++k)
            best = std::max(best, X[static_cast<size_t>(k)] * v[0] + Y[static_cast<size_t>(k)] * v[1] + Z[static_cast<size_t>(k)] * v[2]);
    }
    return best;
}

double radial_value(const Polytope& P, const Direction& u) {
    if (u.dim() != P.dim()) throw ShapeMismatch("direction dimension mismatch");
    double best = kInf;
    for (int i = 0; i < P.facet_count(); ++i) {
        const double d = P.normals()[static_cast<size_t>(i)].dot(u);
        if (d > 0) {
            const double r = P.support_coeff(i) / d;
            if (r < best) best = r;
        }
    }
    if (!std::isfinite(best) || !(best > 0))
        throw InvalidBody("radial function undefined (unbounded direction)");
    return best;
}

std::vector<int> reverse_gauss_cell(const Polytope& P, const Direction& u) {
    if (u.dim() != P.dim()) throw ShapeMismatch("direction dimension mismatch");
    const double rho = radial_value(P, u);
    std::vector<int> cells;
    for (int i = 0; i < P.facet_count(); ++i) {
        const double d = P.normals()[static_cast<size_t>(i)].dot(u);
        if (d > 0 && P.support_coeff(i) / d <= rho * (1 + 1e-14)) cells.push_back(i);
    }
    return cells;
}

int owning_facet(const Polytope& P, const Direction& u) {
    return reverse_gauss_cell(P, u).front();
}

Polytope polar(const Polytope& P) {
    if (P.dim() > 3) throw InvalidBody("polar body needs vertices (dim <= 3)");
    const int nv = P.vertex_count();
    std::vector<Direction> normals;
    std::vector<double> supports;
    normals.reserve(static_cast<size_t>(nv));
    supports.reserve(static_cast<size_t>(nv));
    for (int k = 0; k < nv; ++k) {
        const std::vector<double> x = P.vertex(k);
        double n2 = 0;
        for (double c : x) n2 += c * c;
        const double nrm = std::sqrt(n2);
        normals.emplace_back(std::span<const double>(x));
        supports.push_back(1.0 / nrm);
    }
    return Polytope(P.dim(), std::move(normals), std::move(supports));
}

Polytope wulff_shape(int dim, std::vector<Direction> normals, std::vector<double> f) {
    return Polytope(dim, std::move(normals), std::move(f));
}

Polytope scale_body(const Polytope& P, double lambda) {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw InvalidBody("scale factor must be positive");
    Polytope Q = P;
    for (double& h : Q.h_) h *= lambda;
    for (double& x : Q.verts_) x *= lambda;
    for (auto& comp : Q.vcomp_)
        for (double& x : comp) x *= lambda;
    return Q;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

namespace {

// 2D support lookup: vertex k joins ring[k] and ring[k+1], and its normal
// cone spans the facet angles of those two. Sorting (facet angle of
// ring[k], k) pairs lets a binary search find the attaining vertex: the
// entry with the largest facet angle <= theta (circularly).
struct RingLookup {
    std::vector<double> ang; // sorted facet angles
    std::vector<int> vert;   // vertex index attaining on [ang[j], ang[j+1]]
};

RingLookup make_ring_lookup(const Polytope& P) {
    const auto& ring = P.ring();
    const int r = static_cast<int>(ring.size());
    std::vector<std::pair<double, int>> entries;
    entries.reserve(static_cast<size_t>(r));
    for (int k = 0; k < r; ++k) {
        const int i = ring[static_cast<size_t>(k)];
        entries.emplace_back(wrap_angle(std::atan2(P.normals()[static_cast<size_t>(i)][1], P.normals()[static_cast<size_t>(i)][0])), k);
    }
    std::sort(entries.begin(), entries.end());
    RingLookup out;
    for (const auto& [a, k] : entries) {
        out.ang.push_back(a);
        out.vert.push_back(k);
    }
    return out;
}

int attaining_vertex_2d(const RingLookup& lk, double theta) {
    const auto it = std::upper_bound(lk.ang.begin(), lk.ang.end(), theta);
    const size_t pos = (it == lk.ang.begin()) ? lk.ang.size() - 1
                                              : static_cast<size_t>(it - lk.ang.begin()) - 1;
    return lk.vert[pos];
}

double hausdorff_2d(const Polytope& P, const Polytope& Q) {
    const RingLookup la = make_ring_lookup(P);
    const RingLookup lb = make_ring_lookup(Q);
    std::vector<double> brk;
    brk.reserve(la.ang.size() + lb.ang.size());
    brk.insert(brk.end(), la.ang.begin(), la.ang.end());
    brk.insert(brk.end(), lb.ang.begin(), lb.ang.end());
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    double best = 0;
    const int nb = static_cast<int>(brk.size());
    for (int k = 0; k < nb; ++k) {
        const double a = brk[static_cast<size_t>(k)];
        const double b = (k + 1 < nb) ? brk[static_cast<size_t>(k) + 1] : brk.front() + 2 * kPi;
        const double mid = 0.5 * (a + b);
        // On [a, b] both support functions are generated by one vertex, so
        // the difference is A cos(theta) + B sin(theta).
        const int kp = attaining_vertex_2d(la, wrap_angle(mid));
        const int kq = attaining_vertex_2d(lb, wrap_angle(mid));
        const double A = P.vertices_comp(0)[static_cast<size_t>(kp)] - Q.vertices_comp(0)[static_cast<size_t>(kq)];
        const double B = P.vertices_comp(1)[static_cast<size_t>(kp)] - Q.vertices_comp(1)[static_cast<size_t>(kq)];
        auto diff = [&](double t) { return std::fabs(A * std::cos(t) + B * std::sin(t)); };
        best = std::max({best, diff(a), diff(b)});
        const double tstar = std::atan2(B, A);
        for (double cand : {tstar, tstar + kPi, tstar - kPi, tstar + 2 * kPi}) {
            if (cand >= a && cand <= b) best = std::max(best, diff(cand));
        }
    }
    return best;
}

void sample_dirs_3d(const Polytope& P, const Polytope& Q, std::vector<double>& x,
                    std::vector<double>& y, std::vector<double>& z, double* resolution) {
    const int n_mesh = 1 << 17;
    fibonacci_sphere(n_mesh, x, y, z);
    auto add_dir = [&](double a, double b, double c) {
        const double nn = std::sqrt(a * a + b * b + c * c);
        x.push_back(a / nn);
        y.push_back(b / nn);
        z.push_back(c / nn);
    };
    for (const Polytope* body : {&P, &Q}) {
        for (const Direction& v : body->normals()) add_dir(v[0], v[1], v[2]);
        const int nv = body->vertex_count();
        for (int k = 0; k < nv; ++k) {
            const std::vector<double> v = body->vertex(k);
            add_dir(v[0], v[1], v[2]);
        }
    }
    if (resolution) *resolution = std::sqrt(4 * kPi / n_mesh);
}

} // namespace

double hausdorff_distance(const Polytope& P, const Polytope& Q, double* resolution_out) {
    if (P.dim() != Q.dim()) throw ShapeMismatch("dimension mismatch");
    if (P.dim() == 2) {
        if (resolution_out) *resolution_out = 0; // exact
        return hausdorff_2d(P, Q);
    }
    if (P.dim() != 3) throw InvalidBody("hausdorff_distance supports dim 2 and 3");
    std::vector<double> x, y, z;
    sample_dirs_3d(P, Q, x, y, z, resolution_out);
    const int count = static_cast<int>(x.size());
    std::vector<double> hp(static_cast<size_t>(count)), hq(static_cast<size_t>(count));
    const auto& impl = kern::active_impl();
    impl.support_max_3d(P.vertices_comp(0).data(), P.vertices_comp(1).data(),
                        P.vertices_comp(2).data(), P.vertex_count(), x.data(), y.data(), z.data(),
                        count, hp.data());
    impl.support_max_3d(Q.vertices_comp(0).data(), Q.vertices_comp(1).data(),
                        Q.vertices_comp(2).data(), Q.vertex_count(), x.data(), y.data(), z.data(),
                        count, hq.data());
    double best = 0;
    for (int k = 0; k < count; ++k) best = std::max(best, std::fabs(hp[static_cast<size_t>(k)] - hq[static_cast<size_t>(k)]));
    return best;
}

double radial_distance(const Polytope& P, const Polytope& Q) {
    if (P.dim() != Q.dim()) throw ShapeMismatch("dimension mismatch");
    const auto& impl = kern::active_impl();
    if (P.dim() == 2) {
        std::vector<double> ang;
        const int n = 8192;
        ang.reserve(static_cast<size_t>(n) + P.ring().size() + Q.ring().size());
        for (int k = 0; k < n; ++k) ang.push_back(2 * kPi * k / n);
        for (size_t k = 0; k < P.ring().size(); ++k) ang.push_back(P.ring_vertex_angle(static_cast<int>(k)));
        for (size_t k = 0; k < Q.ring().size(); ++k) ang.push_back(Q.ring_vertex_angle(static_cast<int>(k)));
        const int count = static_cast<int>(ang.size());
        std::vector<double> ux(static_cast<size_t>(count)), uy(static_cast<size_t>(count));
        for (int k = 0; k < count; ++k) {
            ux[static_cast<size_t>(k)] = std::cos(ang[static_cast<size_t>(k)]);
            uy[static_cast<size_t>(k)] = std::sin(ang[static_cast<size_t>(k)]);
        }
        std::vector<double> rp(static_cast<size_t>(count)), rq(static_cast<size_t>(count));
        std::vector<int32_t> cp(static_cast<size_t>(count)), cq(static_cast<size_t>(count));
        impl.radial_cell_2d(P.normals_comp(0).data(), P.normals_comp(1).data(), P.supports().data(),
                            P.facet_count(), ux.data(), uy.data(), count, rp.data(), cp.data());
        impl.radial_cell_2d(Q.normals_comp(0).data(), Q.normals_comp(1).data(), Q.supports().data(),
                            Q.facet_count(), ux.data(), uy.data(), count, rq.data(), cq.data());
        double best = 0;
        for (int k = 0; k < count; ++k) best = std::max(best, std::fabs(rp[static_cast<size_t>(k)] - rq[static_cast<size_t>(k)]));
        return best;
    }
    if (P.dim() != 3) throw InvalidBody("radial_distance supports dim 2 and 3");
    std::vector<double> x, y, z;
    sample_dirs_3d(P, Q, x, y, z, nullptr);
    const int count = static_cast<int>(x.size());
    std::vector<double> rp(static_cast<size_t>(count)), rq(static_cast<size_t>(count));
    std::vector<int32_t> cp(static_cast<size_t>(count)), cq(static_cast<size_t>(count));
    impl.radial_cell_3d(P.normals_comp(0).data(), P.normals_comp(1).data(), P.normals_comp(2).data(),
                        P.supports().data(), P.facet_count(), x.data(), y.data(), z.data(), count,
                        rp.data(), cp.data());
    impl.radial_cell_3d(Q.normals_comp(0).data(), Q.normals_comp(1).data(), Q.normals_comp(2).data(),
                        Q.supports().data(), Q.facet_count(), x.data(), y.data(), z.data(), count,
                        rq.data(), cq.data());
    double best = 0;
    for (int k = 0; k < count; ++k) best = std::max(best, std::fabs(rp[static_cast<size_t>(k)] - rq[static_cast<size_t>(k)]));
    return best;
}

} // namespace dualmink
