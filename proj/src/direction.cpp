#include "dualmink/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hull3d.hpp"

namespace dualmink {

namespace {

constexpr double kPi = std::numbers::pi;

double norm(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

Direction::Direction(std::initializer_list<double> coords)
    : Direction(std::span<const double>(coords.begin(), coords.size())) {}

Direction::Direction(std::span<const double> coords) : c_(coords.begin(), coords.end()) {
    if (c_.size() < 2) throw Error("direction needs at least 2 coordinates");
    for (double x : c_)
        if (!std::isfinite(x)) throw Error("direction has a non-finite coordinate");
    const double n = norm(c_);
    if (n < 1e-12) throw Error("direction is (near) zero, cannot normalize");
    for (double& x : c_) x /= n;
}

double Direction::dot(const Direction& o) const { return dot(o.c_); }

double Direction::dot(std::span<const double> v) const {
    double s = 0;
    for (size_t i = 0; i < c_.size(); ++i) s += c_[i] * v[i];
    return s;
}

double Direction::angle_to(const Direction& o) const {
    // 2 asin(|u - v| / 2): exact for tiny angles where acos(dot) loses all
    // precision, and still exact near pi.
    double s = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
        const double d = c_[i] - o.c_[i];
        s += d * d;
    }
    const double half = std::min(1.0, std::sqrt(s) / 2.0);
    return 2.0 * std::asin(half);
}

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Atom> atoms)
    : dim_(dim), atoms_(std::move(atoms)), total_(0) {
    if (dim_ < 2) throw InvalidMeasure("measure dimension must be >= 2");
    if (atoms_.empty()) throw InvalidMeasure("measure has no atoms");
    for (const Atom& a : atoms_) {
        if (a.v.dim() != dim_) throw InvalidMeasure("atom dimension mismatch");
        if (!(a.w > 0) || !std::isfinite(a.w))
            throw InvalidMeasure("atom weight must be positive and finite");
        total_ += a.w;
    }
    for (size_t i = 0; i < atoms_.size(); ++i)
        for (size_t j = i + 1; j < atoms_.size(); ++j)
            if (atoms_[i].v.angle_to(atoms_[j].v) < 1e-8)
                throw InvalidMeasure("duplicate atoms (closer than 1e-8 rad)");
    if (!(total_ > 0)) throw InvalidMeasure("total mass must be positive");
}

std::vector<double> DiscreteMeasure::weights() const {
    std::vector<double> w;
    w.reserve(atoms_.size());
    for (const Atom& a : atoms_) w.push_back(a.w);
    return w;
}

// ---------------------------------------------------------------------------
// Hemisphere containment
// ---------------------------------------------------------------------------

namespace {

// n = 2: the atoms fit in a closed half-plane iff the largest circular gap
// between their angles is >= pi.
bool concentrated_2d(const std::vector<Direction>& dirs) {
    std::vector<double> ang;
    ang.reserve(dirs.size());
    for (const Direction& d : dirs) {
        double a = std::atan2(d[1], d[0]);
        if (a < 0) a += 2 * kPi;
        ang.push_back(a);
    }
    std::sort(ang.begin(), ang.end());
    double max_gap = 2 * kPi - ang.back() + ang.front();
    for (size_t i = 1; i < ang.size(); ++i) max_gap = std::max(max_gap, ang[i] - ang[i - 1]);
    return max_gap >= kPi - 1e-10;
}

// Solve one face LP: maximize t subject to u_i·v >= t for all atoms,
// v_k = sigma fixed, |v_j| <= 1 for j != k. Variables y = (v_{j != k}, t),
// so nv = dim. The optimum sits at a vertex where nv constraints are
// active; with small nv and modest m, enumerating all nv-subsets and
// keeping the best feasible solution is exact and robust.
double face_lp_max_t(int dim, const std::vector<Direction>& dirs, int k, double sigma) {
    const int nv = dim;
    const int m = static_cast<int>(dirs.size());
    const int nc = m + 2 * (dim - 1);

    // Constraint rows a·y >= b.
    std::vector<std::vector<double>> A(static_cast<size_t>(nc), std::vector<double>(nv, 0.0));
    std::vector<double> B(static_cast<size_t>(nc), 0.0);
    for (int i = 0; i < m; ++i) {
        int col = 0;
        for (int j = 0; j < dim; ++j) {
            if (j == k) continue;
            A[i][col++] = dirs[static_cast<size_t>(i)][j];
        }
        A[i][nv - 1] = -1.0;
        B[i] = -sigma * dirs[static_cast<size_t>(i)][k];
    }
    int row = m;
    for (int j = 0; j < dim - 1; ++j) {
        A[static_cast<size_t>(row)][j] = 1.0; // y_j >= -1
        B[static_cast<size_t>(row)] = -1.0;
        ++row;
        A[static_cast<size_t>(row)][j] = -1.0; // -y_j >= -1
        B[static_cast<size_t>(row)] = -1.0;
        ++row;
    }

    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> pick(static_cast<size_t>(nv));
    std::vector<double> M(static_cast<size_t>(nv * (nv + 1)));
    std::vector<double> y(static_cast<size_t>(nv));

    // Iterate all nv-subsets of the nc constraints.
    for (int j = 0; j < nv; ++j) pick[static_cast<size_t>(j)] = j;
    while (true) {
        // Solve the active set as equalities (Gaussian elimination).
        for (int r = 0; r < nv; ++r) {
            for (int c = 0; c < nv; ++c)
                M[static_cast<size_t>(r * (nv + 1) + c)] = A[static_cast<size_t>(pick[static_cast<size_t>(r)])][c];
            M[static_cast<size_t>(r * (nv + 1) + nv)] = B[static_cast<size_t>(pick[static_cast<size_t>(r)])];
        }
        bool singular = false;
        for (int c = 0; c < nv && !singular; ++c) {
            int piv = c;
            for (int r = c + 1; r < nv; ++r)
                if (std::fabs(M[static_cast<size_t>(r * (nv + 1) + c)]) >
                    std::fabs(M[static_cast<size_t>(piv * (nv + 1) + c)]))
                    piv = r;
            if (std::fabs(M[static_cast<size_t>(piv * (nv + 1) + c)]) < 1e-12) {
                singular = true;
                break;
            }
            if (piv != c)
                for (int c2 = 0; c2 <= nv; ++c2)
                    std::swap(M[static_cast<size_t>(c * (nv + 1) + c2)],
                              M[static_cast<size_t>(piv * (nv + 1) + c2)]);
            for (int r = c + 1; r < nv; ++r) {
                const double f = M[static_cast<size_t>(r * (nv + 1) + c)] /
                                 M[static_cast<size_t>(c * (nv + 1) + c)];
                for (int c2 = c; c2 <= nv; ++c2)
                    M[static_cast<size_t>(r * (nv + 1) + c2)] -=
                        f * M[static_cast<size_t>(c * (nv + 1) + c2)];
            }
        }
        if (!singular) {
            for (int r = nv - 1; r >= 0; --r) {
                double s = M[static_cast<size_t>(r * (nv + 1) + nv)];
                for (int c = r + 1; c < nv; ++c)
                    s -= M[static_cast<size_t>(r * (nv + 1) + c)] * y[static_cast<size_t>(c)];
                y[static_cast<size_t>(r)] = s / M[static_cast<size_t>(r * (nv + 1) + r)];
            }
            bool feasible = true;
            for (int i = 0; i < nc && feasible; ++i) {
                double s = 0;
                for (int c = 0; c < nv; ++c) s += A[static_cast<size_t>(i)][c] * y[static_cast<size_t>(c)];
                if (s < B[static_cast<size_t>(i)] - 1e-9 * (1.0 + std::fabs(B[static_cast<size_t>(i)])))
                    feasible = false;
            }
            if (feasible) best = std::max(best, y[static_cast<size_t>(nv - 1)]);
        }
        // Next subset.
        int pos = nv - 1;
        while (pos >= 0 && pick[static_cast<size_t>(pos)] == nc - nv + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<size_t>(pos)];
        for (int p2 = pos + 1; p2 < nv; ++p2)
            pick[static_cast<size_t>(p2)] = pick[static_cast<size_t>(p2 - 1)] + 1;
    }
    return best;
}

bool concentrated_lp(int dim, const std::vector<Direction>& dirs) {
    // A witness v != 0 with v·u_i >= 0 exists iff it exists with
    // ||v||_inf = 1, i.e. on one of the 2*dim faces of the sup-norm ball.
    const long long nc = static_cast<long long>(dirs.size()) + 2 * (dim - 1);
    long long subsets = 1;
    for (int j = 0; j < dim; ++j) subsets = subsets * (nc - j) / (j + 1);
    if (subsets * static_cast<long long>(dirs.size()) > 200000000LL)
        throw Error("hemisphere check: direction set too large for LP enumeration");
    for (int k = 0; k < dim; ++k)
        for (double sigma : {1.0, -1.0})
            if (face_lp_max_t(dim, dirs, k, sigma) >= -1e-10) return true;
    return false;
}

} // namespace

bool directions_span_positively(int dim, const std::vector<Direction>& dirs) {
    if (dirs.size() < static_cast<size_t>(dim) + 1) return false;
    if (dim == 2) return !concentrated_2d(dirs);
    if (dim == 3) {
        // Not in a closed hemisphere <=> 0 strictly inside conv{u_i};
        // read off the hull of the unit points (exact and O(m log m),
        // unlike the LP enumeration).
        std::vector<double> pts;
        pts.reserve(dirs.size() * 3);
        for (const Direction& d : dirs) {
            pts.push_back(d[0]);
            pts.push_back(d[1]);
            pts.push_back(d[2]);
        }
        return hull3d::origin_strictly_interior(pts, 1e-10);
    }
    return !concentrated_lp(dim, dirs);
}

bool hemisphere_check(const DiscreteMeasure& mu) {
    std::vector<Direction> dirs;
    dirs.reserve(static_cast<size_t>(mu.size()));
    for (const auto& a : mu.atoms()) dirs.push_back(a.v);
    return directions_span_positively(mu.dim(), dirs);
}

} // namespace dualmink
