#include "dualmink/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dualmink/errors.hpp"
#include "rng.hpp"

namespace dualmink {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// cos^p(theta) * sin^(n-2)(theta) integrated over [0, pi/2] with panels
// graded geometrically toward pi/2, where cos^p has unbounded derivatives
// for fractional p. Gauss-Legendre(16) per panel.
double cos_moment(double p, int n) {
    static std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(16, gx, gw);
    auto f = [&](double th) {
        double v = std::pow(std::cos(th), p);
        if (n > 2) v *= std::pow(std::sin(th), static_cast<double>(n - 2));
        return v;
    };
    double total = 0.0;
    double a = kPi / 2; // current distance of the panel's left end from pi/2
    for (int k = 0; k < 64; ++k) {
        const double lo = kPi / 2 - a;
        const double hi = kPi / 2 - a / 2;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (size_t j = 0; j < gx.size(); ++j) total += half * gw[j] * f(mid + half * gx[j]);
        a /= 2;
    }
    const double lo = kPi / 2 - a;
    const double mid = 0.5 * (lo + kPi / 2), half = 0.5 * (kPi / 2 - lo);
    for (size_t j = 0; j < gx.size(); ++j) total += half * gw[j] * f(mid + half * gx[j]);
    return total;
}

/// integral over S^{n-1} of (u.v)_+^p du, independent of the unit vector v.
double positive_dot_moment(int n, double p) {
    return sphere_area(n - 1) * cos_moment(p, n);
}

struct Eval {
    Polytope body;
    DualCurvature curv; // curv.total is the dual volume of `body`
    double phi = 0.0;
};

struct Problem {
    int dim = 0;
    std::vector<Direction> normals;
    std::vector<double> w;
    double W = 0.0;
    double q = 0.0;
    int level = 0;
    double log_omega = 0.0;
};

Eval evaluate(const Problem& pb, const std::vector<double>& x, int extra_depth) {
    const int m = static_cast<int>(x.size());
    std::vector<double> h(m);
    for (int i = 0; i < m; ++i) h[i] = std::exp(x[i]);
    Eval e{wulff_shape(pb.dim, pb.normals, h), {}, 0.0};
    const QuadratureRule rule = build_rule(pb.dim, pb.level, e.body, extra_depth);
    e.curv = dual_curvature(e.body, pb.q, rule);
    double lin = 0.0;
    for (int i = 0; i < m; ++i) lin += pb.w[i] * x[i];
    e.phi = -lin / pb.W + (std::log(e.curv.total) - pb.log_omega) / pb.q;
    return e;
}

// grad_i = -w_i/|mu| + c_i/Vq; its sup norm equals the residual of the
// mass-matched rescaling of `body`, so it doubles as the stopping metric.
double gradient(const Problem& pb, const Eval& e, std::vector<double>& grad) {
    const int m = static_cast<int>(pb.w.size());
    grad.resize(m);
    double resid = 0.0;
    for (int i = 0; i < m; ++i) {
        grad[i] = -pb.w[i] / pb.W + e.curv.masses[i] / e.curv.total;
        resid = std::max(resid, std::fabs(grad[i]));
    }
    return resid;
}

struct SingleResult {
    Polytope body;
    SolverReport rep;
};

SingleResult solve_single(const DiscreteMeasure& mu, const SolverConfig& cfg, int start_idx) {
    Problem pb;
    pb.dim = mu.dim();
    const int m = static_cast<int>(mu.atoms().size());
    pb.normals.reserve(m);
    pb.w.reserve(m);
    for (const auto& a : mu.atoms()) {
        pb.normals.push_back(a.v);
        pb.w.push_back(a.w);
    }
    pb.W = mu.total_mass();
    pb.q = cfg.q;
    pb.level = (pb.dim == 3 && cfg.quad_level == 0) ? 4 : cfg.quad_level;
    pb.log_omega = std::log(unit_ball_volume(pb.dim));

    const double x_floor = std::log(cfg.h_floor);
    const double x_cap = 300.0;
    std::vector<double> x(m, 0.0);
    if (start_idx > 0) {
        std::mt19937_64 g(rng::derive_seed(cfg.seed, static_cast<uint64_t>(start_idx)));
        for (int i = 0; i < m; ++i) x[i] = rng::uniform(g, -0.5, 0.5);
    }

    // 3D rules are refined adaptively; the ascent runs on a moderate depth
    // and the result is certified on the full depth, repeating the ascent
    // there in the unlikely case certification misses the tolerance.
    int work_depth = (pb.dim == 3) ? 8 : 12;
    const int full_depth = 12;

    SolverReport rep;
    rep.start_index = start_idx;
    Eval e = evaluate(pb, x, work_depth);
    std::vector<double> grad, xt;
    double resid = gradient(pb, e, grad);

    bool done = false;
    while (!done) {
        rep.phi_trace.clear();
        rep.phi_trace.push_back(e.phi);
        while (resid > cfg.tol && rep.iterations < cfg.max_iter) {
            double gnorm2 = 0.0;
            for (const double gi : grad) gnorm2 += gi * gi;
            double s = cfg.step0;
            bool accepted = false;
            while (s >= 1e-14 * cfg.step0) {
                xt = x;
                for (int i = 0; i < m; ++i)
                    xt[i] = std::clamp(x[i] + s * grad[i], x_floor, x_cap);
                std::optional<Eval> et;
                try {
                    et = evaluate(pb, xt, work_depth);
                } catch (const NonFiniteIntegrand&) {
                }
                if (et && et->phi >= e.phi + cfg.armijo * s * gnorm2) {
                    x.swap(xt);
                    e = std::move(*et);
                    accepted = true;
                    break;
                }
                s *= cfg.backtrack;
            }
            if (!accepted) break; // line search stalled at the current rule
            ++rep.iterations;
            rep.phi_trace.push_back(e.phi);
            resid = gradient(pb, e, grad);
        }
        if (pb.dim == 3 && work_depth < full_depth) {
            Eval deep = evaluate(pb, x, full_depth);
            const double deep_resid = gradient(pb, deep, grad);
            if (deep_resid > cfg.tol && rep.iterations < cfg.max_iter) {
                work_depth = full_depth; // re-run the ascent on the full rule
                e = std::move(deep);
                resid = deep_resid;
                continue;
            }
            e = std::move(deep);
            resid = deep_resid;
        }
        done = true;
    }

    // Match the measure's total mass: Vq(c P) = c^q Vq(P).
    const double lambda = std::pow(pb.W / e.curv.total, 1.0 / pb.q);
    std::vector<double> h_final(m);
    for (int i = 0; i < m; ++i) h_final[i] = lambda * std::exp(x[i]);
    SingleResult out{wulff_shape(pb.dim, pb.normals, h_final), std::move(rep)};

    const QuadratureRule cert = build_rule(pb.dim, pb.level, out.body, full_depth);
    out.rep.residual = residual(mu, out.body, pb.q, cert);
    out.rep.status = (out.rep.residual <= 10.0 * cfg.tol) ? SolverStatus::Converged
                                                          : SolverStatus::MaxIter;
    out.rep.bound_M = bound_check(out.body, pb.W, pb.q, &out.rep.bound_satisfied);
    return out;
}

} // namespace

std::string to_string(SolverStatus s) {
    switch (s) {
        case SolverStatus::Converged: return "converged";
        case SolverStatus::MaxIter: return "max_iter";
        case SolverStatus::InvalidMeasure: return "invalid_measure";
    }
    return "unknown";
}

std::optional<Polytope> solve(const DiscreteMeasure& mu, const SolverConfig& cfg,
                              SolverReport& report) {
    if (!(cfg.q < 0.0) || !std::isfinite(cfg.q))
        throw Error("dual Minkowski solve requires q < 0");
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1 || cfg.starts < 1)
        throw Error("tol must be positive, max_iter and starts at least 1");
    report = SolverReport{};
    if (!hemisphere_check(mu)) {
        report.status = SolverStatus::InvalidMeasure;
        return std::nullopt;
    }

    std::optional<SingleResult> best;
    for (int s = 0; s < cfg.starts; ++s) {
        SingleResult r = solve_single(mu, cfg, s);
        const bool better =
            !best ||
            (r.rep.status == SolverStatus::Converged &&
             best->rep.status != SolverStatus::Converged) ||
            (r.rep.status == best->rep.status && r.rep.residual < best->rep.residual);
        if (better) best = std::move(r);
    }
    report = best->rep;
    return std::move(best->body);
}

double residual(const DiscreteMeasure& mu, const Polytope& P, double q,
                const QuadratureRule& rule) {
    const auto& atoms = mu.atoms();
    if (static_cast<int>(atoms.size()) != P.facet_count() || mu.dim() != P.dim())
        throw ShapeMismatch("measure atoms and body facets must align");
    for (size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].v.angle_to(P.normals()[i]) > 1e-9)
            throw ShapeMismatch("measure atoms and body facets must align in order");
    const DualCurvature c = dual_curvature(P, q, rule);
    double out = 0.0;
    for (size_t i = 0; i < atoms.size(); ++i)
        out = std::max(out, std::fabs(c.masses[i] - atoms[i].w));
    return out / mu.total_mass();
}

double bound_check(const Polytope& P, double c, double q, bool* satisfied) {
    if (!(q < 0.0)) throw Error("outradius bound requires q < 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw Error("total mass must be positive");
    const int n = P.dim();
    const double m0 = positive_dot_moment(n, -q);
    const double M = std::pow(n * c / m0, -1.0 / q);
    if (satisfied) {
        // Polar outradius: vertices of the polar body are v_i / h_i over
        // active facets, so its max vertex norm is max 1/h_i.
        double outradius = 0.0;
        for (int i = 0; i < P.facet_count(); ++i)
            if (P.facet_active(i)) outradius = std::max(outradius, 1.0 / P.support_coeff(i));
        *satisfied = outradius <= M * (1.0 + 1e-9);
    }
    return M;
}

double uniqueness_probe(const DiscreteMeasure& mu, const SolverConfig& cfg, int starts) {
    if (starts < 2) throw Error("uniqueness probe needs at least 2 starts");
    if (!hemisphere_check(mu)) throw InvalidMeasure("measure concentrated in a hemisphere");
    std::vector<Polytope> bodies;
    bodies.reserve(starts);
    for (int s = 0; s < starts; ++s) bodies.push_back(solve_single(mu, cfg, s).body);
    double spread = 0.0;
    for (size_t a = 0; a < bodies.size(); ++a)
        for (size_t b = a + 1; b < bodies.size(); ++b)
            spread = std::max(spread, hausdorff_distance(bodies[a], bodies[b]));
    return spread;
}

double round_trip(const Polytope& P, double q, const SolverConfig& cfg) {
    const int level = (P.dim() == 3 && cfg.quad_level == 0) ? 4 : cfg.quad_level;
    const QuadratureRule rule = build_rule(P.dim(), level, P);
    const DualCurvature c = dual_curvature(P, q, rule);
    std::vector<DiscreteMeasure::Atom> atoms;
    for (int i = 0; i < P.facet_count(); ++i)
        if (c.masses[i] > 0.0) atoms.push_back({P.normals()[i], c.masses[i]});
    const DiscreteMeasure mu(P.dim(), atoms);
    SolverConfig c2 = cfg;
    c2.q = q;
    SolverReport rep;
    const auto body = solve(mu, c2, rep);
    if (!body) throw Error("round trip produced an infeasible measure");
    return hausdorff_distance(P, *body);
}

} // namespace dualmink
