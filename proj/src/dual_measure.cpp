#include "dualmink/dual_measure.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "dualmink/errors.hpp"
#include "dualmink/kernels.hpp"

namespace dualmink {

namespace {

// Radial values (and owning facets) of P at every rule node in one kernel
// batch. rho/cell are resized by the callee.
void radial_batch(const Polytope& P, const QuadratureRule& rule,
                  std::vector<double>& rho, std::vector<int32_t>& cell) {
    const int count = rule.size();
    rho.resize(count);
    cell.resize(count);
    const auto& k = kern::active_impl();
    if (P.dim() == 2) {
        k.radial_cell_2d(P.normals_comp(0).data(), P.normals_comp(1).data(),
                         P.supports().data(), P.facet_count(), rule.ux.data(),
                         rule.uy.data(), count, rho.data(), cell.data());
    } else {
        k.radial_cell_3d(P.normals_comp(0).data(), P.normals_comp(1).data(),
                         P.normals_comp(2).data(), P.supports().data(), P.facet_count(),
                         rule.ux.data(), rule.uy.data(), rule.uz.data(), count,
                         rho.data(), cell.data());
    }
}

void require_compatible(const Polytope& P, const QuadratureRule& rule) {
    if (rule.dim != P.dim())
        throw ShapeMismatch("quadrature rule dimension does not match the body");
    if (rule.size() == 0)
        throw ShapeMismatch("empty quadrature rule");
}

} // namespace

double dual_volume(const Polytope& P, double q, const QuadratureRule& rule) {
    require_compatible(P, rule);
    std::vector<double> rho;
    std::vector<int32_t> cell;
    radial_batch(P, rule, rho, cell);
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k)
        acc += rule.w[k] * std::pow(rho[k], q);
    const double out = acc / P.dim();
    if (!std::isfinite(out))
        throw NonFiniteIntegrand("dual volume integrand overflowed");
    return out;
}

double normalized_dual_volume(const Polytope& P, double q, const QuadratureRule& rule) {
    require_compatible(P, rule);
    const int n = P.dim();
    if (q != 0.0)
        return std::pow(dual_volume(P, q, rule) / unit_ball_volume(n), 1.0 / q);

    std::vector<double> rho;
    std::vector<int32_t> cell;
    radial_batch(P, rule, rho, cell);
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k)
        acc += rule.w[k] * std::log(rho[k]);
    const double out = std::exp(acc / (n * unit_ball_volume(n)));
    if (!std::isfinite(out))
        throw NonFiniteIntegrand("log-radial integrand overflowed");
    return out;
}

DualCurvature dual_curvature(const Polytope& P, double q, const QuadratureRule& rule) {
    require_compatible(P, rule);
    std::vector<double> rho;
    std::vector<int32_t> cell;
    radial_batch(P, rule, rho, cell);

    DualCurvature out;
    out.q = q;
    out.masses.assign(P.facet_count(), 0.0);
    const double inv_n = 1.0 / P.dim();
    double max_term = 0.0;
    for (int k = 0; k < rule.size(); ++k) {
        const int32_t c = cell[k];
        if (c < 0)
            throw InvalidBody("direction with no positive facet dot; body is unbounded");
        const double term = std::pow(rho[k], q);
        if (term > max_term) max_term = term;
        out.masses[c] += rule.w[k] * term * inv_n;
    }
    // Total summed from the buckets in index order so that the partition
    // identity total == sum(masses) holds exactly, not just to rounding.
    double total = 0.0;
    for (const double m : out.masses) total += m;
    out.total = total;
    if (!std::isfinite(total))
        throw NonFiniteIntegrand("dual curvature integrand overflowed");
    out.rule_error = inv_n * max_term * rule.mixed_area;
    return out;
}

double phi_functional(const DiscreteMeasure& mu, const Polytope& P, double q,
                      const QuadratureRule& rule) {
    if (mu.dim() != P.dim())
        throw ShapeMismatch("measure dimension does not match the body");
    double entropy = 0.0;
    for (const auto& a : mu.atoms()) {
        const double h = support_value(P, a.v);
        if (!(h > 0.0))
            throw InvalidBody("support value must be positive (origin interior)");
        entropy += a.w * std::log(h);
    }
    return -entropy / mu.total_mass() + std::log(normalized_dual_volume(P, q, rule));
}

VariationalCheck variational_check(const Polytope& P, double q, std::span<const double> g,
                                   double t, int level) {
    if (static_cast<int>(g.size()) != P.facet_count())
        throw ShapeMismatch("one perturbation coefficient per facet required");
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error("finite positive step required");

    const int m = P.facet_count();
    std::vector<double> hp(m), hm(m);
    for (int i = 0; i < m; ++i) {
        hp[i] = P.support_coeff(i) * std::exp(t * g[i]);
        hm[i] = P.support_coeff(i) * std::exp(-t * g[i]);
    }
    const Polytope Pp = wulff_shape(P.dim(), P.normals(), hp);
    const Polytope Pm = wulff_shape(P.dim(), P.normals(), hm);
    const QuadratureRule rp = build_rule(P.dim(), level, Pp);
    const QuadratureRule rm = build_rule(P.dim(), level, Pm);

    VariationalCheck out;
    out.lhs = (std::log(normalized_dual_volume(Pp, q, rp)) -
               std::log(normalized_dual_volume(Pm, q, rm))) /
              (2.0 * t);

    const QuadratureRule r0 = build_rule(P.dim(), level, P);
    const DualCurvature c = dual_curvature(P, q, r0);
    double pairing = 0.0;
    for (int i = 0; i < m; ++i) pairing += g[i] * c.masses[i];
    out.rhs = pairing / c.total;
    out.gap = std::fabs(out.lhs - out.rhs);
    return out;
}

double smooth_density(const SupportCurve& c, double theta, double q) {
    const double h = c.h(theta);
    const double dh = c.dh(theta);
    const double d2h = c.d2h(theta);
    if (!(h > 0.0))
        throw NonConvexData("support function must be positive");
    const double curv = d2h + h; // radius of curvature; > 0 for C^2_+ curves
    if (!(curv > 0.0))
        throw NonConvexData("h'' + h must be positive");
    const double out = 0.5 * h * std::pow(dh * dh + h * h, 0.5 * (q - 2.0)) * curv;
    if (!std::isfinite(out))
        throw NonFiniteIntegrand("smooth density overflowed");
    return out;
}

} // namespace dualmink
