#pragma once

#include <functional>
#include <vector>

#include "dualmink/direction.hpp"
#include "dualmink/geometry.hpp"
#include "dualmink/quadrature.hpp"

namespace dualmink {

/// q-th dual volume: (1/n) * integral over S^{n-1} of rho_P^q.
/// Homogeneous of degree q. Any real q; the inverse problem downstream
/// restricts to q < 0.
double dual_volume(const Polytope& P, double q, const QuadratureRule& rule);

/// Volume-normalized dual volume:
///   q != 0: ( dual_volume / omega_n )^{1/q}
///   q == 0: exp( (1/(n omega_n)) * integral of log rho ).
/// Homogeneous of degree 1; equals r on the ball of radius r.
double normalized_dual_volume(const Polytope& P, double q, const QuadratureRule& rule);

/// Dual curvature measure of a polytope: an atom per facet, mass
///   c_i = (1/n) * integral of rho_P^q over the cell of facet i.
/// Inactive facets get zero mass. masses.sum() == total == dual_volume.
struct DualCurvature {
    double q = 0;
    std::vector<double> masses;
    double total = 0;
    /// Mass that may be binned to a neighboring facet: (1/n) * max|rho^q|
    /// over nodes * mixed_area of the rule. Zero for 2D rules.
    double rule_error = 0;
};

DualCurvature dual_curvature(const Polytope& P, double q, const QuadratureRule& rule);

/// Entropy-type objective of the inverse problem:
///   Phi(P) = -(1/|mu|) * sum w_i log h_P(v_i) + log normalized_dual_volume(P).
/// Invariant under P -> cP.
double phi_functional(const DiscreteMeasure& mu, const Polytope& P, double q,
                      const QuadratureRule& rule);

/// First-variation identity along the logarithmic family
/// h_t = h * exp(t g): d/dt log normalized_dual_volume([h_t]) at t = 0
/// equals (1/dual_volume) * sum g_i c_i. `lhs` is the centered finite
/// difference at step t, `rhs` the curvature-measure side, `gap` their
/// absolute difference.
struct VariationalCheck {
    double lhs;
    double rhs;
    double gap;
};

VariationalCheck variational_check(const Polytope& P, double q, std::span<const double> g,
                                   double t, int level);

/// Smooth-boundary density of the dual curvature measure for a planar
/// C^2 support function h(theta) with h'' + h > 0:
///   (1/2) * h * (h'^2 + h^2)^{(q-2)/2} * (h'' + h).
/// Integrating over [0, 2pi) gives the q-th dual volume.
struct SupportCurve {
    std::function<double(double)> h;
    std::function<double(double)> dh;
    std::function<double(double)> d2h;
};

double smooth_density(const SupportCurve& c, double theta, double q);

} // namespace dualmink
