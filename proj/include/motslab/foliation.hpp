// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_FOLIATION_HPP
#define MOTSLAB_FOLIATION_HPP

#include "motslab/numerics.hpp"
#include "motslab/radial_data.hpp"

#include <vector>

namespace motslab {

// Foliations of a horizon neighborhood by radial spheres.
//
//   kind A (geodesic):  parameter tau(r) = int_{r_h}^{r} F(p) dp
//   kind B (lapse):     parameter s with ds = beta * dtau; on round data the
//                       lapse beta is constant and normalized to 1, so s == tau
//   kind C (level):     parameter gamma = exp(-sqrt(lambda) f), built by the
//                       cylinder module from a blowup solution
//
// The expansion of the sphere at parameter s obeys the two-sided bound
//
//   lambda*beta*s - Lambda*s^2  <=  theta_plus(Sigma_s)  <=  lambda*beta*s + Lambda*s^2
//
// for all s in (0, s_max].

enum class ChartKind { geodesic, lapse, level };

// Monotone sampled map between xi = r - r_h and the foliation parameter.
// The table is uniform in x = log(xi); values are stored as log(param).
// param_of_xi / xi_of_param interpolate with a 4-point cubic; both are
// strictly monotone on the sampled range.
struct FoliationChart {
    ChartKind kind = ChartKind::lapse;
    real r_h = 0;          // horizon radius, param -> 0 there
    real lapse = 1;        // constant lapse, min-normalized
    real lambda = 0;       // principal eigenvalue (length^-2)
    real Lambda = 0;       // quadratic expansion bound (length^-3)
    real s_max = 0;        // validity bound for the sandwich above

    real x_min = 0;        // log(xi) of the first table node
    real dx = 0;           // table spacing in log(xi)
    std::vector<real> log_param;

    bool empty() const { return log_param.size() < 4; }
    real xi_min() const;
    real xi_max() const;
    real param_min() const;
    real param_max() const;

    // Interpolated chart maps. xi (resp. param) is clamped to the sampled
    // range; relative interpolation error is O(dx^4).
    real param_of_xi(real xi) const;
    real xi_of_param(real p) const;

    // Radius-based wrappers. Subtracting r_h in plain arithmetic loses the
    // sub-ulp part of xi; prefer the xi forms within a few ulp of r_h.
    real param_of_r(real r) const { return param_of_xi(r - r_h); }
    real r_of_param(real p) const { return r_h + xi_of_param(p); }
};

// tau(r) = int_{r_h}^{r} F(p) dp with the (p - r_h)^(-1/2)-type endpoint
// handled by the substitution u = sqrt(p - r_h). Throws on r < r_h.
real geodesic_distance(const RadialInitialData& data, real r);

// Distance from the horizon to r_h + xi. Same integral as geodesic_distance
// but entered through xi, so depths below one ulp of r_h stay exact.
real tau_from_horizon(const RadialInitialData& data, real r_h, real xi);

// Single Gauss-Kronrod panel of int F over [r_h + xi_a, r_h + xi_b].
// Accurate when xi_b / xi_a is close to 1; used for cumulative tables.
real tau_segment(const RadialInitialData& data, real r_h, real xi_a, real xi_b);

// Inverse of tau_from_horizon: the xi with tau(xi) = tau_target.
real xi_at_tau(const RadialInitialData& data, real r_h, real tau_target);

// Build a kind-B chart on xi in [xi_min, xi_max], nodes_per_decade points per
// decade of xi. Table values at the nodes come from cumulative quadrature
// panels anchored at the horizon; lambda/Lambda/s_max are left for the caller.
FoliationChart make_chart(const RadialInitialData& data, real r_h,
                          real xi_lo, real xi_hi, int nodes_per_decade = 512);

// Same table on an explicitly specified lattice x_min + i*dx, i < n, so a
// caller sampling other fields on that lattice gets index-exact tau values.
FoliationChart make_chart_lattice(const RadialInitialData& data, real r_h,
                                  real x_min, real dx, std::size_t n);

// Principal eigenvalue lambda = d theta_plus / d tau at the MOTS, by
// second-order Richardson extrapolation of theta_plus(r(tau)) / tau with
// tau in {1e-3, 5e-4, 2.5e-4} * r_h. Throws when no MOTS exists or when the
// result is not strictly positive (strict stability is required).
real principal_eigenvalue(const RadialInitialData& data);

struct ExpansionBounds {
    real lambda;
    real Lambda;
};

// Smallest Lambda (within 1%) making the two-sided expansion bound hold on a
// 1e4-point log grid in s over (0, s_max]. Throws when the required Lambda
// exceeds 1e3 * lambda / s_max: the chart is too wide, shrink s_max.
ExpansionBounds expansion_bounds(const RadialInitialData& data, real s_max);

} // namespace motslab

#endif // MOTSLAB_FOLIATION_HPP
