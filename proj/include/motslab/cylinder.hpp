// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_CYLINDER_HPP
#define MOTSLAB_CYLINDER_HPP

#include <cstddef>
#include <vector>

#include "motslab/foliation.hpp"
#include "motslab/jang.hpp"
#include "motslab/numerics.hpp"

namespace motslab {

/*
   Cylinder picture of the blowup end.  Near the horizon the graph t = f(r)
   can be read as a graph over the half cylinder [z_bar, inf) x S^2:

       z = f(r)  (height),      u(z) = s(r)  (transverse distance),

   s being the parameter of a lapse foliation chart.  f' < 0 and s' > 0 make
   u strictly decreasing with du/dz = s'/f' < 0, and the two graph maps
   invert each other:

       (d_z u)(p, z) * (d_s f)(p, s)|_{s = u(z)} = 1.

   The end decays at the eigenvalue rate sqrt(lambda).  With

       C1 = sup (|u| + |u'| + |u''|) e^{sqrt(lambda) z}     (z >= z_bar)
       C2 = inf |u|  e^{sqrt(lambda) z}
       C3 = inf |u'| e^{sqrt(lambda) z}

   every sample obeys C2 e^{-sqrt(lambda) z} <= u <= C1 e^{-sqrt(lambda) z}
   and |u'| >= C3 e^{-sqrt(lambda) z}, which pins the graph slope between

       C2 / (C1 s)  <=  |d_s f|  <=  C1 / (C3 s),

   with s |d_s f| -> 1/sqrt(lambda) at the horizon.
*/

struct CylinderSample {
    real z = 0;    // height f(r)
    real u = 0;    // transverse distance s(r), positive
    real du = 0;   // du/dz, negative
    real d2u = 0;  // d^2u/dz^2
};

struct CylinderGraph {
    real lambda = 0;                      // principal eigenvalue (length^-2)
    real z_bar = 0;                       // smallest height with u <= s0
    real s0 = 0;                          // transverse cut, barrier scale
    std::vector<CylinderSample> samples;  // strictly ascending in z
};

// Reparametrize a blowup solution by height z = f.  Keeps the grid nodes
// with s(r) <= s0; z_bar solves s = s0 exactly through the chart.  The
// derivatives du/dz and d^2u/dz^2 come from the closed-form chain rule in
// (F, dF, f', f''), not from stencils.  Throws numeric_error when f fails
// to be strictly decreasing on the kept range.
CylinderGraph to_cylinder(const RadialJangSolution& sol,
                          const FoliationChart& chart, real s0 = 0.1L);

struct DecayConstants {
    real c1 = 0;             // sup (|u|+|u'|+|u''|) e^{rate_expected z}
    real c2 = 0;             // inf |u|  e^{rate_expected z}
    real c3 = 0;             // inf |u'| e^{rate_expected z}
    real c1_u = 0;           // sup |u| e^{rate_expected z}, pure-u variant
    real rate = 0;           // fitted decay rate of |u|, positive
    real rate_expected = 0;  // sqrt(lambda)
    real z_lo = 0;           // rate-fit window start (= z_bar)
    real z_hi = 0;           // rate-fit window end (= z_bar + 4 ln10 / rate)
    bool rate_flag = false;  // |rate/rate_expected - 1| > 0.05
};

// Fit the decay law on the graph.  The rate is the log-slope of |u| over
// the window [z_bar, z_bar + 4 ln10 / sqrt(lambda)]; the constants are
// sups/infs over every sample with z >= z_bar.  Throws numeric_error when
// the graph does not reach z_hi (fewer than four decades resolved).
DecayConstants fit_decay_constants(const CylinderGraph& cg);

struct GradientBoundReport {
    real lower_margin = 0;      // min of (|d_s f| - C2/(C1 s)) / (C2/(C1 s))
    real upper_margin = 0;      // min of (C1/(C3 s) - |d_s f|) / |d_s f|
    real tangential_bound = 0;  // sqrt(2) C1^2 / (C2 C3); |grad_tan f| == 0
    real s_dsf_min = 0;         // range of s |d_s f| over the window,
    real s_dsf_max = 0;         //   contained in [C2/C1, C1/C3]
    real s_dsf_horizon = 0;     // innermost value, -> 1/sqrt(lambda)
    std::size_t n_checked = 0;
    bool ok = false;            // both margins nonnegative
    real witness_r = 0;         // radius of the worst violation when !ok
};

// Check the two-sided slope bound at every grid node with s <= s0 (the
// fitted range).  A violation is reported through ok/witness_r rather than
// thrown: the margins are the result.
GradientBoundReport gradient_bounds_check(const RadialJangSolution& sol,
                                          const DecayConstants& consts,
                                          const CylinderGraph& cg);

struct FoliationCResult {
    FoliationChart chart;  // kind C: param gamma = exp(-sqrt(lambda) f)
    real alpha1 = 0;       // sup max(gamma/tau, tau/gamma) on the window
    real alpha2 = 0;       // sup max(d gamma/d tau, d tau/d gamma)
    real tau_lo = 0;       // comparability window in tau
    real tau_hi = 0;
};

// Level-set chart gamma = exp(-sqrt(lambda) f) on the solution lattice,
// with the comparability constants against the geodesic parameter tau
// taken over tau in [tau_lo, tau_hi].  Throws numeric_error when fewer
// than 32 grid nodes fall inside the window.
FoliationCResult foliation_C(const RadialJangSolution& sol, real lambda,
                             real tau_lo = 1e-6L, real tau_hi = 1e-2L);

} // namespace motslab

#endif // MOTSLAB_CYLINDER_HPP
