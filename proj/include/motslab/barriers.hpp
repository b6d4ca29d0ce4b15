// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_BARRIERS_HPP
#define MOTSLAB_BARRIERS_HPP

#include <cstddef>
#include <vector>

#include "motslab/foliation.hpp"
#include "motslab/jang.hpp"
#include "motslab/radial_data.hpp"

namespace motslab {

/*
   Barrier families controlling the blowup rate, written in the lapse-chart
   parameter s of a horizon neighborhood.  For graphs v = phi(s) the Jang
   operator restricted to the foliation reads

       J[phi] =   phi' theta_plus / (beta Wb)
                - (1 + phi' / (beta Wb)) P
                - k_nn / Wb^2
                + phi'' / (beta^2 Wb^3),        Wb^2 = 1 + (phi'/beta)^2

   with theta_plus, k_nn, P = trk - k_nn evaluated on the leaf Sigma_s and
   beta the (constant) lapse.  Three families drive the two-sided estimate:

     w_eps(s)   = -log(s - eps)            supersolution on (eps, (1+alpha) eps]
     W(s)       iterated w_eps segments    upper bound on (0, (1+alpha) eps0]
     v_{a,gamma}(s) = (1/sqrt(lambda)) int_s^{s_ref} x^-gamma dx + a s
                                           super (gamma > 1) / sub (gamma < 1)

   Sending gamma -> 1 in the v-family bounds yields the sandwich

     f(s1) - log(s/s1)/sqrt(lambda) + a (s - s1)
         <=  f(s)  <=  f(s1) - log(s/s1)/sqrt(lambda) - a (s - s1)

   and the gradient band |d_s f| in [1/(sqrt(lambda) s) - a,
   1/(sqrt(lambda) s) + a].  Every "there exists a constant" below is realized
   as an explicit search returning a grid certificate.
*/

enum class BarrierKind { super_log, iterated_w, power_super, power_sub };

// One member of a barrier family with its validity range.  Unused parameter
// slots stay zero; validate() enforces the family-specific ranges.
struct BarrierSpec {
    BarrierKind kind = BarrierKind::super_log;
    real lambda = 0;        // principal eigenvalue (length^-2)
    real s_lo = 0;          // validity range (s_lo, s_hi]
    real s_hi = 0;
    real anchor = 0;        // vertical translation applied at s_hi
    real eps = 0;           // super_log offset
    real alpha = 0;         // super_log / iterated_w range ratio
    real d = 0;             // iterated_w contraction ratio, in (0, 1)
    real eps0 = 0;          // iterated_w base scale
    real a = 0;             // power-family linear coefficient
    real gamma = 0;         // power-family exponent

    // Throws config_error when a parameter leaves its admissible range:
    // super_log needs s_range == (eps, (1+alpha) eps]; power_super needs
    // gamma in (1, 5/4); power_sub needs gamma in (3/4, 1).
    void validate() const;
};

// w_eps(s) = -log(s - eps).  Throws config_error when s <= eps.
real w_eps(real eps, real s);

// Range ratio alpha with (1 - lambda)(1 + alpha) < 1 - lambda/2: half the
// critical value (lambda/2)/(1 - lambda) for lambda in (0, 1), and 1 when
// lambda >= 1 (the constraint is vacuous).  Throws on lambda <= 0.
real alpha_for(real lambda);

// Piecewise upper bound W built from translated w_eps segments.  Segment n
// covers s in [s_break[n+1], s_break[n]) with
//
//     W(s) = log(alpha eps_seg[n] / (s - eps_seg[n])) + w_top[n],
//
// where s_break[n] = (1+alpha) eps_seg[n], eps_seg[n] shrinks by the ratio
// (1+d alpha)/(1+alpha) per segment, and the anchor values satisfy
// w_top[n] = n log(1/d) + w_top[0] exactly.
struct IteratedBound {
    real d = 0, eps0 = 0, alpha = 0, anchor = 0;
    std::vector<real> s_break;  // descending, s_break[0] = (1+alpha) eps0
    std::vector<real> eps_seg;  // one per segment, s_break.size() - 1 of them
    std::vector<real> w_top;    // value at s_break[n]

    // Evaluate W; s must lie in (s_break.back(), s_break.front()].
    real value(real s) const;

    // Asymptotic coefficient of -log s: log(1/d) / log((1+alpha)/(1+d alpha)).
    real slope_coefficient() const;
};

// Build the iterated bound with segments covering (s_floor, (1+alpha) eps0].
// s_floor <= 0 selects the default 1e-6 * eps0.  Throws config_error when
// d or alpha is out of range.
IteratedBound build_W(real d, real eps0, real alpha, real sup_anchor,
                      real s_floor = 0);

struct VFamilyValue {
    real v = 0;    // v_{a,gamma}(s)
    real dv = 0;   // -s^-gamma / sqrt(lambda) + a
    real ddv = 0;  // gamma s^-(gamma+1) / sqrt(lambda)
};

// v_{a,gamma}(s) = (1/sqrt(lambda)) int_s^{s_ref} x^-gamma dx + a s and its
// s-derivatives.  gamma == 1 takes the log limit; values near 1 evaluate the
// power mean through expm1 so the limit is approached without cancellation.
VFamilyValue v_family_full(real a, real gamma, real lambda, real s, real s_ref);
real v_family(real a, real gamma, real lambda, real s, real s_ref);

// The foliation-restricted operator J[phi] above at parameter s, for
// derivative values vp = phi', vpp = phi''.  Sigma_s data comes from the
// chart map s -> xi and pair-precision profile evaluation, so s may sit many
// orders below the chart scale without losing the leaf geometry.
real local_jang(const RadialInitialData& data, const FoliationChart& chart,
                real s, real vp, real vpp);

// Certificate that w_eps is a supersolution: J[w_eps] < 0 on a log grid of
// 10^3 eps values in [eps0 / 10^3, eps0] times 10^2 s values per eps in
// (eps, (1+alpha) eps].  worst is the largest J found (closest to 0).
struct Eps0Certificate {
    real eps0 = 0;
    real alpha = 0;
    real worst = 0;
    real worst_eps = 0;
    real worst_s = 0;
};

// Search for eps0: start at s_max / (1 + alpha) and halve until the whole
// certificate grid has J[w_eps] < 0.  Throws numeric_error when no eps0
// down to 2^-40 of the starting scale passes.
Eps0Certificate find_eps0(const RadialInitialData& data,
                          const FoliationChart& chart, real alpha);

// Remainder control for the expansion of sigma^3 J[v_{a,gamma}], with
// sigma^2 = (a^2 + beta^2) s^2g - (2a/sqrt(lambda)) s^g + 1/lambda, g = gamma:
//
//   sigma^3 J[v] = -(beta/sqrt(lambda)) s + (beta gamma/sqrt(lambda)) s^(2g-1)
//                  - (theta_plus - lambda beta s) / (lambda sqrt(lambda))
//                  + 3 a beta s^(g+1)
//                  - (beta^2/sqrt(lambda)) (k_nn + P/2) s^2g
//                  + O(s^3g + s^(2g+1) + s^(g+2) + s^3).
//
// Returns sup over a log grid in [s_lo, s_hi] of |remainder| / s^q with
// q = min(3g, 2g+1, g+2, 3).  Leaf geometry is recovered by per-point
// quadrature inversion of the chart parameter (not table interpolation), so
// the remainder is resolved down to the rounding scale.
real expansion_check(const RadialInitialData& data, const FoliationChart& chart,
                     real a, real gamma, real s_lo = real(1e-6L),
                     real s_hi = real(1e-2L));

// Certified barrier constants.
//   a_super = -sup (5 Lambda/(4 lambda beta) + |c1| + 1) / (3 sqrt(lambda)),
//       c1  =  sup of -beta (k_nn + P/2) over the chart range
//   a_sub   =  sup (2/(3 sqrt(3 lambda))) (1 + (4/3)|c2| + Lambda/(lambda beta)),
//       c2  =  inf of the same expression
//   s2 = largest grid s with J[v_{a_super,gamma}] <= 0 on (0, s2] for all
//        sampled gamma in (1, 5/4); s3 likewise with J[v_{a_sub,gamma}] >= 0
//        for sampled gamma in (3/4, 1); s0 = min(s2, s3).
struct BarrierConstants {
    real a_super = 0;
    real s2 = 0;
    real a_sub = 0;
    real s3 = 0;
    real s0 = 0;
    real worst_super = 0;  // max J[v_{a_super,.}] on the certified grid, <= 0
    real worst_sub = 0;    // min J[v_{a_sub,.}]  on the certified grid, >= 0
};

// Compute the constants above on the chart.  Throws numeric_error, naming
// the violating (s, gamma), when the sign scan fails at every tested s.
BarrierConstants find_constants(const RadialInitialData& data,
                                const FoliationChart& chart);

// Verification of the sandwich and the gradient band on a blowup solution.
// s1 is the largest solution lattice node with parameter <= s0 / 2; margins
// are minima over strict nodes s < s1 and must come out nonnegative.
struct SandwichReport {
    real s1 = 0;
    real a = 0;                 // max(-a_super, a_sub)
    real worst_upper = 0;       // min of upper-bound slack over s < s1
    real worst_lower = 0;       // min of lower-bound slack over s < s1
    real margin_at_s1 = 0;      // both bounds meet f there; identically 0
    real worst_gradient = 0;    // min slack of the two-sided gradient band
    std::size_t n_points = 0;
};

SandwichReport sandwich_check(const RadialJangSolution& sol,
                              const BarrierConstants& consts,
                              const FoliationChart& chart);

} // namespace motslab

#endif // MOTSLAB_BARRIERS_HPP
