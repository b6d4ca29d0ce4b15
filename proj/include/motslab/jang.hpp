// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_JANG_HPP
#define MOTSLAB_JANG_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "motslab/foliation.hpp"
#include "motslab/numerics.hpp"
#include "motslab/radial_data.hpp"

namespace motslab {

/*
   Radial Jang operator.  A radial graph t = f(r) over the data slice, viewed
   inside the product with a flat time line, has mean curvature H[f] and
   momentum trace P[f]:

       W^2  = 1 + f'^2 / F^2
       H[f] = [ (f'' - (F'/F) f') / (F^2 + f'^2) + 2 f' / (r F^2) ] / W
       P[f] = k_nn / W^2 + k_tan

   and the equation is J[f] = H[f] - P[f] = 0.  J sees f only through f' and
   f'' (vertical translation invariance), so the blowup solver integrates the
   first-order reduction psi = f'.
*/

// J at radius r for given derivative values.  Throws when r <= r_min.
real jang_operator(const RadialInitialData& data, real r, real fp, real fpp);

// f'' solving J = 0 at r = r_h + xi, slope psi.  Pair-precision profile
// evaluation, so xi may sit far below one ulp of r_h.
real jang_fpp(const RadialInitialData& data, real r_h, real xi, real psi);

// Slope of the decaying Schwarzschild blowup solution.  For m = 1,
//   f'(r) = -sqrt(16 r / ((r-2)(r^4-16))),
// evaluated in the factored form -4 sqrt(r / ((r+2)(r^2+4))) / (r-2); the
// general mass follows from the scaling f'_m(r) = f'_1(r/m).  Throws when
// r <= 2m.
real schwarzschild_slope(real m, real r);

// A blowup solution J[f] = 0, f -> 0 at infinity, f -> +inf at the horizon.
struct RadialJangSolution {
    RadialInitialData data;
    real r_h = 0;       // outermost MOTS radius
    real lambda = 0;    // principal eigenvalue of the MOTS
    real c_far = 0;     // fitted decay coefficient: f ~ c_far / r at infinity
    real adm = 0;       // ADM mass of the data
    std::string normalization = "decay-at-infinity";

    // Node i sits at r = r_h + xi[i]; xi is exact, ascending, log-spaced.
    std::vector<real> xi, f, fp, fpp, tau;

    // Lapse chart on the same lattice, with lambda/Lambda/s_max filled in.
    FoliationChart chart;

    std::size_t size() const { return xi.size(); }
    real r_at(std::size_t i) const { return r_h + xi[i]; }
};

// Solve the blowup problem by first-order shooting.  The far-field seed is
// psi(r) = -(c/r^2)(1 + b/r) with b the ADM mass; c is bisected until the
// inward trajectory rides the separatrix into the horizon.  The near-horizon
// branch is then rebuilt by integrating upward along the separatrix (the
// attracting direction), which keeps psi accurate down to xi ~ 1e-15 r_h.
// tol bounds the acceptable Jang residual of the returned samples.
RadialJangSolution solve_blowup(const RadialInitialData& data, real r_max,
                                real tol);

// Cubic interpolation of a blowup solution between lattice nodes, in the
// variable x = log xi.  fp and tau are interpolated through their logs (both
// are signed-definite), f directly.
class SolutionSampler {
public:
    explicit SolutionSampler(const RadialJangSolution& sol);
    real f_at(real xi) const;
    real fp_at(real xi) const;   // stays negative
    real tau_at(real xi) const;
    real xi_lo() const { return std::exp(x0_); }
    real xi_hi() const {
        return std::exp(x0_ + dx_ * static_cast<real>(f_.size() - 1));
    }

private:
    real x0_ = 0, dx_ = 0;
    std::vector<real> f_, log_neg_fp_, log_tau_;
};

// Fit of the blowup law f = -(1/sqrt(lambda)) log tau + O(1) over the window
// tau in [1e-6, 1e-3].
struct BlowupRate {
    real slope = 0;      // d f / d log tau, expect -1/sqrt(lambda)
    real sup_bound = 0;  // sup |f + (1/sqrt(lambda)) log tau| on the window
    std::size_t n_points = 0;
};
BlowupRate verify_blowup_rate(const RadialJangSolution& sol,
                              const FoliationChart& chart);

// Regularized equation J[f] = t f on [r_in, r_max], f(r_in) = f_inner, with
// an outgoing-decay Robin condition at r_max.  Solved on a log-stretched
// collocation grid by continuation in the inner boundary value: the wall
// height is raised in adaptive increments, each advanced by a tangent
// predictor and corrected with pseudo-transient Newton steps under a
// row-equilibrated residual norm.
struct AuxiliarySolution {
    std::vector<real> r, f;
    real anchor = 0;        // log-grid anchor (horizon radius when present)
    real sup_tf = 0;        // sup of t |f_t|, the uniform-boundedness witness
    int newton_steps = 0;   // total corrector steps over all wall increments

    // Cubic interpolation of f at a radius inside the grid.
    real value_at(real rq) const;
};
AuxiliarySolution solve_auxiliary(const RadialInitialData& data, real t,
                                  real f_inner, real r_in, real r_max);

} // namespace motslab

#endif // MOTSLAB_JANG_HPP
