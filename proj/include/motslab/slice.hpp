// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_SLICE_HPP
#define MOTSLAB_SLICE_HPP

#include "motslab/jang.hpp"
#include "motslab/radial_data.hpp"

namespace motslab {

/*
   Geometry of the graph slice gbar = df^2 + g built over a blowup solution.
   In the radial chart the slice metric is

       gbar = (F^2 + f'^2) dr^2 + r^2 dOmega^2,

   and the graph objects are (W = sqrt(1 + |grad f|^2), |grad f| = |f'|/F)

       h      = Hess_g f / W                second fundamental form in M x R
       omega  = df / W
       q_i    = (grad^j f) (h - k)_ij / W
       Hbar   = (2 / (r F)) / W             mean curvature of the r-sphere

   The scalar curvature of the slice satisfies the identity

       Rbar = 16 pi (mu - J(omega)) + |h - k|^2 + 2 |q|^2 - 2 div q

   (norms and divergence in gbar), which this module verifies by computing
   the left side from the warped metric factor alone and the right side from
   the assembled tensors, the two sharing no intermediate quantities.
*/

struct SliceSample {
    real r = 0;
    real gbar_rr = 0;            // F^2 + f'^2
    real area = 0;               // 4 pi r^2
    real Hbar = 0;               // sphere mean curvature in the slice
    real q_e3 = 0;               // q contracted with the unit slice radial
    real Rbar = 0;               // slice scalar curvature
    real identity_residual = 0;  // left minus right of the identity above
};

// gbar_rr at radius r.  Throws when r - r_h falls outside the solution grid.
real induced_metric(const RadialInitialData& data, const RadialJangSolution& sol,
                    real r);

struct MeanCurvatureQ {
    real Hbar = 0;
    real q_e3 = 0;
};

// Hbar = H_{S_r} / W together with q(e3bar), recovered from the identity
//   Hbar - q(e3bar) = W theta_plus + tr_{S_r} k / (|grad f| + W)
// (the spherical form of the graph mean-curvature decomposition).
MeanCurvatureQ mean_curvature_and_q(const RadialInitialData& data,
                                    const RadialJangSolution& sol, real r);

// Left minus right of the scalar-curvature identity at r.  The left side
// differentiates gbar_rr with 5-point log-grid stencils; the right side
// assembles h, q, mu, J(omega) from the profiles and the solution slope.
// Throws when the stencil footprint leaves the solution grid.
real scalar_identity_residual(const RadialInitialData& data,
                              const RadialJangSolution& sol, real r);

// All of the above in one row (one solution-sampler construction).
SliceSample slice_sample(const RadialInitialData& data,
                         const RadialJangSolution& sol, real r);

} // namespace motslab

#endif // MOTSLAB_SLICE_HPP
