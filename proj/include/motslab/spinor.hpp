// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <vector>

#include "motslab/jang.hpp"
#include "motslab/radial_data.hpp"

namespace motslab {

/*
   Radial harmonic spinor on the deformed slice.

   On a spherically symmetric 3-manifold with metric

       g = F^2(r) dr^2 + r^2 dOmega^2

   the Dirac equation D psi = 0 admits a separable solution whose radial
   profile h(r) satisfies

       r h'(r) = (F(r) - 1) h(r),
       h(r)    = exp( - Integral_r^inf (F(s) - 1)/s ds ),   h(inf) = 1,

   and |psi| = h pointwise for a unit spinor charge.  Here F is the radial
   factor of the deformed slice, sqrt(gbar_rr), which behaves like
   1/(r - r_h) at the horizon, so h ~ const * sqrt(r - r_h) there.

   Energies (the common solid-angle factor 4 pi divided out):

       dirichlet:  E(r_lo) = Integral_{r_lo}^inf r^2 h'^2 / F dr
                           = Integral (F-1)^2 h^2 / F dr            (by the ODE)
       full:       the same integrand times 3/2 (each angular frame direction
                   contributes h^2 (1 - 1/F)^2 / (4 r^2) to |grad psi|^2, and
                   the spin connection makes the two angular terms together
                   equal half the radial term), plus the boundary piece
                   r C(r) h(r)^2 / 2 which vanishes in the horizon limit.

   The r_lo -> r_h limits converge linearly in r_lo - r_h and are reported by
   Richardson extrapolation over a geometric ladder of offsets.
*/

struct RadialSpinorProfile {
    real r_h = 0;
    std::vector<real> r;        // sample radii, uniform in v = ln(r - r_h)
    std::vector<real> h;        // harmonic profile, increasing, h -> 1 at inf
    std::vector<real> F_slice;  // sqrt(gbar_rr) at the samples
    // Interpolation state: v-grid descriptor and log h cache.
    real v0 = 0;
    real dv = 0;
    std::vector<real> log_h;
    // Energy contribution of the far field beyond the grid top, fixed at
    // construction where the solution is available.
    real tail_energy = 0;
};

struct SpinorSample {
    real r = 0;
    real h = 0;
    real hprime = 0;
    real integrand_dirichlet = 0;  // (F-1)^2 h^2 / F
    real integrand_full = 0;       // 3/2 of the above (interior density)
};

// Builds h and the slice factor on a log-offset grid spanning the solution.
RadialSpinorProfile h_profile(const RadialInitialData& data,
                              const RadialJangSolution& sol,
                              std::size_t n_samples = 4097);

// Interpolated accessors; throw for radii outside the profile grid.
real h_at(const RadialSpinorProfile& profile, real r);
real slice_factor_at(const RadialSpinorProfile& profile, real r);
real hprime_at(const RadialSpinorProfile& profile, real r);

SpinorSample spinor_sample(const RadialSpinorProfile& profile, real r);

// Eigenvalue of the boundary Dirac operator on the round sphere {r = r0},
// equal to the extremal bound -2 sqrt(pi / area).
real boundary_dirac_eigenvalue(real r0);

// Integral_{r_lo}^inf r^2 h'^2 / F dr, tail included by inversion.
real dirichlet_energy(const RadialSpinorProfile& profile, real r_lo);

// Horizon limit of dirichlet_energy over offsets (r_h/2) * {1e-4,1e-5,1e-6}.
real dirichlet_energy_limit(const RadialSpinorProfile& profile);

// Horizon limit of the full spinor energy (interior 3/2 density plus the
// boundary term r C h^2 / 2), divided by 4 pi; same extrapolation ladder.
real full_spinor_energy(const RadialInitialData& data,
                        const RadialJangSolution& sol,
                        const RadialSpinorProfile& profile);

}  // namespace motslab
