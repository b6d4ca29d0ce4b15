// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#ifndef MOTSLAB_PENROSE_HPP
#define MOTSLAB_PENROSE_HPP

#include <vector>

#include "motslab/jang.hpp"
#include "motslab/radial_data.hpp"

namespace motslab {

/*
   Mass-bound pipeline on the Jang slice.  Per leaf radius r:

       C_r     = 4 - (Hbar - q(e3bar)) sqrt(area/pi)        (= 4 - 2r(Hbar - q))
       sigma_r = sqrt(area/pi) * inf |df|^2_{L2(M_r)} / |f|^2_{L2(S_r)}
               = 2 / (r * Integral_r^inf sqrt(gbar_rr(x))/x^2 dx)
       theta_r = (sigma_r C_r) / (2 (C_r + sigma_r)) * sqrt(area / |Sigma|_g)

   and the certified bound is  m >= theta * sqrt(|Sigma|_g / 16 pi)  with
   theta the supremum of theta_r over the admissible rows, provided one of

       condition 1:  lambda C1^2/C3^2 (1 + 2 C1^4 / (C2^2 C3^2)) < 4
       condition 2:  sup |q| near the horizon < 2 sqrt(lambda)

   holds.  The capacity infimum is realized by the radial harmonic profile
   f(x) proportional to Integral_x^inf sqrt(gbar_rr)/x^2, which is also the
   quantity the quadrature computes.
*/

struct PenroseRow {
    real r = 0;
    real C = 0;
    real sigma = 0;
    real theta = 0;
    bool admissible = false;  // C > 0
};

struct ConditionReport {
    real cond1_value = 0;  // left side of condition 1, compared against 4
    bool cond1_holds = false;
    real sup_q = 0;        // sup |q(e3bar)| over the near-horizon scan
    real threshold = 0;    // 2 sqrt(lambda)
    bool cond2_holds = false;
};

struct PenroseReport {
    std::vector<PenroseRow> rows;
    ConditionReport conditions;
    real theta = 0;       // sup of theta over admissible rows
    real mass_bound = 0;  // theta * sqrt(|Sigma|_g / 16 pi)
    real adm = 0;         // fitted ADM mass of the data
};

struct MassBound {
    real theta = 0;
    real bound = 0;
    real adm = 0;
    real slack = 0;  // adm - bound
};

// C_r at radius r.  Throws when r is outside the solution grid.
real c_coefficient(const RadialInitialData& data, const RadialJangSolution& sol,
                   real r);

// sigma at r0 via the capacity integral of the slice metric; the improper
// integral is split into a log-substituted near piece (the integrand grows
// like 1/(x - r_h) toward the horizon) and a 1/x-substituted tail.  Throws
// when r0 is at or below the horizon radius (the integral diverges there)
// or below the solution grid.
real capacity_sigma(const RadialJangSolution& sol, real r0);

// theta_r at radius r.  Throws when C_r <= 0 (inadmissible row).
real theta_row(const RadialInitialData& data, const RadialJangSolution& sol,
               real r);

// Pure arithmetic on the two condition left sides.
ConditionReport check_conditions(real lambda, real c1, real c2, real c3,
                                 real sup_q);

// Rows at the given radii plus conditions (sup |q| scanned over
// r - r_h in [max(grid floor, 1e-12), 1e-3 r_h]) and the final coefficient.
// c1, c2, c3 are the fitted cylinder gradient constants.
PenroseReport build_penrose_report(const RadialInitialData& data,
                                   const RadialJangSolution& sol,
                                   const std::vector<real>& radii, real c1,
                                   real c2, real c3);

// Final bound from a report.  Throws when neither condition holds or no row
// is admissible.
MassBound mass_bound(const PenroseReport& report);

} // namespace motslab

#endif // MOTSLAB_PENROSE_HPP
