// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>

#include "motslab/errors.hpp"
#include "motslab/numerics.hpp"

namespace motslab {

/*
   Gauss-Kronrod 7-15 pair.

     G7  = sum wg[j]  f(x[2j+1])          (embedded 7-point Gauss rule)
     K15 = sum wgk[j] f(x[j])             (15-point Kronrod extension)

   The difference |K15 - G7| is the per-panel error estimate.  All nodes and
   weights carried to 33 digits so the long double rule is exact to working
   precision.
*/

namespace gk {

// Positive-half Kronrod abscissae; the rule is symmetric about the midpoint.
inline constexpr real xgk[8] = {
    0.991455371120812639206854697526329L,
    0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L,
    0.741531185599394439863864773280788L,
    0.586087235467691130294144838258730L,
    0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L,
    0.000000000000000000000000000000000L,
};

inline constexpr real wgk[8] = {
    0.022935322010529224963732008058970L,
    0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L,
    0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L,
    0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L,
    0.209482141084727828012999174891714L,
};

// 7-point Gauss weights, paired with xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr real wg[4] = {
    0.129484966168869693270611432679082L,
    0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L,
    0.417959183673469387755102040816327L,
};

}  // namespace gk

struct PanelResult {
    real value = 0;
    real error = 0;
};

// One G7-K15 panel over [a, b].
template <class F>
PanelResult gk15_panel(F&& f, real a, real b) {
    const real c = (a + b) / 2;
    const real h = (b - a) / 2;

    const real fc = f(c);
    real kronrod = gk::wgk[7] * fc;
    real gauss = gk::wg[3] * fc;

    for (int j = 0; j < 7; ++j) {
        const real dx = h * gk::xgk[j];
        const real fsum = f(c - dx) + f(c + dx);
        kronrod += gk::wgk[j] * fsum;
        if (j % 2 == 1) gauss += gk::wg[j / 2] * fsum;
    }
    PanelResult out;
    out.value = kronrod * h;
    out.error = std::abs((kronrod - gauss) * h);
    return out;
}

// Adaptive bisection on the G7-K15 pair.  A panel is accepted when its
// error estimate meets max(abs_tol_share, rel_tol * |panel value|); otherwise
// it splits, each half inheriting half the absolute budget.
template <class F>
real integrate_adaptive(F&& f, real a, real b, real abs_tol, real rel_tol,
                        int max_depth = 52) {
    struct Frame {
        real a, b, abs_tol;
        int depth;
    };
    // Explicit stack; left-to-right order fixes the summation order.
    real total = 0;
    Frame stack[64];
    int top = 0;
    stack[top++] = {a, b, abs_tol, 0};
    // Depth-first with the left half processed first keeps accumulation
    // deterministic and ordered along the axis.
    while (top > 0) {
        const Frame fr = stack[--top];
        const PanelResult p = gk15_panel(f, fr.a, fr.b);
        if (p.error <= fr.abs_tol || p.error <= rel_tol * std::abs(p.value) ||
            fr.depth >= max_depth) {
            if (fr.depth >= max_depth && p.error > 64 * (fr.abs_tol + rel_tol * std::abs(p.value)))
                throw numeric_error("integrate_adaptive: panel refused to converge");
            total += p.value;
            continue;
        }
        const real mid = (fr.a + fr.b) / 2;
        // Push right first so the left half pops next (in-order traversal).
        stack[top++] = {mid, fr.b, fr.abs_tol / 2, fr.depth + 1};
        stack[top++] = {fr.a, mid, fr.abs_tol / 2, fr.depth + 1};
        if (top > 60) throw numeric_error("integrate_adaptive: stack overflow");
    }
    return total;
}

}  // namespace motslab
