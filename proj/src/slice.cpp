// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/slice.hpp"

#include <cmath>

namespace motslab {

namespace {

/*
   All tensors live in the coordinate frame of g = F^2 dr^2 + r^2 dOmega^2.
   With f' < 0 the graph quantities at radius r are

       G = |f'| / F                 W = sqrt(1 + G^2)
       A = gbar_rr = F^2 + f'^2     (so sqrt(A) = F W)

       (Hess f)_rr        = f'' - (F'/F) f'
       (Hess f)_thth      = (r / F^2) f'            (coordinate component)
       k_rr = knn F^2     k_thth = (ktan / 2) r^2   (ktan = full tangential trace)

   The second derivative f'' is recovered from the Jang relation itself
   (jang_fpp), which is exact along a Jang solution and avoids stacking a
   second numerical derivative on the sampled slope.
*/
struct GraphPoint {
    real r = 0;
    real xi = 0;
    ProfileValues pv;
    real fp = 0;
    real W = 0;
    real A = 0;
};

GraphPoint point_at(const RadialInitialData& data, const SolutionSampler& samp,
                    real r_h, real r) {
    const real xi = r - r_h;
    if (!(xi >= samp.xi_lo()) || !(xi <= samp.xi_hi()))
        throw error("slice: radius outside the solution grid");
    GraphPoint p;
    p.r = r;
    p.xi = xi;
    p.pv = profiles_at(data, r_h, xi);
    p.fp = samp.fp_at(xi);
    p.W = std::hypot(real(1), p.fp / p.pv.F);
    p.A = p.pv.F * p.pv.F + p.fp * p.fp;
    return p;
}

MeanCurvatureQ curvature_q_of(const GraphPoint& p) {
    // Hbar - q(e3bar) = W H_{S_r} + G tr_{S_r} k, the spherical form of the
    // graph decomposition; with theta_plus = H_{S_r} + ktan and the exact
    // relation W - 1/(G + W) = G this is W theta_plus - ktan/(G + W), the
    // form whose theta_plus factor carries the near-horizon smallness.
    MeanCurvatureQ out;
    out.Hbar = 2 / (p.r * std::sqrt(p.A));
    const real theta = p.pv.ktan + 2 / (p.r * p.pv.F);
    const real G = -p.fp / p.pv.F;
    out.q_e3 = out.Hbar - p.W * theta + p.pv.ktan / (G + p.W);
    return out;
}

// (h - k)_rr, assembled component-wise; shared by q and |h - k|^2.
real deficit_rr(const RadialInitialData& data, const GraphPoint& p, real r_h) {
    const real fpp = jang_fpp(data, r_h, p.xi, p.fp);
    const real hess_rr = fpp - (p.pv.dF / p.pv.F) * p.fp;
    return hess_rr / p.W - p.pv.knn * p.pv.F * p.pv.F;
}

// q(e3bar) from the assembled tensor: q_r = (f'/F^2)(h-k)_rr / W, then
// contracted with the gbar-unit radial e3bar = A^{-1/2} d_r.
real q_e3_assembled(const RadialInitialData& data, const GraphPoint& p,
                    real r_h) {
    const real F2 = p.pv.F * p.pv.F;
    return p.fp * deficit_rr(data, p, r_h) / (F2 * p.W * std::sqrt(p.A));
}

// Right side of the identity, 16 pi (mu - J(omega)) + |h-k|^2 + 2|q|^2 - 2 div q,
// with div q supplied by the caller (it needs a derivative across neighbors).
real identity_right(const RadialInitialData& data, const GraphPoint& p,
                    real r_h, real div_q) {
    const real r = p.r;
    const real F = p.pv.F;
    const real F2 = F * F;

    // Hamiltonian constraint: 16 pi mu = R_g + (tr k)^2 - |k|^2.
    const real Rg = 2 / (r * r) - 2 / (F2 * r * r) + 4 * p.pv.dF / (r * F2 * F);
    const real trk = p.pv.knn + p.pv.ktan;
    const real k2 = p.pv.knn * p.pv.knn + p.pv.ktan * p.pv.ktan / 2;
    const real mu16 = Rg + trk * trk - k2;

    // Momentum constraint: 8 pi J(e3) = ((2 knn - ktan)/r - ktan') / F;
    // omega(e3) = f' / (F W).
    const real J8 = ((2 * p.pv.knn - p.pv.ktan) / r - p.pv.dktan) / F;
    const real Jomega16 = 2 * J8 * p.fp / (F * p.W);

    const real T_rr = deficit_rr(data, p, r_h);
    const real T_tt = (r / F2) * p.fp / p.W - (p.pv.ktan / 2) * r * r;
    const real hmk2 = (T_rr / p.A) * (T_rr / p.A) +
                      2 * (T_tt / (r * r)) * (T_tt / (r * r));

    const real q3 = p.fp * T_rr / (F2 * p.W * std::sqrt(p.A));

    return mu16 - Jomega16 + hmk2 + 2 * q3 * q3 - 2 * div_q;
}

struct RbarResidual {
    real Rbar = 0;
    real residual = 0;
};

// Left side Rbar = 2/r^2 - 2/(A r^2) + 2 A'/(r A^2) for gbar = A dr^2 + r^2 dOmega^2,
// with A' from a 5-point stencil in log(r - r_h); the same neighbors feed
// div q = (A^{-1/2} r^{-2}) d/dr (r^2 q(e3bar)) on the right side.
RbarResidual rbar_and_residual(const RadialInitialData& data,
                               const SolutionSampler& samp, real r_h, real r) {
    constexpr real delta = 0.02L;
    const GraphPoint c = point_at(data, samp, r_h, r);
    const real margin = std::exp(2 * delta);
    if (!(c.xi * margin <= samp.xi_hi()) || !(c.xi / margin >= samp.xi_lo()))
        throw error("slice: stencil footprint outside the solution grid");

    real a_val[4];   // A at xi e^{j delta}, j = -2, -1, +1, +2
    real r2q[4];     // r^2 q(e3bar) at the same points
    const int offs[4] = {-2, -1, 1, 2};
    for (int j = 0; j < 4; ++j) {
        const real xj = c.xi * std::exp(offs[j] * delta);
        const GraphPoint p = point_at(data, samp, r_h, r_h + xj);
        a_val[j] = p.A;
        r2q[j] = p.r * p.r * q_e3_assembled(data, p, r_h);
    }
    const auto ddr = [&](const real* u) {
        return (u[0] - 8 * u[1] + 8 * u[2] - u[3]) / (12 * delta) / c.xi;
    };

    RbarResidual out;
    const real dA = ddr(a_val);
    out.Rbar = 2 / (r * r) - 2 / (c.A * r * r) + 2 * dA / (r * c.A * c.A);
    const real div_q = ddr(r2q) / (std::sqrt(c.A) * r * r);
    out.residual = out.Rbar - identity_right(data, c, r_h, div_q);
    return out;
}

} // namespace

real induced_metric(const RadialInitialData& data, const RadialJangSolution& sol,
                    real r) {
    const SolutionSampler samp(sol);
    return point_at(data, samp, sol.r_h, r).A;
}

MeanCurvatureQ mean_curvature_and_q(const RadialInitialData& data,
                                    const RadialJangSolution& sol, real r) {
    const SolutionSampler samp(sol);
    return curvature_q_of(point_at(data, samp, sol.r_h, r));
}

real scalar_identity_residual(const RadialInitialData& data,
                              const RadialJangSolution& sol, real r) {
    const SolutionSampler samp(sol);
    return rbar_and_residual(data, samp, sol.r_h, r).residual;
}

SliceSample slice_sample(const RadialInitialData& data,
                         const RadialJangSolution& sol, real r) {
    const SolutionSampler samp(sol);
    const GraphPoint c = point_at(data, samp, sol.r_h, r);
    const MeanCurvatureQ hq = curvature_q_of(c);
    const RbarResidual rr = rbar_and_residual(data, samp, sol.r_h, r);
    SliceSample out;
    out.r = r;
    out.gbar_rr = c.A;
    out.area = 4.0 * M_PI * r * r;
    out.Hbar = hq.Hbar;
    out.q_e3 = hq.q_e3;
    out.Rbar = rr.Rbar;
    out.identity_residual = rr.residual;
    return out;
}

} // namespace motslab
