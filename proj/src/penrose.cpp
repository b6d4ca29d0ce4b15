// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/penrose.hpp"

#include <algorithm>
#include <cmath>

#include "motslab/quadrature.hpp"
#include "motslab/slice.hpp"

namespace motslab {

namespace {

// sqrt(gbar_rr) along the slice.  Inside the solution grid the slope comes
// from the sampler; past the cut the far field is modeled by the leading
// f' ~ -c/rho^2 decay frozen at the cut, whose contribution to the capacity
// integral is O(c^2/R^5) and far below the quadrature tolerance.
struct SliceRadialFactor {
    const RadialInitialData* data = nullptr;
    const SolutionSampler* samp = nullptr;
    real r_h = 0;
    real xi_cut = 0;
    real edge_c = 0;  // |f'(cut)| * r_cut^2

    // Takes the horizon offset xi = rho - r_h directly: near the horizon the
    // subtraction rho - r_h quantizes xi in steps of ulp(r_h), and with
    // f' ~ 1/xi those steps become jump noise the quadrature cannot refine
    // away.  Callers that know xi must pass it unrounded.
    real at_xi(real xi) const {
        const real rho = r_h + xi;
        const real fp = xi <= xi_cut ? samp->fp_at(xi) : -edge_c / (rho * rho);
        const ProfileValues pv = profiles_at(*data, r_h, xi);
        return std::hypot(pv.F, fp);
    }

    real operator()(real rho) const { return at_xi(rho - r_h); }
};

// Integral_{r0}^inf sqrt(gbar_rr(x)) / x^2 dx.
real capacity_integral(const SliceRadialFactor& sg, real r0) {
    const real r_cut = sg.r_h + sg.xi_cut;
    real total = 0;
    if (r0 < r_cut) {
        // x = r_h + e^v; the integrand sqrt(gbar)/x^2 grows like 1/(x - r_h)
        // toward the horizon, so in v it stays bounded.
        const auto near = [&](real v) {
            const real xi = std::exp(v);
            const real rho = sg.r_h + xi;
            return sg.at_xi(xi) * xi / (rho * rho);
        };
        total += integrate_adaptive(near, std::log(r0 - sg.r_h),
                                    std::log(sg.xi_cut), real(1e-14L),
                                    real(1e-13L));
    }
    // x = 1/u maps the tail to a bounded interval; the integrand tends to
    // the asymptotic metric factor F(inf) = 1 as u -> 0.
    const real r_far = std::max(r0, r_cut);
    const auto tail = [&](real u) { return sg(1 / u); };
    total += integrate_adaptive(tail, real(0), 1 / r_far, real(1e-14L),
                                real(1e-13L));
    return total;
}

SliceRadialFactor make_factor(const RadialInitialData& data,
                              const SolutionSampler& samp, real r_h) {
    SliceRadialFactor sg;
    sg.data = &data;
    sg.samp = &samp;
    sg.r_h = r_h;
    sg.xi_cut = samp.xi_hi() * 0.98L;
    const real r_cut = r_h + sg.xi_cut;
    sg.edge_c = -samp.fp_at(sg.xi_cut) * r_cut * r_cut;
    return sg;
}

real sigma_impl(const RadialInitialData& data, const SolutionSampler& samp,
                real r_h, real r0) {
    if (!(r0 > r_h))
        throw numeric_error(
            "capacity_sigma: capacity integral diverges at or below the horizon");
    if (!(r0 - r_h >= samp.xi_lo()))
        throw error("capacity_sigma: radius below the solution grid");
    const SliceRadialFactor sg = make_factor(data, samp, r_h);
    return 2 / (r0 * capacity_integral(sg, r0));
}

real c_impl(const RadialInitialData& data, const RadialJangSolution& sol,
            real r) {
    const MeanCurvatureQ hq = mean_curvature_and_q(data, sol, r);
    return 4 - 2 * r * (hq.Hbar - hq.q_e3);
}

} // namespace

real c_coefficient(const RadialInitialData& data, const RadialJangSolution& sol,
                   real r) {
    return c_impl(data, sol, r);
}

real capacity_sigma(const RadialJangSolution& sol, real r0) {
    const SolutionSampler samp(sol);
    return sigma_impl(sol.data, samp, sol.r_h, r0);
}

real theta_row(const RadialInitialData& data, const RadialJangSolution& sol,
               real r) {
    const real C = c_impl(data, sol, r);
    if (!(C > 0))
        throw numeric_error("theta_row: nonpositive C coefficient, row inadmissible");
    const real sigma = capacity_sigma(sol, r);
    // (sigma C)/(2(C + sigma)) * sqrt(4 pi r^2 / (4 pi r_h^2)) = r/(r_h ...)
    return (r / sol.r_h) * sigma * C / (2 * (C + sigma));
}

ConditionReport check_conditions(real lambda, real c1, real c2, real c3,
                                 real sup_q) {
    if (!(lambda > 0) || !(c1 > 0) || !(c2 > 0) || !(c3 > 0))
        throw config_error("check_conditions: constants must be positive");
    ConditionReport out;
    const real r13 = c1 / c3;
    const real r12 = c1 * c1 / (c2 * c3);
    out.cond1_value = lambda * r13 * r13 * (1 + 2 * r12 * r12);
    out.cond1_holds = out.cond1_value < 4;
    out.sup_q = sup_q;
    out.threshold = 2 * std::sqrt(lambda);
    out.cond2_holds = sup_q < out.threshold;
    return out;
}

PenroseReport build_penrose_report(const RadialInitialData& data,
                                   const RadialJangSolution& sol,
                                   const std::vector<real>& radii, real c1,
                                   real c2, real c3) {
    const SolutionSampler samp(sol);
    const SliceRadialFactor sg = make_factor(data, samp, sol.r_h);
    PenroseReport rep;
    rep.adm = sol.adm;

    for (const real r : radii) {
        PenroseRow row;
        row.r = r;
        const MeanCurvatureQ hq = mean_curvature_and_q(data, sol, r);
        row.C = 4 - 2 * r * (hq.Hbar - hq.q_e3);
        row.sigma = 2 / (r * capacity_integral(sg, r));
        row.admissible = row.C > 0;
        if (row.admissible)
            row.theta = (r / sol.r_h) * row.sigma * row.C /
                        (2 * (row.C + row.sigma));
        rep.rows.push_back(row);
        if (row.admissible) rep.theta = std::max(rep.theta, row.theta);
    }

    real sup_q = 0;
    const real lo = std::max(samp.xi_lo() * 2, real(1e-12L));
    const real hi = 1e-3L * sol.r_h;
    const int n_scan = 200;
    for (int i = 0; i < n_scan; ++i) {
        const real xi = lo * std::pow(hi / lo, real(i) / (n_scan - 1));
        const MeanCurvatureQ hq = mean_curvature_and_q(data, sol, sol.r_h + xi);
        sup_q = std::max(sup_q, std::fabs(hq.q_e3));
    }
    rep.conditions = check_conditions(sol.lambda, c1, c2, c3, sup_q);
    rep.mass_bound = rep.theta * sol.r_h / 2;
    return rep;
}

MassBound mass_bound(const PenroseReport& report) {
    if (!report.conditions.cond1_holds && !report.conditions.cond2_holds)
        throw numeric_error("mass_bound: neither condition holds, no certified bound");
    const bool any = std::any_of(report.rows.begin(), report.rows.end(),
                                 [](const PenroseRow& r) { return r.admissible; });
    if (!any) throw numeric_error("mass_bound: no admissible rows");
    MassBound mb;
    mb.theta = report.theta;
    mb.bound = report.mass_bound;
    mb.adm = report.adm;
    mb.slack = report.adm - report.mass_bound;
    return mb;
}

} // namespace motslab
