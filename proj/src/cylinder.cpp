// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "motslab/errors.hpp"

namespace motslab {

namespace {

// du/dz and d^2u/dz^2 by the chain rule through r.  With s' = beta * F:
//   du/dz  = s'/f'
//   d2u/dz2 = (s'' f' - s' f'') / f'^3,   s'' = beta * dF.
struct GraphDerivs {
    real du, d2u;
};

GraphDerivs graph_derivs(const RadialInitialData& data, real r_h, real beta,
                         real xi, real fp, real fpp) {
    const ProfileValues pv = profiles_at(data, r_h, xi);
    const real sp = beta * pv.F;
    const real spp = beta * pv.dF;
    return {sp / fp, (spp * fp - sp * fpp) / (fp * fp * fp)};
}

} // namespace

CylinderGraph to_cylinder(const RadialJangSolution& sol,
                          const FoliationChart& chart, real s0) {
    if (sol.size() < 8)
        throw config_error("to_cylinder: solution grid is too small");
    if (!(s0 > 0))
        throw config_error("to_cylinder: transverse cut must be positive");

    CylinderGraph cg;
    cg.lambda = sol.lambda;
    cg.s0 = s0;

    // z_bar solves s = s0 exactly; samples keep the grid nodes inside.
    const real xi_bar = chart.xi_of_param(std::min(s0, chart.param_max()));
    SolutionSampler samp(sol);
    cg.z_bar = samp.f_at(std::min(xi_bar, samp.xi_hi()));

    cg.samples.reserve(sol.size());
    for (std::size_t k = sol.size(); k-- > 0;) {
        const real xi = sol.xi[k];
        const real u = chart.param_of_xi(xi);
        if (u > s0)
            continue;
        if (!(sol.fp[k] < 0))
            throw numeric_error("to_cylinder: height is not strictly "
                                "decreasing on the kept range");
        const GraphDerivs d = graph_derivs(sol.data, sol.r_h, chart.lapse, xi,
                                           sol.fp[k], sol.fpp[k]);
        cg.samples.push_back({sol.f[k], u, d.du, d.d2u});
    }
    for (std::size_t i = 1; i < cg.samples.size(); ++i) {
        if (!(cg.samples[i].z > cg.samples[i - 1].z) ||
            !(cg.samples[i].u < cg.samples[i - 1].u))
            throw numeric_error("to_cylinder: height is not strictly "
                                "decreasing on the kept range");
    }
    return cg;
}

DecayConstants fit_decay_constants(const CylinderGraph& cg) {
    if (cg.samples.size() < 16)
        throw numeric_error("fit_decay_constants: too few cylinder samples");
    if (!(cg.lambda > 0))
        throw config_error("fit_decay_constants: eigenvalue must be positive");

    DecayConstants dc;
    dc.rate_expected = std::sqrt(cg.lambda);
    dc.z_lo = cg.z_bar;
    dc.z_hi = cg.z_bar + 4 * std::log(real(10)) / dc.rate_expected;
    if (cg.samples.back().z < dc.z_hi)
        throw numeric_error("fit_decay_constants: graph resolves fewer than "
                            "four decades of decay");

    std::vector<double> zs, lus;
    real sup1 = 0, sup1u = 0;
    real inf2 = std::numeric_limits<real>::infinity(), inf3 = inf2;
    for (const CylinderSample& s : cg.samples) {
        if (s.z < dc.z_lo)
            continue;
        if (s.z <= dc.z_hi) {
            zs.push_back(static_cast<double>(s.z));
            lus.push_back(static_cast<double>(std::log(s.u)));
        }
        const real w = std::exp(dc.rate_expected * s.z);
        sup1 = std::max(sup1, (s.u + std::abs(s.du) + std::abs(s.d2u)) * w);
        sup1u = std::max(sup1u, s.u * w);
        inf2 = std::min(inf2, s.u * w);
        inf3 = std::min(inf3, std::abs(s.du) * w);
    }
    dc.rate = -real(linear_fit(zs, lus).slope);
    dc.c1 = sup1;
    dc.c1_u = sup1u;
    dc.c2 = inf2;
    dc.c3 = inf3;
    dc.rate_flag =
        std::abs(dc.rate / dc.rate_expected - 1) > real(0.05L);
    return dc;
}

GradientBoundReport gradient_bounds_check(const RadialJangSolution& sol,
                                          const DecayConstants& consts,
                                          const CylinderGraph& cg) {
    if (!(consts.c1 > 0) || !(consts.c2 > 0) || !(consts.c3 > 0))
        throw config_error("gradient_bounds_check: constants must be fitted "
                           "and positive");

    GradientBoundReport rep;
    rep.tangential_bound = std::sqrt(real(2)) * consts.c1 * consts.c1 /
                           (consts.c2 * consts.c3);
    rep.lower_margin = std::numeric_limits<real>::infinity();
    rep.upper_margin = rep.lower_margin;
    rep.s_dsf_min = rep.lower_margin;
    rep.s_dsf_max = 0;
    rep.ok = true;

    real worst = 0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
        const real s = sol.tau[k];
        if (s > cg.s0)
            continue;
        const ProfileValues pv = profiles_at(sol.data, sol.r_h, sol.xi[k]);
        const real dsf = std::abs(sol.fp[k]) / pv.F;
        const real lo = consts.c2 / (consts.c1 * s);
        const real hi = consts.c1 / (consts.c3 * s);
        const real ml = (dsf - lo) / lo;
        const real mu = (hi - dsf) / dsf;
        rep.lower_margin = std::min(rep.lower_margin, ml);
        rep.upper_margin = std::min(rep.upper_margin, mu);
        rep.s_dsf_min = std::min(rep.s_dsf_min, s * dsf);
        rep.s_dsf_max = std::max(rep.s_dsf_max, s * dsf);
        if (rep.n_checked == 0)
            rep.s_dsf_horizon = s * dsf;
        ++rep.n_checked;
        const real bad = std::min(ml, mu);
        if (bad < worst) {
            worst = bad;
            rep.witness_r = sol.r_at(k);
        }
    }
    if (rep.n_checked == 0)
        throw numeric_error("gradient_bounds_check: no grid node lies below "
                            "the transverse cut");
    rep.ok = rep.lower_margin >= 0 && rep.upper_margin >= 0;
    return rep;
}

FoliationCResult foliation_C(const RadialJangSolution& sol, real lambda,
                             real tau_lo, real tau_hi) {
    if (!(lambda > 0))
        throw config_error("foliation_C: eigenvalue must be positive");
    if (!(0 < tau_lo && tau_lo < tau_hi))
        throw config_error("foliation_C: bad comparability window");
    const real rate = std::sqrt(lambda);

    FoliationCResult out;
    out.tau_lo = tau_lo;
    out.tau_hi = tau_hi;
    out.chart.kind = ChartKind::level;
    out.chart.r_h = sol.r_h;
    out.chart.lapse = 1;
    out.chart.lambda = lambda;
    out.chart.Lambda = sol.chart.Lambda;
    out.chart.s_max = 0;
    out.chart.x_min = sol.chart.x_min;
    out.chart.dx = sol.chart.dx;
    out.chart.log_param.reserve(sol.size());
    for (std::size_t k = 0; k < sol.size(); ++k)
        out.chart.log_param.push_back(-rate * sol.f[k]);

    std::size_t n_window = 0;
    real a1 = 0, a2 = 0;
    for (std::size_t k = 0; k < sol.size(); ++k) {
        const real tau = sol.tau[k];
        if (tau < tau_lo || tau > tau_hi)
            continue;
        const real gamma = std::exp(-rate * sol.f[k]);
        const ProfileValues pv = profiles_at(sol.data, sol.r_h, sol.xi[k]);
        const real dgdt = -rate * sol.fp[k] * gamma / pv.F;
        a1 = std::max(a1, std::max(gamma / tau, tau / gamma));
        a2 = std::max(a2, std::max(dgdt, 1 / dgdt));
        ++n_window;
    }
    if (n_window < 32)
        throw numeric_error("foliation_C: comparability window is "
                            "under-resolved on the solution grid");
    out.alpha1 = a1;
    out.alpha2 = a2;
    return out;
}

} // namespace motslab
