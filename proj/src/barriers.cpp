// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "motslab/errors.hpp"

namespace motslab {

namespace {

// Geometry of the leaf Sigma_s needed by the restricted operator.
struct LeafGeometry {
    real r = 0;      // sphere radius
    real F = 0;      // radial metric factor
    real theta = 0;  // theta_plus
    real knn = 0;    // k(nu,nu)
    real P = 0;      // tr k - k(nu,nu)
};

LeafGeometry leaf_from_xi(const RadialInitialData& data, real r_h, real xi) {
    const ProfileValues pv = profiles_at(data, r_h, xi);
    LeafGeometry g;
    g.r = r_h + xi;
    g.F = pv.F;
    g.knn = pv.knn;
    g.P = pv.ktan;
    g.theta = pv.ktan + 2 / (g.r * pv.F);
    return g;
}

// Chart-interpolated leaf lookup; relative xi error is the chart's O(dx^4),
// far below the sign margins the scans certify.  tau = beta * s.
LeafGeometry leaf_fast(const RadialInitialData& data, const FoliationChart& chart,
                       real s) {
    return leaf_from_xi(data, chart.r_h, chart.xi_of_param(chart.lapse * s));
}

// Quadrature-inverted leaf lookup; keeps the leaf geometry exact to rounding
// even when s sits far below the chart spacing.  Used where remainders of
// order s^3 must survive the evaluation.
LeafGeometry leaf_exact(const RadialInitialData& data, const FoliationChart& chart,
                        real s) {
    const real xi = xi_at_tau(data, chart.r_h, chart.lapse * s);
    return leaf_from_xi(data, chart.r_h, xi);
}

// The foliation-restricted operator at derivative values vp, vpp.
// 1 + vp/(beta w) is evaluated as beta/(w (beta w - vp)), which is exact
// (w^2 - (vp/beta)^2 = 1); the direct sum cancels for steep barriers.
real jang_on_leaf(const LeafGeometry& g, real beta, real vp, real vpp) {
    const real q = vp / beta;
    const real w2 = 1 + q * q;
    const real w = std::sqrt(w2);
    const real slope = vp / (beta * w);
    const real one_plus = beta / (w * (beta * w - vp));
    return slope * g.theta - one_plus * g.P - g.knn / w2 +
           vpp / (beta * beta * w2 * w);
}

real require_positive(real x, const char* what) {
    if (!(x > 0)) throw config_error(std::string("barriers: ") + what);
    return x;
}

} // namespace

// ---------------------------------------------------------------- BarrierSpec

void BarrierSpec::validate() const {
    const real tol = 1e-12L;
    const auto near = [&](real x, real y) {
        return std::abs(x - y) <= tol * (std::abs(x) + std::abs(y) + 1);
    };
    switch (kind) {
    case BarrierKind::super_log:
        if (!(eps >= 0)) throw config_error("BarrierSpec: eps must be nonnegative");
        if (!(alpha > 0)) throw config_error("BarrierSpec: alpha must be positive");
        if (!near(s_lo, eps) || !near(s_hi, (1 + alpha) * eps))
            throw config_error(
                "BarrierSpec: super_log range must be (eps, (1+alpha) eps]");
        break;
    case BarrierKind::iterated_w:
        if (!(d > 0) || !(d < 1))
            throw config_error("BarrierSpec: d must lie in (0, 1)");
        if (!(eps0 > 0)) throw config_error("BarrierSpec: eps0 must be positive");
        if (!(alpha > 0)) throw config_error("BarrierSpec: alpha must be positive");
        if (!near(s_hi, (1 + alpha) * eps0) || !(s_lo >= 0) || !(s_lo < s_hi))
            throw config_error(
                "BarrierSpec: iterated_w range must end at (1+alpha) eps0");
        break;
    case BarrierKind::power_super:
        if (!(lambda > 0))
            throw config_error("BarrierSpec: lambda must be positive");
        if (!(gamma > 1) || !(gamma < 1.25L))
            throw config_error("BarrierSpec: super exponent needs gamma in (1, 5/4)");
        if (!(s_lo >= 0) || !(s_hi > s_lo))
            throw config_error("BarrierSpec: range must satisfy 0 <= s_lo < s_hi");
        break;
    case BarrierKind::power_sub:
        if (!(lambda > 0))
            throw config_error("BarrierSpec: lambda must be positive");
        if (!(gamma > 0.75L) || !(gamma < 1))
            throw config_error("BarrierSpec: sub exponent needs gamma in (3/4, 1)");
        if (!(s_lo >= 0) || !(s_hi > s_lo))
            throw config_error("BarrierSpec: range must satisfy 0 <= s_lo < s_hi");
        break;
    }
}

// ------------------------------------------------------------- log barriers

real w_eps(real eps, real s) {
    if (!(s > eps)) throw config_error("w_eps: requires s > eps");
    return -std::log(s - eps);
}

real alpha_for(real lambda) {
    if (!(lambda > 0))
        throw config_error("alpha_for: eigenvalue must be positive");
    if (lambda >= 1) return 1;  // the defining inequality is vacuous
    // Critical value of (1 - lambda)(1 + alpha) < 1 - lambda/2, halved to
    // sit strictly inside the admissible set.
    return (lambda / 2) / (1 - lambda) / 2;
}

IteratedBound build_W(real d, real eps0, real alpha, real sup_anchor,
                      real s_floor) {
    if (!(d > 0) || !(d < 1)) throw config_error("build_W: d must lie in (0, 1)");
    require_positive(eps0, "build_W needs eps0 > 0");
    require_positive(alpha, "build_W needs alpha > 0");
    if (!(s_floor > 0)) s_floor = 1e-6L * eps0;
    if (!(s_floor < (1 + d * alpha) * eps0))
        throw config_error("build_W: s_floor must sit below the first breakpoint");

    IteratedBound W;
    W.d = d;
    W.eps0 = eps0;
    W.alpha = alpha;
    W.anchor = sup_anchor;

    // eps shrinks by (1+d alpha)/(1+alpha) per segment, so the segment tops
    // s_n = (1+d alpha)^n (1+alpha)^(1-n) eps0 shrink by the same ratio and
    // the anchor value climbs by exactly log(1/d).
    const real shrink = (1 + d * alpha) / (1 + alpha);
    const real step = std::log(1 / d);
    real e = eps0;
    W.s_break.push_back((1 + alpha) * eps0);
    for (std::size_t n = 0;; ++n) {
        W.eps_seg.push_back(e);
        W.w_top.push_back(sup_anchor + step * static_cast<real>(n));
        const real t_next = (1 + d * alpha) * e;
        W.s_break.push_back(t_next);
        if (t_next <= s_floor) break;
        if (n > 500000)
            throw numeric_error("build_W: too many segments, raise s_floor");
        e *= shrink;
    }
    return W;
}

real IteratedBound::value(real s) const {
    if (s_break.size() < 2 || eps_seg.size() + 1 != s_break.size())
        throw numeric_error("IteratedBound: malformed table");
    if (!(s > s_break.back()) || !(s <= s_break.front()))
        throw config_error("IteratedBound: s outside the covered range");
    // s_break is descending; find the segment with s_break[j+1] < s <= s_break[j].
    const auto it = std::upper_bound(s_break.begin(), s_break.end(), s,
                                     std::greater<real>());
    const std::size_t j = static_cast<std::size_t>(it - s_break.begin()) - 1;
    return std::log(alpha * eps_seg[j] / (s - eps_seg[j])) + w_top[j];
}

real IteratedBound::slope_coefficient() const {
    return std::log(1 / d) / std::log((1 + alpha) / (1 + d * alpha));
}

// ------------------------------------------------------------- power family

VFamilyValue v_family_full(real a, real gamma, real lambda, real s, real s_ref) {
    require_positive(lambda, "v_family needs lambda > 0");
    require_positive(s, "v_family needs s > 0");
    require_positive(s_ref, "v_family needs s_ref > 0");
    const real isl = 1 / std::sqrt(lambda);
    VFamilyValue out;
    const real t = std::log(s / s_ref);
    if (gamma == 1) {
        out.v = -isl * t + a * s;
    } else {
        // (s^(1-gamma) - s_ref^(1-gamma)) / (gamma - 1) via expm1, stable
        // through the gamma -> 1 limit.
        out.v = isl * std::pow(s_ref, 1 - gamma) * std::expm1((1 - gamma) * t) /
                    (gamma - 1) +
                a * s;
    }
    out.dv = -isl * std::pow(s, -gamma) + a;
    out.ddv = gamma * isl * std::pow(s, -gamma - 1);
    return out;
}

real v_family(real a, real gamma, real lambda, real s, real s_ref) {
    return v_family_full(a, gamma, lambda, s, s_ref).v;
}

// -------------------------------------------------------- restricted operator

real local_jang(const RadialInitialData& data, const FoliationChart& chart,
                real s, real vp, real vpp) {
    require_positive(chart.lapse, "local_jang needs a positive lapse");
    require_positive(s, "local_jang needs s > 0");
    return jang_on_leaf(leaf_exact(data, chart, s), chart.lapse, vp, vpp);
}

// --------------------------------------------------------------- eps0 search

Eps0Certificate find_eps0(const RadialInitialData& data,
                          const FoliationChart& chart, real alpha) {
    require_positive(alpha, "find_eps0 needs alpha > 0");
    if (chart.empty()) throw config_error("find_eps0: chart table is empty");
    require_positive(chart.s_max, "find_eps0 needs chart.s_max");
    const real beta = chart.lapse;

    const int n_eps = 1000, n_s = 100;
    const real lg1a = std::log1p(alpha);

    real e0 = chart.s_max / (1 + alpha);
    for (int attempt = 0; attempt < 40; ++attempt, e0 /= 2) {
        Eps0Certificate cert;
        cert.eps0 = e0;
        cert.alpha = alpha;
        cert.worst = -std::numeric_limits<real>::infinity();
        bool ok = true;
        for (int ie = 0; ie < n_eps && ok; ++ie) {
            // Three decades of eps below the candidate.
            const real eps =
                e0 * std::pow(real(10), real(-3) * ie / (n_eps - 1));
            for (int js = 0; js < n_s; ++js) {
                // s = eps (1+alpha)^((js+1)/n_s); u = s - eps without
                // cancellation at the lower end of the range.
                const real frac = lg1a * (js + 1) / n_s;
                const real u = eps * std::expm1(frac);
                const real s = eps * std::exp(frac);
                const LeafGeometry g = leaf_fast(data, chart, s);
                const real J = jang_on_leaf(g, beta, -1 / u, 1 / (u * u));
                if (J > cert.worst) {
                    cert.worst = J;
                    cert.worst_eps = eps;
                    cert.worst_s = s;
                }
                if (!(J < 0)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return cert;
    }
    throw numeric_error("find_eps0: no admissible eps0 found");
}

// ---------------------------------------------------------- expansion check

real expansion_check(const RadialInitialData& data, const FoliationChart& chart,
                     real a, real gamma, real s_lo, real s_hi) {
    require_positive(chart.lambda, "expansion_check needs chart.lambda");
    require_positive(chart.lapse, "expansion_check needs a positive lapse");
    if (!(s_lo > 0) || !(s_hi > s_lo))
        throw config_error("expansion_check: need 0 < s_lo < s_hi");

    const real beta = chart.lapse;
    const real lam = chart.lambda;
    const real isl = 1 / std::sqrt(lam);
    const real r_h = chart.r_h;
    const real q = std::min(std::min(3 * gamma, 2 * gamma + 1),
                            std::min(gamma + 2, real(3)));

    // xi-lattice spanning [s_lo, s_hi]; the parameter values come from
    // cumulative quadrature on that lattice, so s and xi stay paired to
    // rounding and the O(s^3)-scale remainder is not polluted by chart
    // interpolation.
    const real xi_a = xi_at_tau(data, r_h, beta * s_lo);
    const real xi_b = xi_at_tau(data, r_h, beta * s_hi);
    const int n = std::max(
        2, static_cast<int>(std::ceil(16 * std::log10(s_hi / s_lo))) + 1);
    const real x_a = std::log(xi_a);
    const real x_step = (std::log(xi_b) - x_a) / (n - 1);

    real xi_prev = xi_a;
    real tau = tau_from_horizon(data, r_h, xi_a);
    real worst = 0;
    for (int i = 0; i < n; ++i) {
        const real xi_i = (i == 0) ? xi_a : std::exp(x_a + x_step * i);
        if (i > 0) {
            tau += tau_segment(data, r_h, xi_prev, xi_i);
            xi_prev = xi_i;
        }
        const real s = tau / beta;
        const LeafGeometry g = leaf_from_xi(data, r_h, xi_i);

        const real vp = -isl * std::pow(s, -gamma) + a;
        const real vpp = gamma * isl * std::pow(s, -gamma - 1);
        const real J = jang_on_leaf(g, beta, vp, vpp);

        // sigma = s^gamma sqrt(beta^2 + vp^2)
        const real sigma = std::pow(s, gamma) * std::hypot(beta, vp);
        const real sig3 = sigma * sigma * sigma;

        const real expansion =
            -(beta * isl) * s + beta * gamma * isl * std::pow(s, 2 * gamma - 1) -
            (g.theta - lam * beta * s) * isl / lam +
            3 * a * beta * std::pow(s, gamma + 1) -
            beta * beta * isl * (g.knn + g.P / 2) * std::pow(s, 2 * gamma);

        worst = std::max(worst, std::abs(sig3 * J - expansion) / std::pow(s, q));
    }
    return worst;
}

// ------------------------------------------------------------ sign constants

BarrierConstants find_constants(const RadialInitialData& data,
                                const FoliationChart& chart) {
    if (chart.empty()) throw config_error("find_constants: chart table is empty");
    require_positive(chart.lambda, "find_constants needs chart.lambda");
    require_positive(chart.Lambda, "find_constants needs chart.Lambda");
    require_positive(chart.s_max, "find_constants needs chart.s_max");
    const real beta = chart.lapse;
    const real lam = chart.lambda;
    const real Lam = chart.Lambda;
    const real isl = 1 / std::sqrt(lam);

    // Log grid from s_max down to five decades below (clipped to the chart).
    const real s_top = chart.s_max;
    const real s_floor =
        std::max(s_top * 1e-5L, chart.param_min() / beta * 1.0001L);
    const int per_decade = 64;
    const int n = static_cast<int>(
                      std::ceil(per_decade * std::log10(s_top / s_floor))) +
                  1;
    std::vector<real> sg(n);
    std::vector<LeafGeometry> leaf(n);
    for (int k = 0; k < n; ++k) {
        sg[k] = s_top * std::pow(real(10), -real(k) / per_decade);
        leaf[k] = leaf_fast(data, chart, sg[k]);
    }

    BarrierConstants out;

    // c1 = sup, c2 = inf of -beta (k_nn + P/2) over the region.
    real c1 = -std::numeric_limits<real>::infinity();
    real c2 = std::numeric_limits<real>::infinity();
    for (int k = 0; k < n; ++k) {
        const real c = -beta * (leaf[k].knn + leaf[k].P / 2);
        c1 = std::max(c1, c);
        c2 = std::min(c2, c);
    }
    out.a_super = -(5 * Lam / (4 * lam * beta) + std::abs(c1) + 1) * (isl / 3);
    out.a_sub = (2 / (3 * std::sqrt(3 * lam))) *
                (1 + real(4) / 3 * std::abs(c2) + Lam / (lam * beta));

    const real gam_super[] = {1.01L, 1.05L, 1.1L, 1.2L, 1.24L};
    const real gam_sub[] = {0.76L, 0.8L, 0.9L, 0.95L, 0.99L};

    // One sign scan: largest grid s whose whole tail (toward s = 0) keeps
    // sign * J >= 0 for every sampled gamma.  worst is the smallest signed
    // margin over the certified tail.
    const auto scan = [&](const real* gams, int ng, real a, real sign,
                          real* worst_out, const char* label) {
        std::vector<real> worst_at(n, std::numeric_limits<real>::infinity());
        std::vector<real> bad_gamma(n, 0);
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < ng; ++j) {
                const real vp = -isl * std::pow(sg[k], -gams[j]) + a;
                const real vpp = gams[j] * isl * std::pow(sg[k], -gams[j] - 1);
                const real margin =
                    sign * jang_on_leaf(leaf[k], beta, vp, vpp);
                if (margin < worst_at[k]) {
                    worst_at[k] = margin;
                    bad_gamma[k] = gams[j];
                }
            }
        }
        if (!(worst_at[n - 1] >= 0)) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "find_constants: %s sign fails at s=%.6Le gamma=%.3Lf",
                          label, static_cast<long double>(sg[n - 1]),
                          static_cast<long double>(bad_gamma[n - 1]));
            throw numeric_error(msg);
        }
        int top = n - 1;
        while (top > 0 && worst_at[top - 1] >= 0) --top;
        real worst = std::numeric_limits<real>::infinity();
        for (int k = top; k < n; ++k) worst = std::min(worst, worst_at[k]);
        *worst_out = sign * worst;
        return sg[top];
    };

    out.s2 = scan(gam_super, 5, out.a_super, -1, &out.worst_super,
                  "supersolution");
    out.s3 = scan(gam_sub, 5, out.a_sub, +1, &out.worst_sub, "subsolution");
    out.s0 = std::min(out.s2, out.s3);
    return out;
}

// ------------------------------------------------------------ sandwich check

SandwichReport sandwich_check(const RadialJangSolution& sol,
                              const BarrierConstants& consts,
                              const FoliationChart& chart) {
    if (sol.size() < 16)
        throw config_error("sandwich_check: solution grid too small");
    require_positive(consts.s0, "sandwich_check needs constants with s0 > 0");
    const real beta = chart.lapse;
    const real lam = sol.lambda;
    const real isl = 1 / std::sqrt(lam);

    // Anchor leaf: largest solution node with s <= s0 / 2 (tau = beta s).
    const real tau_target = beta * (consts.s0 / 2);
    std::size_t i1 = 0;
    for (std::size_t i = 0; i < sol.size(); ++i)
        if (sol.tau[i] <= tau_target) i1 = i;
    if (!(sol.tau[i1] <= tau_target) || i1 < 8)
        throw numeric_error("sandwich_check: no usable anchor node below s0/2");

    SandwichReport rep;
    rep.s1 = sol.tau[i1] / beta;
    rep.a = std::max(-consts.a_super, consts.a_sub);
    rep.worst_upper = std::numeric_limits<real>::infinity();
    rep.worst_lower = std::numeric_limits<real>::infinity();
    rep.worst_gradient = std::numeric_limits<real>::infinity();
    const real f1 = sol.f[i1];

    for (std::size_t i = 0; i <= i1; ++i) {
        const real s = sol.tau[i] / beta;
        const real base = f1 - isl * std::log(s / rep.s1);
        const real upper = base - rep.a * (s - rep.s1);
        const real lower = base + rep.a * (s - rep.s1);
        if (i < i1) {
            rep.worst_upper = std::min(rep.worst_upper, upper - sol.f[i]);
            rep.worst_lower = std::min(rep.worst_lower, sol.f[i] - lower);
        } else {
            rep.margin_at_s1 = upper - sol.f[i];
        }

        // Gradient band: d_s f = beta f' / F; the solution decays, so the
        // band reads 1/(sqrt(lam) s) - a <= |d_s f| <= 1/(sqrt(lam) s) + a.
        const real F = profiles_at(sol.data, sol.r_h, sol.xi[i]).F;
        const real absg = std::abs(sol.fp[i] * beta / F);
        const real slack = std::min((isl / s + rep.a) - absg,
                                    absg - (isl / s - rep.a));
        rep.worst_gradient = std::min(rep.worst_gradient, slack);
    }
    rep.n_points = i1 + 1;
    return rep;
}

} // namespace motslab
