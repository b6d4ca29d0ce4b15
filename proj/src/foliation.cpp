// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/foliation.hpp"

#include <algorithm>
#include <cmath>

#include "motslab/dd.hpp"
#include "motslab/errors.hpp"
#include "motslab/quadrature.hpp"

namespace motslab {

namespace {

// F(r_h + xi) with the radius carried as an exact hi/lo pair, so xi is not
// rounded away against r_h.
real eval_F(const RadialInitialData& data, real r_h, real xi) {
    const dd r = dd(r_h) + dd(xi);
    const real F = data.F.eval(r).collapse();
    if (!(F > 0) || !std::isfinite(F))
        throw numeric_error("foliation: F must stay finite and positive");
    return F;
}

real theta_plus_xi(const RadialInitialData& data, real r_h, real xi) {
    const ProfileValues pv = profiles_at(data, r_h, xi);
    return pv.ktan + 2 / ((r_h + xi) * pv.F);
}

} // namespace

// ----------------------------------------------------------- chart accessors

real FoliationChart::xi_min() const { return std::exp(x_min); }

real FoliationChart::xi_max() const {
    return std::exp(x_min + dx * static_cast<real>(log_param.size() - 1));
}

real FoliationChart::param_min() const { return std::exp(log_param.front()); }

real FoliationChart::param_max() const { return std::exp(log_param.back()); }

real FoliationChart::param_of_xi(real xi) const {
    if (empty()) throw numeric_error("FoliationChart: empty table");
    if (!(xi > 0)) throw numeric_error("FoliationChart: xi must be positive");
    const real x_top = x_min + dx * static_cast<real>(log_param.size() - 1);
    const real x = std::clamp(std::log(xi), x_min, x_top);
    return std::exp(cubic_sample(x_min, dx, log_param, x));
}

real FoliationChart::xi_of_param(real p) const {
    if (empty()) throw numeric_error("FoliationChart: empty table");
    if (!(p > 0)) throw numeric_error("FoliationChart: parameter must be positive");
    const real lp = std::clamp(std::log(p), log_param.front(), log_param.back());
    // Locate the bracketing cell; table values are strictly increasing.
    const auto it = std::lower_bound(log_param.begin(), log_param.end(), lp);
    std::ptrdiff_t j = it - log_param.begin();
    if (j == 0) return std::exp(x_min);
    const real xa = x_min + dx * static_cast<real>(j - 1);
    const real xb = x_min + dx * static_cast<real>(j);
    // The interpolant matches the table at the nodes, so [xa, xb] brackets.
    const double x = bisect(
        [&](double x_query) {
            return static_cast<double>(
                cubic_sample(x_min, dx, log_param, static_cast<real>(x_query)) - lp);
        },
        static_cast<double>(xa), static_cast<double>(xb), 1e-16, 120);
    return std::exp(static_cast<real>(x));
}

// -------------------------------------------------------------- tau integrals

real tau_from_horizon(const RadialInitialData& data, real r_h, real xi) {
    if (xi < 0) throw numeric_error("tau_from_horizon: negative offset");
    if (xi == 0) return 0;
    // Substitute p = r_h + v^2: the (p - r_h)^(-1/2)-type endpoint becomes a
    // bounded integrand 2 v F(r_h + v^2).
    const real b = std::sqrt(xi);
    const auto g = [&](real v) { return 2 * v * eval_F(data, r_h, v * v); };
    return integrate_adaptive(g, real(0), b, real(1e-300L), real(5e-16L));
}

real tau_segment(const RadialInitialData& data, real r_h, real xi_a, real xi_b) {
    const auto g = [&](real xi) { return eval_F(data, r_h, xi); };
    return gk15_panel(g, xi_a, xi_b).value;
}

real geodesic_distance(const RadialInitialData& data, real r) {
    const real r_h = static_cast<real>(data.r_min);
    if (r < r_h * (1 - 16 * std::numeric_limits<real>::epsilon()) ||
        (r_h == 0 && r < 0))
        throw error("geodesic_distance: r below the inner boundary");
    const real xi = std::max(real(0), r - r_h);
    return tau_from_horizon(data, r_h, xi);
}

real xi_at_tau(const RadialInitialData& data, real r_h, real tau_target) {
    if (!(tau_target > 0))
        throw numeric_error("xi_at_tau: target distance must be positive");
    // Bracket in xi: expand upward until tau >= target, then shrink downward.
    real hi = tau_target;
    for (int guard = 0; tau_from_horizon(data, r_h, hi) < tau_target; ++guard) {
        hi *= 2;
        if (guard > 200) throw numeric_error("xi_at_tau: no upper bracket");
    }
    real lo = hi;
    for (int guard = 0; tau_from_horizon(data, r_h, lo) >= tau_target; ++guard) {
        lo *= 0.25L;
        if (guard > 400) throw numeric_error("xi_at_tau: no lower bracket");
    }
    const double x = bisect(
        [&](double xq) {
            const real xi = std::exp(static_cast<real>(xq));
            return static_cast<double>(tau_from_horizon(data, r_h, xi) - tau_target);
        },
        static_cast<double>(std::log(lo)), static_cast<double>(std::log(hi)),
        1e-14, 300);
    return std::exp(static_cast<real>(x));
}

// --------------------------------------------------------------- chart build

FoliationChart make_chart_lattice(const RadialInitialData& data, real r_h,
                                  real x_min, real dx, std::size_t n) {
    if (!(dx > 0) || n < 4)
        throw config_error("make_chart_lattice: need dx > 0 and n >= 4");

    FoliationChart chart;
    chart.kind = ChartKind::lapse;
    chart.r_h = r_h;
    chart.lapse = 1;
    chart.dx = dx;
    chart.x_min = x_min;
    chart.log_param.resize(n);

    // Cumulative distance: one horizon-anchored integral for the first node,
    // then a single Gauss-Kronrod panel per (narrow) log-spaced segment.
    real xi_prev = std::exp(x_min);
    real acc = tau_from_horizon(data, r_h, xi_prev);
    chart.log_param[0] = std::log(acc);
    for (std::size_t i = 1; i < n; ++i) {
        const real xi_i = std::exp(x_min + dx * static_cast<real>(i));
        acc += tau_segment(data, r_h, xi_prev, xi_i);
        if (!(acc > 0) || !std::isfinite(acc) ||
            !(std::log(acc) > chart.log_param[i - 1]))
            throw numeric_error("make_chart_lattice: parameter failed to increase");
        chart.log_param[i] = std::log(acc);
        xi_prev = xi_i;
    }
    return chart;
}

FoliationChart make_chart(const RadialInitialData& data, real r_h,
                          real xi_lo, real xi_hi, int nodes_per_decade) {
    if (!(xi_lo > 0) || !(xi_hi > xi_lo))
        throw config_error("make_chart: need 0 < xi_lo < xi_hi");
    if (nodes_per_decade < 16)
        throw config_error("make_chart: nodes_per_decade too small");
    const real dx = std::log(real(10)) / nodes_per_decade;
    const real x_min = std::log(xi_lo);
    const real span = std::log(xi_hi) - x_min;
    const std::size_t n =
        std::max<std::size_t>(static_cast<std::size_t>(std::ceil(span / dx)) + 1, 4);
    return make_chart_lattice(data, r_h, x_min, dx, n);
}

// ---------------------------------------------------- eigenvalue and bounds

real principal_eigenvalue(const RadialInitialData& data) {
    const real r_h = static_cast<real>(find_mots(data));
    // theta_plus(r(tau)) / tau at tau, tau/2, tau/4; eliminate the linear and
    // quadratic error terms.
    const real tau0 = 1e-3L * r_h;
    real A[3];
    for (int j = 0; j < 3; ++j) {
        const real tau_j = tau0 / static_cast<real>(1 << j);
        const real xi_j = xi_at_tau(data, r_h, tau_j);
        A[j] = theta_plus_xi(data, r_h, xi_j) / tau_j;
    }
    const real B1 = 2 * A[1] - A[0];
    const real B2 = 2 * A[2] - A[1];
    const real lambda = (4 * B2 - B1) / 3;
    if (!(lambda > 0))
        throw error("principal_eigenvalue: data is not strictly stable "
                    "(principal eigenvalue <= 0)");
    return lambda;
}

ExpansionBounds expansion_bounds(const RadialInitialData& data, real s_max) {
    if (!(s_max > 0))
        throw config_error("expansion_bounds: s_max must be positive");
    const real lambda = principal_eigenvalue(data);
    const real r_h = static_cast<real>(find_mots(data));

    const real xi_hi = xi_at_tau(data, r_h, s_max);
    const real xi_lo = xi_hi * 1e-8L;
    const int n = 10000;
    const real x_lo = std::log(xi_lo);
    const real step = (std::log(xi_hi) - x_lo) / (n - 1);

    real s = tau_from_horizon(data, r_h, xi_lo);
    real xi_prev = xi_lo;
    real sup = 0;
    for (int i = 0; i < n; ++i) {
        const real xi_i = (i == 0) ? xi_lo : std::exp(x_lo + step * i);
        if (i > 0) {
            s += tau_segment(data, r_h, xi_prev, xi_i);
            xi_prev = xi_i;
        }
        const real theta = theta_plus_xi(data, r_h, xi_i);
        sup = std::max(sup, std::abs(theta - lambda * s) / (s * s));
    }

    ExpansionBounds out;
    out.lambda = lambda;
    // 1e-6 headroom keeps the grid sup itself inside the certified bound.
    out.Lambda = sup * (1 + 1e-6L);
    if (out.Lambda > 1e3L * lambda / s_max)
        throw error("expansion_bounds: chart too wide, shrink s_max");
    return out;
}

} // namespace motslab
