// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/spinor.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "motslab/errors.hpp"
#include "motslab/penrose.hpp"
#include "motslab/quadrature.hpp"

namespace motslab {

namespace {

// sqrt(gbar_rr) evaluated at the horizon offset xi = rho - r_h.  Inside the
// solution grid the slope comes from the sampler; past the cut the far field
// is modeled by the leading f' ~ -c/rho^2 decay frozen at the cut.  Offsets
// are taken directly (never reconstructed as rho - r_h) so near-horizon
// evaluations stay smooth at working precision.
struct SliceFactor {
    const RadialInitialData* data = nullptr;
    const SolutionSampler* samp = nullptr;
    real r_h = 0;
    real xi_cut = 0;
    real edge_c = 0;  // |f'(cut)| * r_cut^2

    real at_xi(real xi) const {
        const real rho = r_h + xi;
        const real fp = xi <= xi_cut ? samp->fp_at(xi) : -edge_c / (rho * rho);
        const ProfileValues pv = profiles_at(*data, r_h, xi);
        return std::hypot(pv.F, fp);
    }
};

SliceFactor make_factor(const RadialInitialData& data,
                        const SolutionSampler& samp, real r_h) {
    SliceFactor sf;
    sf.data = &data;
    sf.samp = &samp;
    sf.r_h = r_h;
    sf.xi_cut = samp.xi_hi() * 0.98L;
    const real r_cut = r_h + sf.xi_cut;
    sf.edge_c = -samp.fp_at(sf.xi_cut) * r_cut * r_cut;
    return sf;
}

// Integral_s^inf (F(x) - 1)/x dx for s at or beyond the grid top, by the
// inversion u = 1/x; the integrand tends to the mass-like coefficient of
// F - 1 ~ m/x as u -> 0.
real log_tail(const SliceFactor& sf, real s) {
    const auto g = [&](real u) {
        const real x = 1 / u;
        return (sf.at_xi(x - sf.r_h) - 1) / u;
    };
    return integrate_adaptive(g, real(0), 1 / s, real(1e-16L), real(1e-13L));
}

real grid_offset(const RadialSpinorProfile& profile, real r) {
    const real xi = r - profile.r_h;
    const real lo = std::exp(profile.v0);
    const real hi = std::exp(profile.v0 + profile.dv *
                                              real(profile.r.size() - 1));
    // One interpolation cell of slack at each end absorbs endpoint roundoff.
    if (!(xi >= lo * std::exp(-profile.dv) && xi <= hi * std::exp(profile.dv)))
        throw error("spinor: radius outside the profile grid");
    return xi;
}

// Interior energy density in the offset-log coordinate v = ln(r - r_h):
// (F-1)^2 h^2 / F integrated against dr = xi dv.
struct EnergyIntegrand {
    const RadialSpinorProfile* profile;
    real operator()(real v) const {
        const real xi = std::exp(v);
        const real h = std::exp(
            cubic_sample(profile->v0, profile->dv, profile->log_h, v));
        const real F = cubic_sample(profile->v0, profile->dv, profile->F_slice,
                                    v);
        const real d = F - 1;
        return d * d * h * h / F * xi;
    }
};

// Tail piece of the energy from the grid top outward, with h continued by
// its own defining integral.
real energy_tail(const SliceFactor& sf, real s_top) {
    const auto g = [&](real u) {
        const real x = 1 / u;
        const real F = sf.at_xi(x - sf.r_h);
        const real h = std::exp(-log_tail(sf, x));
        const real d = F - 1;
        return d * d * h * h / F / (u * u);
    };
    return integrate_adaptive(g, real(0), 1 / s_top, real(1e-14L),
                              real(1e-11L));
}

real interior_energy(const RadialSpinorProfile& profile, real r_lo) {
    const real xi_lo = grid_offset(profile, r_lo);
    const real v_hi = profile.v0 + profile.dv * real(profile.r.size() - 1);
    const EnergyIntegrand g{&profile};
    return integrate_adaptive(g, std::log(xi_lo), v_hi, real(1e-12L),
                              real(1e-10L));
}

// Samples a quantity at offsets scale*{1e-4,1e-5,1e-6} above the horizon.
// Deviations from the limit are linear in the offset, so the last two
// samples of the ladder extrapolate the limit via the geometric ratio 10.
template <class Eval>
std::array<real, 3> horizon_ladder(real r_h, Eval&& eval) {
    const real scale = r_h / 2;
    return {eval(r_h + scale * 1e-4L), eval(r_h + scale * 1e-5L),
            eval(r_h + scale * 1e-6L)};
}

real extrapolate_ladder(const std::array<real, 3>& e) {
    return e[2] + (e[2] - e[1]) / 9;
}

}  // namespace

RadialSpinorProfile h_profile(const RadialInitialData& data,
                              const RadialJangSolution& sol,
                              std::size_t n_samples) {
    if (n_samples < 5 || n_samples % 2 == 0)
        throw config_error("h_profile: sample count must be odd and >= 5");
    const SolutionSampler samp(sol);
    const SliceFactor sf = make_factor(data, samp, sol.r_h);

    RadialSpinorProfile profile;
    profile.r_h = sol.r_h;
    const real xi_min =
        std::max(samp.xi_lo() * 4, real(1e-9L) * (sol.r_h / 2));
    const real xi_max = sf.xi_cut;
    profile.v0 = std::log(xi_min);
    profile.dv = (std::log(xi_max) - profile.v0) / real(n_samples - 1);

    // F at nodes and midpoints feeds one Simpson panel per interval of the
    // cumulative integral L(r) = Integral_r^inf (F-1)/s ds, swept downward
    // from the analytic tail at the grid top.
    std::vector<real> Fv(n_samples), gv(n_samples), gmid(n_samples - 1);
    const auto g_of = [&](real v) {
        const real xi = std::exp(v);
        return (sf.at_xi(xi) - 1) * xi / (profile.r_h + xi);
    };
    for (std::size_t i = 0; i < n_samples; ++i) {
        const real v = profile.v0 + profile.dv * real(i);
        const real xi = std::exp(v);
        Fv[i] = sf.at_xi(xi);
        gv[i] = (Fv[i] - 1) * xi / (profile.r_h + xi);
        if (i + 1 < n_samples) gmid[i] = g_of(v + profile.dv / 2);
    }

    std::vector<real> L(n_samples);
    L[n_samples - 1] = log_tail(sf, profile.r_h + xi_max);
    for (std::size_t i = n_samples - 1; i > 0; --i)
        L[i - 1] =
            L[i] + profile.dv / 6 * (gv[i - 1] + 4 * gmid[i - 1] + gv[i]);

    profile.r.resize(n_samples);
    profile.h.resize(n_samples);
    profile.log_h.resize(n_samples);
    profile.F_slice = std::move(Fv);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const real v = profile.v0 + profile.dv * real(i);
        profile.r[i] = profile.r_h + std::exp(v);
        profile.log_h[i] = -L[i];
        profile.h[i] = std::exp(-L[i]);
    }
    if (!(profile.F_slice.back() < 1.5L))
        throw numeric_error(
            "h_profile: slice factor does not approach 1 at the grid top");
    profile.tail_energy = energy_tail(sf, profile.r_h + xi_max);
    return profile;
}

real h_at(const RadialSpinorProfile& profile, real r) {
    const real xi = grid_offset(profile, r);
    return std::exp(
        cubic_sample(profile.v0, profile.dv, profile.log_h, std::log(xi)));
}

real slice_factor_at(const RadialSpinorProfile& profile, real r) {
    const real xi = grid_offset(profile, r);
    return cubic_sample(profile.v0, profile.dv, profile.F_slice, std::log(xi));
}

real hprime_at(const RadialSpinorProfile& profile, real r) {
    return (slice_factor_at(profile, r) - 1) * h_at(profile, r) / r;
}

SpinorSample spinor_sample(const RadialSpinorProfile& profile, real r) {
    SpinorSample out;
    out.r = r;
    out.h = h_at(profile, r);
    const real F = slice_factor_at(profile, r);
    out.hprime = (F - 1) * out.h / r;
    const real d = F - 1;
    out.integrand_dirichlet = d * d * out.h * out.h / F;
    out.integrand_full = 1.5L * out.integrand_dirichlet;
    return out;
}

real boundary_dirac_eigenvalue(real r0) {
    if (!(r0 > 0))
        throw error("boundary_dirac_eigenvalue: radius must be positive");
    return -1 / r0;
}

real dirichlet_energy(const RadialSpinorProfile& profile, real r_lo) {
    return interior_energy(profile, r_lo) + profile.tail_energy;
}

real dirichlet_energy_limit(const RadialSpinorProfile& profile) {
    const std::array<real, 3> e = horizon_ladder(profile.r_h, [&](real r_lo) {
        return dirichlet_energy(profile, r_lo);
    });
    // Positive integrand: the energy grows as the lower limit descends.
    if (!(e[0] <= e[1] && e[1] <= e[2]))
        throw numeric_error(
            "dirichlet_energy_limit: energy ladder is not monotone");
    return extrapolate_ladder(e);
}

real full_spinor_energy(const RadialInitialData& data,
                        const RadialJangSolution& sol,
                        const RadialSpinorProfile& profile) {
    return extrapolate_ladder(horizon_ladder(profile.r_h, [&](real r_lo) {
        const real interior = 1.5L * dirichlet_energy(profile, r_lo);
        const real c = c_coefficient(data, sol, r_lo);
        const real h = h_at(profile, r_lo);
        return interior + r_lo * c * h * h / 2;
    }));
}

}  // namespace motslab
