// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/jang.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "motslab/errors.hpp"
#include "motslab/ode.hpp"

namespace motslab {

namespace {

// f'' solving J = 0 at (r, psi):
//   f'' = (F'/F) psi + (F^2 + psi^2) (W P - 2 psi / (r F^2)),
// with W = sqrt(1 + psi^2/F^2) and P = k_nn/W^2 + k_tan.
real fpp_from(const ProfileValues& pv, real r, real psi) {
    const real F2 = pv.F * pv.F;
    const real q = psi / pv.F;
    const real W = std::sqrt(1 + q * q);
    const real P = pv.knn / (W * W) + pv.ktan;
    return (pv.dF / pv.F) * psi + (F2 + psi * psi) * (W * P - 2 * psi / (r * F2));
}

real mean_curvature_of(const ProfileValues& pv, real r, real fp, real fpp) {
    const real F2 = pv.F * pv.F;
    const real q = fp / pv.F;
    const real W = std::sqrt(1 + q * q);
    return ((fpp - (pv.dF / pv.F) * fp) / (F2 + fp * fp) + 2 * fp / (r * F2)) / W;
}

real momentum_trace_of(const ProfileValues& pv, real fp) {
    const real q = fp / pv.F;
    const real W2 = 1 + q * q;
    return pv.knn / W2 + pv.ktan;
}

} // namespace

real jang_operator(const RadialInitialData& data, real r, real fp, real fpp) {
    if (!(r > data.r_min))
        throw error("jang_operator: r must exceed the inner radius");
    const ProfileValues pv = profiles_at(data, r, 0);
    return mean_curvature_of(pv, r, fp, fpp) - momentum_trace_of(pv, fp);
}

real jang_fpp(const RadialInitialData& data, real r_h, real xi, real psi) {
    const ProfileValues pv = profiles_at(data, r_h, xi);
    return fpp_from(pv, r_h + xi, psi);
}

real schwarzschild_slope(real m, real r) {
    if (!(m > 0)) throw config_error("schwarzschild_slope: mass must be positive");
    if (!(r > 2 * m)) throw error("schwarzschild_slope: r must exceed 2m");
    // -sqrt(16 x / ((x-2)(x^4-16))) at x = r/m, with x^4-16 factored so the
    // only near-horizon cancellation is the explicit (x - 2).
    const real x = r / m;
    return -4 * std::sqrt(x / ((x + 2) * (x * x + 4))) / (x - 2);
}

// ----------------------------------------------------------------- blowup

RadialJangSolution solve_blowup(const RadialInitialData& data, real r_max,
                                real tol) {
    if (!(tol > 0)) throw config_error("solve_blowup: tol must be positive");

    const real r_h = static_cast<real>(find_mots(data));
    if (!(r_max > 20 * r_h))
        throw config_error("solve_blowup: r_max must exceed 20 horizon radii");

    const AdmFit adm = adm_mass(data);
    const real b = static_cast<real>(adm.mass);

    const ExpansionBounds eb = expansion_bounds(data, 0.05L * r_h);
    const real lambda = eb.lambda;
    const real u_star = 1 / (2 * std::sqrt(lambda));

    // Sample lattice, uniform in x = log xi: 512 nodes per decade from
    // xi = 5e-16 r_h out to r_max - r_h.
    const real dxl = std::log(real(10)) / 512;
    const real x0 = std::log(5e-16L * r_h);
    const std::size_t n = static_cast<std::size_t>(
                              std::ceil((std::log(r_max - r_h) - x0) / dxl)) +
                          1;
    const auto xi_at = [&](std::size_t i) {
        return std::exp(x0 + dxl * static_cast<real>(i));
    };
    const real xi_top = xi_at(n - 1);
    const real r_top = r_h + xi_top;

    const std::size_t i_knee = static_cast<std::size_t>(
        std::ceil((std::log(0.25L * r_h) - x0) / dxl));
    const real xi_knee = xi_at(i_knee);
    const real x_knee = x0 + dxl * static_cast<real>(i_knee);

    const auto seed_psi = [&](real c, real r) {
        return -(c / (r * r)) * (1 + b / r);
    };
    const auto seed_f = [&](real c, real r) {
        return c / r + c * b / (2 * r * r);
    };

    // Outer phase, radial variable: y = (psi, f).
    const auto rhs_r = [&](real r, const std::array<real, 2>& y,
                           std::array<real, 2>& dy) {
        const ProfileValues pv = profiles_at(data, r_h, r - r_h);
        dy[0] = fpp_from(pv, r, y[0]);
        dy[1] = y[0];
    };
    // Deep phase, x = log xi with u = -psi xi: y = (u, f).
    const auto rhs_x = [&](real x, const std::array<real, 2>& y,
                           std::array<real, 2>& dy) {
        const real xi = std::exp(x);
        const ProfileValues pv = profiles_at(data, r_h, xi);
        const real psi = -y[0] / xi;
        dy[0] = y[0] - xi * xi * fpp_from(pv, r_h + xi, psi);
        dy[1] = -y[0];
    };

    // Shooting classifier.  Larger c drives psi to -infinity before the
    // horizon (supercritical); smaller c lets u = -psi xi collapse toward 0
    // (subcritical).  On the separatrix u tends to u_star = 1/(2 sqrt(lambda)).
    enum class Cls { sub, super };
    const auto classify = [&](real c, real rtol) -> Cls {
        OdeOptions opt;
        opt.rtol = rtol;
        opt.atol = 1e-22L;
        Cls verdict = Cls::sub;
        bool fired = false;
        try {
            std::array<real, 2> y{seed_psi(c, r_top), seed_f(c, r_top)};
            const auto st = ode_integrate<2>(
                rhs_r, r_top, y, r_h + xi_knee, opt,
                [&](real, const std::array<real, 2>& yy) {
                    if (yy[0] >= 0) {
                        verdict = Cls::sub;
                        fired = true;
                        return false;
                    }
                    if (yy[0] < -1e8L) {
                        verdict = Cls::super;
                        fired = true;
                        return false;
                    }
                    return true;
                });
            if (fired) return verdict;
            std::array<real, 2> yd{-st.y[0] * xi_knee, 0};
            if (!(yd[0] > 0)) return Cls::sub;
            const auto st2 = ode_integrate<2>(
                rhs_x, x_knee, yd, x_knee - 36, opt,
                [&](real, const std::array<real, 2>& yy) {
                    if (yy[0] <= 0.02L * u_star) {
                        verdict = Cls::sub;
                        fired = true;
                        return false;
                    }
                    if (yy[0] >= 50 * u_star) {
                        verdict = Cls::super;
                        fired = true;
                        return false;
                    }
                    return true;
                });
            if (fired) return verdict;
            return (st2.y[0] < u_star) ? Cls::sub : Cls::super;
        } catch (const numeric_error&) {
            // Step-size collapse only happens running into the blowup.
            return Cls::super;
        }
    };

    // Bracket and bisect the decay coefficient.
    const real rtol_cls = 3e-13L;
    real c_lo = r_h * r_h, c_hi = r_h * r_h;
    if (classify(c_lo, rtol_cls) == Cls::sub) {
        for (int i = 0;; ++i) {
            c_hi *= 2;
            if (classify(c_hi, rtol_cls) == Cls::super) break;
            if (i > 60)
                throw numeric_error("solve_blowup: no supercritical bracket");
        }
    } else {
        for (int i = 0;; ++i) {
            c_lo *= 0.5L;
            if (classify(c_lo, rtol_cls) == Cls::sub) break;
            if (i > 60)
                throw numeric_error("solve_blowup: no subcritical bracket");
        }
    }
    for (int it = 0; it < 200 && (c_hi - c_lo) > 3e-14L * c_hi; ++it) {
        const real mid = 0.5L * (c_lo + c_hi);
        if (mid == c_lo || mid == c_hi) break;
        (classify(mid, rtol_cls) == Cls::sub ? c_lo : c_hi) = mid;
    }
    const real c_star = 0.5L * (c_lo + c_hi);

    // Assemble the solution on the lattice.
    RadialJangSolution sol;
    sol.data = data;
    sol.r_h = r_h;
    sol.lambda = lambda;
    sol.c_far = c_star;
    sol.adm = static_cast<real>(adm.mass);
    sol.xi.resize(n);
    sol.f.resize(n);
    sol.fp.resize(n);
    sol.fpp.resize(n);
    sol.tau.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.xi[i] = xi_at(i);

    OdeOptions fine;
    fine.rtol = 1e-13L;
    fine.atol = 1e-22L;

    // Outer sweep with the fitted coefficient, node to node.
    {
        std::array<real, 2> y{seed_psi(c_star, r_top), seed_f(c_star, r_top)};
        const real r3 = r_top * r_top * r_top;
        const real fpp_seed = c_star * (2 / r3 + 3 * b / (r3 * r_top));
        const ProfileValues pv_top = profiles_at(data, r_h, xi_top);
        const real H_seed = mean_curvature_of(pv_top, r_top, y[0], fpp_seed);
        const real J_seed = H_seed - momentum_trace_of(pv_top, y[0]);
        if (std::abs(J_seed) > tol * (1 + std::abs(H_seed)))
            throw numeric_error(
                "solve_blowup: far-field seed series diverges at r_max");

        sol.fp[n - 1] = y[0];
        sol.f[n - 1] = y[1];
        for (std::size_t i = n - 1; i > i_knee; --i) {
            fine.h0 = sol.xi[i] - sol.xi[i - 1];
            const auto st = ode_integrate<2>(rhs_r, r_h + sol.xi[i], y,
                                             r_h + sol.xi[i - 1], fine);
            y = st.y;
            if (!(y[0] < 0))
                throw numeric_error("solve_blowup: slope crossed zero");
            sol.fp[i - 1] = y[0];
            sol.f[i - 1] = y[1];
        }
    }

    // Deep sweep: seed on the separatrix four e-folds below the lattice and
    // integrate upward (the attracting direction), then shift f to match the
    // outer branch at the knee.
    {
        std::array<real, 2> y{u_star, 0};
        fine.h0 = 1;
        auto st = ode_integrate<2>(rhs_x, x0 - 4, y, x0, fine);
        y = st.y;
        std::vector<real> ft(i_knee + 1);
        sol.fp[0] = -y[0] / sol.xi[0];
        ft[0] = y[1];
        for (std::size_t i = 1; i <= i_knee; ++i) {
            fine.h0 = dxl;
            const auto st2 =
                ode_integrate<2>(rhs_x, x0 + dxl * static_cast<real>(i - 1), y,
                                 x0 + dxl * static_cast<real>(i), fine);
            y = st2.y;
            if (i < i_knee) sol.fp[i] = -y[0] / sol.xi[i];
            ft[i] = y[1];
        }
        const real psi_deep = -y[0] / xi_knee;
        const real mismatch =
            std::abs(psi_deep - sol.fp[i_knee]) / std::abs(sol.fp[i_knee]);
        if (mismatch > 1e-9L)
            throw numeric_error(
                "solve_blowup: branch mismatch at the matching radius");
        const real shift = sol.f[i_knee] - ft[i_knee];
        for (std::size_t i = 0; i < i_knee; ++i) sol.f[i] = ft[i] + shift;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!(sol.fp[i] < 0))
            throw numeric_error("solve_blowup: slope crossed zero");
        const ProfileValues pv = profiles_at(data, r_h, sol.xi[i]);
        sol.fpp[i] = fpp_from(pv, r_h + sol.xi[i], sol.fp[i]);
    }

    sol.chart = make_chart_lattice(data, r_h, x0, dxl, n);
    sol.chart.lambda = lambda;
    sol.chart.Lambda = eb.Lambda;
    sol.chart.s_max = 0.05L * r_h;
    for (std::size_t i = 0; i < n; ++i)
        sol.tau[i] = std::exp(sol.chart.log_param[i]);

    return sol;
}

// ----------------------------------------------------------------- sampler

SolutionSampler::SolutionSampler(const RadialJangSolution& sol) {
    const std::size_t n = sol.size();
    if (n < 4) throw numeric_error("SolutionSampler: solution grid too small");
    x0_ = std::log(sol.xi.front());
    dx_ = (std::log(sol.xi.back()) - x0_) / static_cast<real>(n - 1);
    f_ = sol.f;
    log_neg_fp_.resize(n);
    log_tau_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sol.fp[i] < 0) || !(sol.tau[i] > 0))
            throw numeric_error("SolutionSampler: malformed solution");
        log_neg_fp_[i] = std::log(-sol.fp[i]);
        log_tau_[i] = std::log(sol.tau[i]);
    }
}

real SolutionSampler::f_at(real xi) const {
    return cubic_sample(x0_, dx_, f_, std::log(xi));
}

real SolutionSampler::fp_at(real xi) const {
    return -std::exp(cubic_sample(x0_, dx_, log_neg_fp_, std::log(xi)));
}

real SolutionSampler::tau_at(real xi) const {
    return std::exp(cubic_sample(x0_, dx_, log_tau_, std::log(xi)));
}

// ------------------------------------------------------------- blowup rate

BlowupRate verify_blowup_rate(const RadialJangSolution& sol,
                              const FoliationChart& chart) {
    const real inv_sqrt_lambda = 1 / std::sqrt(sol.lambda);
    std::vector<double> lt, fv;
    real sup = 0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const real tau = chart.param_of_xi(sol.xi[i]);
        if (tau < 1e-6L || tau > 1e-3L) continue;
        lt.push_back(static_cast<double>(std::log(tau)));
        fv.push_back(static_cast<double>(sol.f[i]));
        sup = std::max(sup, std::abs(sol.f[i] + inv_sqrt_lambda * std::log(tau)));
    }
    if (lt.size() < 32)
        throw error("verify_blowup_rate: window under-resolved");
    const LinearFit fit = linear_fit(lt, fv);
    BlowupRate out;
    out.slope = static_cast<real>(fit.slope);
    out.sup_bound = sup;
    out.n_points = lt.size();
    return out;
}

// -------------------------------------------------------------- auxiliary

AuxiliarySolution solve_auxiliary(const RadialInitialData& data, real t,
                                  real f_inner, real r_in, real r_max) {
    if (!(t > 0)) throw config_error("solve_auxiliary: t must be positive");
    // Anchor the log grid at the horizon when the data has one.  Large inner
    // boundary values are only attainable when r_in sits close to the
    // horizon, where the solution climbs the blowup cylinder; that wall
    // region is steep in r but smooth in ln(r - r_h).  Data without a MOTS
    // (e.g. flat space) falls back to plain ln r stretching.
    real anchor = 0;
    try {
        anchor = static_cast<real>(find_mots(data));
    } catch (const error&) {
        anchor = 0;
    }
    if (anchor > 0 && !(r_in > anchor))
        throw config_error("solve_auxiliary: r_in must exceed the horizon");
    if (!(r_in > std::max(anchor, static_cast<real>(data.r_min))))
        throw config_error(
            "solve_auxiliary: r_in must exceed the inner radius");
    if (!(r_max > 2 * r_in))
        throw config_error("solve_auxiliary: r_max must exceed 2 r_in");

    const real y_lo = std::log(r_in - anchor);
    const real y_hi = std::log(r_max - anchor);
    int n = static_cast<int>(std::ceil((y_hi - y_lo) / 0.01L)) + 1;
    n = std::clamp(n, 400, 4000);
    const real dy = (y_hi - y_lo) / (n - 1);

    std::vector<real> rs(n), xi(n);
    std::vector<ProfileValues> pv(n);
    for (int j = 0; j < n; ++j) {
        xi[j] = std::exp(y_lo + dy * j);
        rs[j] = anchor + xi[j];
        pv[j] = profiles_at(data, anchor, xi[j]);
    }
    rs[0] = r_in;
    rs[n - 1] = r_max;

    // Interior stencils: uniform second-order differences in y, mapped by
    // f' = f_y / xi and f'' = (f_yy - f_y) / xi^2 with xi = r - anchor.
    std::vector<std::array<real, 3>> wp(n), wpp(n);
    const real i2dy = 1 / (2 * dy);
    const real idy2 = 1 / (dy * dy);
    for (int j = 1; j + 1 < n; ++j) {
        const real x2 = xi[j] * xi[j];
        wp[j] = {-i2dy / xi[j], 0, i2dy / xi[j]};
        wpp[j] = {(idy2 + i2dy) / x2, -2 * idy2 / x2, (idy2 - i2dy) / x2};
    }

    const auto J_at = [&](int j, real fp, real fpp) {
        return mean_curvature_of(pv[j], rs[j], fp, fpp) -
               momentum_trace_of(pv[j], fp);
    };

    AuxiliarySolution out;
    out.anchor = anchor;

    std::vector<real> f(n, 0);
    const real tk = t;
    const real robin = std::sqrt(tk) + 1 / r_max;
    const real h_bc = rs[n - 1] - rs[n - 2];

    // Residual over the unknowns f[1..n-1]; index i = j - 1.  The last row
    // is the Robin far-field closure f' + (sqrt(t) + 1/r_max) f = 0, the
    // logarithmic derivative of the exp(-sqrt(t) r)/r tail.
    const auto residual = [&](const std::vector<real>& g,
                              std::vector<real>& R) {
        for (int j = 1; j + 1 < n; ++j) {
            const real fp = wp[j][0] * g[j - 1] + wp[j][1] * g[j] +
                            wp[j][2] * g[j + 1];
            const real fpp = wpp[j][0] * g[j - 1] + wpp[j][1] * g[j] +
                             wpp[j][2] * g[j + 1];
            R[j - 1] = J_at(j, fp, fpp) - tk * g[j];
        }
        R[n - 2] = (g[n - 1] - g[n - 2]) / h_bc + robin * g[n - 1];
    };

    std::vector<real> sub(n - 1), diag(n - 1), sup(n - 1), mrow(n - 1),
        dg(n - 1), rhs(n - 1);

    // Tridiagonal Jacobian rows at g: chain rule through (fp, fpp), with the
    // J partials taken by central differences on cached profiles.  mrow
    // records each row's magnitude so residuals can be judged in units of
    // the local f correction they demand; raw near-horizon rows grow like
    // 1/xi and would otherwise drown the far field in rounding noise.
    const auto assemble = [&](const std::vector<real>& g) {
        for (int j = 1; j + 1 < n; ++j) {
            const real fp = wp[j][0] * g[j - 1] + wp[j][1] * g[j] +
                            wp[j][2] * g[j + 1];
            const real fpp = wpp[j][0] * g[j - 1] + wpp[j][1] * g[j] +
                             wpp[j][2] * g[j + 1];
            const real d1 = 1e-7L * (1 + std::abs(fp));
            const real d2 = 1e-7L * (1 + std::abs(fpp));
            const real Jfp =
                (J_at(j, fp + d1, fpp) - J_at(j, fp - d1, fpp)) / (2 * d1);
            const real Jfpp =
                (J_at(j, fp, fpp + d2) - J_at(j, fp, fpp - d2)) / (2 * d2);
            const int i = j - 1;
            sub[i] = Jfp * wp[j][0] + Jfpp * wpp[j][0];
            diag[i] = Jfp * wp[j][1] + Jfpp * wpp[j][1] - tk;
            sup[i] = Jfp * wp[j][2] + Jfpp * wpp[j][2];
        }
        sub[n - 2] = -1 / h_bc;
        diag[n - 2] = 1 / h_bc + robin;
        sup[n - 2] = 0;
        for (int i = 0; i < n - 1; ++i)
            mrow[i] = std::max(
                {std::abs(sub[i]), std::abs(diag[i]), std::abs(sup[i])});
    };

    const auto scaled_norm = [&](const std::vector<real>& v) {
        real acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const real q = v[i] / mrow[i];
            acc += q * q;
        }
        return std::sqrt(acc / static_cast<real>(v.size()));
    };

    // Thomas elimination; dg holds the diagonal and x the right-hand side on
    // entry, the solution on exit.  Both are overwritten.
    const auto thomas = [&](std::vector<real>& x) {
        for (int i = 1; i < n - 1; ++i) {
            const real m = sub[i] / dg[i - 1];
            dg[i] -= m * sup[i - 1];
            x[i] -= m * x[i - 1];
        }
        if (dg[n - 2] == 0)
            throw numeric_error("solve_auxiliary: singular Jacobian");
        x[n - 2] /= dg[n - 2];
        for (int i = n - 3; i >= 0; --i)
            x[i] = (x[i] - sup[i] * x[i + 1]) / dg[i];
    };

    // Continuation in the wall height: ramp the inner boundary value toward
    // f_inner at fixed t, re-converging after each increment.  Every stage
    // is seeded by the tangent predictor, the linear response to a unit
    // boundary increment; a stage that stagnates is rolled back and retried
    // with half the increment.
    const real mag = std::abs(f_inner);
    const real sgn = f_inner < 0 ? real(-1) : real(1);
    real b_cur = 0;
    real db = real(0.28L);
    std::vector<real> R(n - 1), Rtrial(n - 1), trial(n), f_saved(n);
    while (b_cur < mag) {
        const real b_new = std::min(mag, b_cur + db);
        const real inc = sgn * (b_new - b_cur);
        f_saved = f;

        assemble(f);
        {
            std::vector<real> phi(n - 1, 0);
            phi[0] = -sub[0];  // only the first row couples to f[0]
            dg = diag;
            thomas(phi);
            real pmax = 1;
            for (real x : phi) pmax = std::max(pmax, std::abs(x));
            if (pmax <= 3) {
                for (int j = 1; j < n; ++j) f[j] += inc * phi[j - 1];
            } else {
                // Ill-conditioned response: fall back to the cylinder-mode
                // decay exp(-(y - y_lo)/2) of a near-horizon perturbation.
                for (int j = 1; j < n; ++j)
                    f[j] +=
                        inc * std::exp(-real(0.5L) * dy * static_cast<real>(j));
            }
        }
        f[0] = sgn * b_new;

        residual(f, R);
        bool stage_ok = false;
        real Delta = 1;
        int it = 0;
        for (; it < 200; ++it) {
            real fmax = 0;
            for (real x : f) fmax = std::max(fmax, std::abs(x));
            assemble(f);
            const real rnorm = scaled_norm(R);
            if (it > 0 && rnorm <= 1e-12L * (1 + fmax)) {
                stage_ok = true;
                break;
            }

            // Pseudo-transient damping: (J - I/Delta) delta = -R is a
            // backward-Euler step of the stable parabolic flow
            // df/ds = J[f] - t f.  Delta grows on success toward plain
            // Newton and shrinks on failure; this rides through the
            // near-singular Jacobians of the quasilinear wall.
            bool accepted = false;
            while (!accepted) {
                // The interior diagonal of J is strongly negative, so the
                // -1/Delta shift moves it further from zero.  The outer
                // boundary row is linear algebraic and stays unshifted so it
                // is exactly enforced at every Delta.
                for (int i = 0; i < n - 2; ++i) dg[i] = diag[i] - 1 / Delta;
                dg[n - 2] = diag[n - 2];
                for (int i = 0; i < n - 1; ++i) rhs[i] = -R[i];
                thomas(rhs);

                // Fractional steps along the direction tame the quadratic
                // error of full steps near convergence; soft far-field modes
                // make full steps large.
                for (real s :
                     {real(1), real(0.5L), real(0.25L), real(0.125L)}) {
                    trial = f;
                    for (int i = 0; i < n - 1; ++i)
                        trial[i + 1] += s * rhs[i];
                    residual(trial, Rtrial);
                    if (scaled_norm(Rtrial) < rnorm * (1 - 1e-6L * s)) {
                        f = trial;
                        R = Rtrial;
                        if (s == 1) Delta = std::min(Delta * 2, real(1e12L));
                        accepted = true;
                        break;
                    }
                }
                if (accepted) break;
                Delta /= 8;
                if (Delta >= 1e-10L) continue;

                // No decreasing step at any damping.  If the plain Newton
                // correction is already negligible the iterate sits on the
                // discrete solution at the rounding floor: certify and stop.
                // Otherwise the stage has genuinely stagnated.
                dg = diag;
                for (int i = 0; i < n - 1; ++i) rhs[i] = -R[i];
                thomas(rhs);
                real dn = 0;
                for (int i = 0; i < n - 1; ++i)
                    dn = std::max(dn, std::abs(rhs[i]));
                stage_ok = dn <= 1e-6L * (1 + fmax);
                break;
            }
            if (!accepted) break;
        }
        out.newton_steps += it;
        if (!stage_ok) {
            f = f_saved;
            db /= 2;
            if (db < 1e-4L)
                throw numeric_error("solve_auxiliary: Newton stagnation");
            continue;
        }
        b_cur = b_new;
        db *= real(1.4L);
    }
    out.r = rs;
    out.f = f;
    real fmax = 0;
    for (real x : f) fmax = std::max(fmax, std::abs(x));
    out.sup_tf = t * fmax;
    return out;
}

real AuxiliarySolution::value_at(real rq) const {
    if (r.size() < 4 || !(rq >= r.front()) || !(rq <= r.back()))
        throw numeric_error("AuxiliarySolution: sample radius out of range");
    std::size_t j =
        static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), rq) -
                                 r.begin());
    if (j > 0) --j;
    const std::size_t j0 = std::min(j > 0 ? j - 1 : 0, r.size() - 4);
    // 4-point Lagrange in the grid coordinate y = ln(r - anchor).
    const real u = std::log(rq - anchor);
    real acc = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        const real ua = std::log(r[j0 + a] - anchor);
        real w = 1;
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) continue;
            const real ub = std::log(r[j0 + b] - anchor);
            w *= (u - ub) / (ua - ub);
        }
        acc += w * f[j0 + a];
    }
    return acc;
}

} // namespace motslab
