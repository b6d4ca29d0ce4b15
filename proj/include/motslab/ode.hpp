// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "motslab/errors.hpp"
#include "motslab/numerics.hpp"

namespace motslab {

/*
   Embedded Dormand-Prince 5(4) pair with standard step control.

     y_{n+1} = y_n + h * sum b_i k_i        (5th order, FSAL)
     error   = h * sum (b_i - b*_i) k_i     (against the embedded 4th order)

   Steps in either direction (h keeps the sign of x1 - x0).  The observer
   runs after every accepted step and may stop the run early, which is how
   the shooting classifier detects divergence without precise event times.
*/

struct OdeOptions {
    real rtol = 1e-12L;
    real atol = 1e-14L;
    real h0 = 0;          // 0: pick from the interval length
    real hmax = 0;        // 0: no cap
    std::int64_t max_steps = 4000000;
};

template <int N>
struct OdeState {
    real x = 0;
    std::array<real, N> y{};
    bool stopped = false;       // observer requested stop
    std::int64_t steps = 0;     // accepted steps
};

namespace dp {

inline constexpr real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5,
                      c5 = 8.0L / 9;

inline constexpr real a21 = 1.0L / 5;
inline constexpr real a31 = 3.0L / 40, a32 = 9.0L / 40;
inline constexpr real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
inline constexpr real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187,
                      a53 = 64448.0L / 6561, a54 = -212.0L / 729;
inline constexpr real a61 = 9017.0L / 3168, a62 = -355.0L / 33,
                      a63 = 46732.0L / 5247, a64 = 49.0L / 176,
                      a65 = -5103.0L / 18656;
inline constexpr real b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
                      b5 = -2187.0L / 6784, b6 = 11.0L / 84;
inline constexpr real e1 = b1 - 5179.0L / 57600, e3 = b3 - 7571.0L / 16695,
                      e4 = b4 - 393.0L / 640, e5 = b5 + 92097.0L / 339200,
                      e6 = b6 - 187.0L / 2100, e7 = -1.0L / 40;

}  // namespace dp

// Integrates y' = f(x, y) from (x0, y0) to x1.  The observer is
// obs(x, y) -> bool; returning false stops integration after that step.
template <int N, class RHS, class Observer>
OdeState<N> ode_integrate(RHS&& f, real x0, const std::array<real, N>& y0,
                          real x1, const OdeOptions& opt, Observer&& obs) {
    using Vec = std::array<real, N>;
    OdeState<N> st;
    st.x = x0;
    st.y = y0;
    if (x1 == x0) return st;

    const real dir = (x1 > x0) ? 1.0L : -1.0L;
    const real span = std::abs(x1 - x0);
    real h = (opt.h0 > 0 ? opt.h0 : span / 100) * dir;
    if (opt.hmax > 0 && std::abs(h) > opt.hmax) h = opt.hmax * dir;

    Vec k1, k2, k3, k4, k5, k6, k7, yt, ynew, yerr;
    f(st.x, st.y, k1);  // FSAL seed

    while ((x1 - st.x) * dir > 0) {
        if (st.steps >= opt.max_steps)
            throw numeric_error("ode_integrate: step budget exhausted");
        // Clamp onto the endpoint so the final state lands exactly on x1.
        if ((st.x + h - x1) * dir > 0) h = x1 - st.x;

        for (int i = 0; i < N; ++i) yt[i] = st.y[i] + h * dp::a21 * k1[i];
        f(st.x + dp::c2 * h, yt, k2);
        for (int i = 0; i < N; ++i)
            yt[i] = st.y[i] + h * (dp::a31 * k1[i] + dp::a32 * k2[i]);
        f(st.x + dp::c3 * h, yt, k3);
        for (int i = 0; i < N; ++i)
            yt[i] = st.y[i] +
                    h * (dp::a41 * k1[i] + dp::a42 * k2[i] + dp::a43 * k3[i]);
        f(st.x + dp::c4 * h, yt, k4);
        for (int i = 0; i < N; ++i)
            yt[i] = st.y[i] + h * (dp::a51 * k1[i] + dp::a52 * k2[i] +
                                   dp::a53 * k3[i] + dp::a54 * k4[i]);
        f(st.x + dp::c5 * h, yt, k5);
        for (int i = 0; i < N; ++i)
            yt[i] = st.y[i] + h * (dp::a61 * k1[i] + dp::a62 * k2[i] +
                                   dp::a63 * k3[i] + dp::a64 * k4[i] +
                                   dp::a65 * k5[i]);
        f(st.x + h, yt, k6);
        for (int i = 0; i < N; ++i)
            ynew[i] = st.y[i] + h * (dp::b1 * k1[i] + dp::b3 * k3[i] +
                                     dp::b4 * k4[i] + dp::b5 * k5[i] +
                                     dp::b6 * k6[i]);
        f(st.x + h, ynew, k7);
        for (int i = 0; i < N; ++i)
            yerr[i] = h * (dp::e1 * k1[i] + dp::e3 * k3[i] + dp::e4 * k4[i] +
                           dp::e5 * k5[i] + dp::e6 * k6[i] + dp::e7 * k7[i]);

        real norm2 = 0;
        for (int i = 0; i < N; ++i) {
            const real scale =
                opt.atol + opt.rtol * std::max(std::abs(st.y[i]), std::abs(ynew[i]));
            const real e = yerr[i] / scale;
            norm2 += e * e;
        }
        const real err = std::sqrt(norm2 / N);

        if (err <= 1.0L) {
            st.x += h;
            st.y = ynew;
            k1 = k7;  // FSAL
            ++st.steps;
            // Snap a sub-ulp remainder so the loop always terminates.
            const real snap = 4 * std::numeric_limits<real>::epsilon() *
                              (std::abs(x1) + std::abs(st.x));
            if ((x1 - st.x) * dir <= snap) st.x = x1;
            if (!obs(st.x, st.y)) {
                st.stopped = true;
                return st;
            }
        }

        real factor = (err > 0) ? 0.9L * std::pow(err, -0.2L) : 5.0L;
        factor = std::min(factor, 5.0L);
        factor = std::max(factor, 0.2L);
        real hnew = h * factor;
        if (opt.hmax > 0 && std::abs(hnew) > opt.hmax) hnew = opt.hmax * dir;
        if (st.x + hnew == st.x)
            throw numeric_error("ode_integrate: step size underflow");
        h = hnew;
    }
    return st;
}

template <int N, class RHS>
OdeState<N> ode_integrate(RHS&& f, real x0, const std::array<real, N>& y0,
                          real x1, const OdeOptions& opt) {
    return ode_integrate<N>(f, x0, y0, x1, opt,
                            [](real, const std::array<real, N>&) { return true; });
}

}  // namespace motslab
