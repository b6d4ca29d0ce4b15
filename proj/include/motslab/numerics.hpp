// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "motslab/errors.hpp"

namespace motslab {

// Extended precision is used inside the solvers; public tables are double.
using real = long double;

// ------------------------------------------------------------------ printing

// Fixed float formatting for every CSV/JSON number the toolkit emits.
// %.17g round-trips IEEE doubles, so identical values print identically.
std::string format_double(double v);

// ------------------------------------------------------------------- fitting

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
};

// Ordinary least squares y ~ slope*x + intercept.  Requires n >= 2.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Single-parameter least squares y ~ m*x through the origin.
double proportional_fit(const std::vector<double>& x, const std::vector<double>& y);

// ------------------------------------------------------------- root bracketing

// Bisection to a relative x-tolerance.  f(lo) and f(hi) must have opposite
// signs.  Deterministic: fixed midpoint rule, no FP ties broken by chance.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw numeric_error("bisect: endpoints do not bracket a sign change");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * (std::abs(lo) + std::abs(hi)) * 0.5) break;
    }
    return 0.5 * (lo + hi);
}

// ------------------------------------------------------- uniform-grid stencils

// 5-point first derivative at node i of a uniformly spaced sample set.
// Error O(h^4) in the interior; one-sided forms are used within two nodes of
// either end.
double stencil_derivative(const std::vector<double>& v, std::size_t i, double h);

// 4-point Lagrange interpolation on the uniform grid x0 + j*dx, extended
// precision.  Out-of-range queries clamp to the boundary stencil.
real cubic_sample(real x0, real dx, const std::vector<real>& v, real x);

// 4-point (cubic) Lagrange interpolation on a uniform grid x0 + j*dx.
// Out-of-range queries clamp to the boundary stencil.
class UniformCubic {
public:
    UniformCubic() = default;
    UniformCubic(double x0, double dx, std::vector<double> values);
    double operator()(double x) const;
    bool empty() const { return values_.empty(); }

private:
    double x0_ = 0.0;
    double dx_ = 1.0;
    std::vector<double> values_;
};

// ---------------------------------------------------------------- parallel map

// Number of worker threads: min(MOTSLAB_THREADS, hardware).  Defaults to 1,
// keeping runs deterministic unless the user opts in.
int thread_cap();

// Runs body(i) for i in [0, n).  Each index writes only its own slot, so the
// result is identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// --------------------------------------------------------------------- random

// Deterministic uniform generator: std::mt19937_64 (bit-exact per the
// standard) with a pinned bits-to-double mapping.  The standard
// distributions are implementation-defined, so they are not used.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace motslab
