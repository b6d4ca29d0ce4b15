// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/numerics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace motslab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw numeric_error("linear_fit: need two matched samples or more");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    if (sxx == 0.0) throw numeric_error("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
    }
    return fit;
}

double proportional_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw numeric_error("proportional_fit: need matched samples");
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    if (sxx == 0.0) throw numeric_error("proportional_fit: degenerate abscissae");
    return sxy / sxx;
}

double stencil_derivative(const std::vector<double>& v, std::size_t i, double h) {
    const std::size_t n = v.size();
    if (n < 5) throw numeric_error("stencil_derivative: need at least 5 samples");
    if (i >= 2 && i + 2 < n) {
        return (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    }
    if (i < 2) {
        // forward 5-point, O(h^4)
        const std::size_t j = i;
        return (-25.0 * v[j] + 48.0 * v[j + 1] - 36.0 * v[j + 2] + 16.0 * v[j + 3] -
                3.0 * v[j + 4]) /
               (12.0 * h);
    }
    const std::size_t j = i;
    return (25.0 * v[j] - 48.0 * v[j - 1] + 36.0 * v[j - 2] - 16.0 * v[j - 3] +
            3.0 * v[j - 4]) /
           (12.0 * h);
}

real cubic_sample(real x0, real dx, const std::vector<real>& v, real x) {
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    if (n < 4) throw numeric_error("cubic_sample: need at least 4 samples");
    const real u = (x - x0) / dx;
    auto j = static_cast<std::ptrdiff_t>(std::floor(u));
    j = std::clamp<std::ptrdiff_t>(j, 1, n - 3);
    const real t = u - static_cast<real>(j);
    const real wm = -t * (t - 1) * (t - 2) / 6;
    const real w0 = (t + 1) * (t - 1) * (t - 2) / 2;
    const real w1 = -(t + 1) * t * (t - 2) / 2;
    const real w2 = (t + 1) * t * (t - 1) / 6;
    return wm * v[j - 1] + w0 * v[j] + w1 * v[j + 1] + w2 * v[j + 2];
}

UniformCubic::UniformCubic(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), values_(std::move(values)) {
    if (values_.size() < 4)
        throw numeric_error("UniformCubic: need at least 4 samples");
    if (dx_ == 0.0) throw numeric_error("UniformCubic: zero spacing");
}

double UniformCubic::operator()(double x) const {
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    double u = (x - x0_) / dx_;
    auto i = static_cast<std::ptrdiff_t>(std::floor(u));
    // Clamp so nodes i-1 .. i+2 exist; queries outside extrapolate from the
    // boundary stencil.
    i = std::clamp<std::ptrdiff_t>(i, 1, n - 3);
    const double t = u - static_cast<double>(i);
    const double vm = values_[i - 1], v0 = values_[i], v1 = values_[i + 1],
                 v2 = values_[i + 2];
    const double wm = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
    return wm * vm + w0 * v0 + w1 * v1 + w2 * v2;
}

int thread_cap() {
    int cap = 1;
    if (const char* env = std::getenv("MOTSLAB_THREADS")) {
        cap = std::atoi(env);
        if (cap < 1) cap = 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0) cap = std::min<int>(cap, static_cast<int>(hw));
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int threads = thread_cap();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto t = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                // Contiguous slabs; every index touched exactly once.
                const std::size_t lo = n * w / t;
                const std::size_t hi = n * (w + 1) / t;
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace motslab
