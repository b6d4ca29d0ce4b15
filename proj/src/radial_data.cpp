// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/radial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "motslab/dd.hpp"

namespace motslab {

namespace {

RadialInitialData finish(ProfileExpr F, ProfileExpr knn, ProfileExpr ktan,
                         double r_min, std::string label) {
    RadialInitialData d;
    d.dF = F.differentiate();
    d.dk_nn = knn.differentiate();
    d.dk_tan = ktan.differentiate();
    d.F = std::move(F);
    d.k_nn = std::move(knn);
    d.k_tan = std::move(ktan);
    d.r_min = r_min;
    d.label = std::move(label);
    return d;
}

}  // namespace

RadialInitialData schwarzschild(double m) {
    if (!(m > 0)) throw config_error("schwarzschild: mass must be positive");
    const std::string two_m = format_double(2.0 * m);
    return finish(ProfileExpr::parse("sqrt(r/(r-" + two_m + "))"),
                  ProfileExpr::parse("0"), ProfileExpr::parse("0"), 2.0 * m,
                  "schwarzschild m=" + format_double(m));
}

RadialInitialData flat_data() {
    return finish(ProfileExpr::parse("1"), ProfileExpr::parse("0"),
                  ProfileExpr::parse("0"), 0.0, "flat");
}

RadialInitialData custom_data(const std::string& f_text,
                              const std::string& k_nn_text,
                              const std::string& k_tan_text, double r_min,
                              const std::string& label) {
    return finish(ProfileExpr::parse(f_text), ProfileExpr::parse(k_nn_text),
                  ProfileExpr::parse(k_tan_text), r_min, label);
}

SphereGeometry sphere_geometry(const RadialInitialData& data, double r) {
    if (r < data.r_min)
        throw error("sphere_geometry: r below r_min");
    double r_eval = r;
    if (r == data.r_min) {
        // One-sided limit; profiles may pole exactly on the boundary.
        r_eval = r * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
        if (r_eval == r) r_eval = std::nextafter(r, r + 1.0);
    }
    const double F = data.F.eval(r_eval);
    if (!(F > 0))
        throw numeric_error("sphere_geometry: F(r) must be positive");
    const double knn = data.k_nn.eval(r_eval);
    const double ktan = data.k_tan.eval(r_eval);

    SphereGeometry s;
    s.r = r;
    s.area = 4.0 * M_PI * r * r;
    s.H = 2.0 / (r_eval * F);
    s.k_nn = knn;
    s.trk = knn + ktan;
    s.theta_plus = ktan + s.H;
    s.theta_minus = ktan - s.H;
    return s;
}

double find_mots(const RadialInitialData& data) {
    const double lo = data.r_min > 0 ? data.r_min : 1e-3;
    const double hi = 100.0 * std::max(data.r_min, 1.0);
    constexpr int kScan = 4096;

    const auto theta = [&](double r) {
        const double F = data.F.eval(r);
        return data.k_tan.eval(r) + 2.0 / (r * F);
    };

    // Log-spaced scan strictly inside (lo, hi].
    std::vector<double> rs(kScan), th(kScan);
    const double ratio = hi / lo;
    for (int i = 0; i < kScan; ++i) {
        rs[i] = lo * std::pow(ratio, (i + 1.0) / kScan);
        th[i] = theta(rs[i]);
    }

    // Candidate roots from sign changes; keep the smallest one with
    // theta_plus positive at every scan node beyond it.
    for (int i = 0; i + 1 < kScan; ++i) {
        if (!(th[i] <= 0.0 && th[i + 1] > 0.0) &&
            !(th[i] >= 0.0 && th[i + 1] < 0.0))
            continue;
        bool positive_beyond = true;
        for (int j = i + 1; j < kScan; ++j)
            if (th[j] <= 0.0) {
                positive_beyond = false;
                break;
            }
        if (!positive_beyond) continue;
        if (th[i] == 0.0) return rs[i];
        return bisect(theta, rs[i], rs[i + 1], 1e-12);
    }

    // No interior sign change.  If theta_plus > 0 everywhere and vanishes
    // approaching r_min, the MOTS sits exactly on the coordinate boundary.
    if (data.r_min > 0) {
        bool all_positive = true;
        for (int i = 0; i < kScan; ++i)
            if (th[i] <= 0.0) all_positive = false;
        if (all_positive) {
            double prev = std::numeric_limits<double>::infinity();
            bool vanishing = true;
            for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
                const double t = theta(data.r_min * (1.0 + eps));
                if (!(std::abs(t) < std::abs(prev))) vanishing = false;
                prev = t;
            }
            if (vanishing && std::abs(prev) < 1e-4) return data.r_min;
        }
    }
    throw error("no MOTS: theta_plus has no admissible root in the scan range");
}

AdmFit adm_mass(const RadialInitialData& data) {
    const double R = 100.0 * std::max(data.r_min, 1.0);
    constexpr int kSamples = 64;
    std::vector<double> x(kSamples), y(kSamples);
    double max_y = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double r = R * std::pow(4.0, i / (kSamples - 1.0));
        const double F = data.F.eval(r);
        x[i] = 2.0 / r;
        y[i] = 1.0 - 1.0 / (F * F);
        max_y = std::max(max_y, std::abs(y[i]));
    }
    AdmFit fit;
    fit.mass = proportional_fit(x, y);
    for (int i = 0; i < kSamples; ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(y[i] - fit.mass * x[i]));
    // Pure Schwarzschild tails leave only roundoff; allow one more decaying
    // order (|x|^-2 relative to the 1/r term) before declaring a mismatch.
    const double tol = 0.05 * std::max(max_y, 2.0 / R);
    if (fit.max_residual > tol)
        throw numeric_error(
            "adm_mass: not asymptotically Schwarzschildian at declared order");
    return fit;
}

ProfileValues profiles_at(const RadialInitialData& data, real base, real offset) {
    const dd r = dd(base) + dd(offset);
    ProfileValues v;
    v.F = data.F.eval(r).collapse();
    v.dF = data.dF.eval(r).collapse();
    if (data.time_symmetric()) {
        v.knn = 0;
        v.ktan = 0;
        v.dktan = 0;
    } else {
        v.knn = data.k_nn.eval(r).collapse();
        v.ktan = data.k_tan.eval(r).collapse();
        v.dktan = data.dk_tan.eval(r).collapse();
    }
    return v;
}

}  // namespace motslab
