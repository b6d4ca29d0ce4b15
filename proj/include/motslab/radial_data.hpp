// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <string>

#include "motslab/expr.hpp"
#include "motslab/numerics.hpp"

namespace motslab {

/*
   Spherically symmetric initial data (M, g, k):

     g = F(r)^2 dr^2 + r^2 dOmega^2
     k encoded by the two scalars the radial operators need:
       k_nn  = k(nu, nu)           (normal-normal component)
       k_tan = tr_{S_r} k          (tangential trace)

   Spheres S_r:
     area        = 4 pi r^2
     H           = 2 / (r F(r))
     theta_pm    = (tr k - k_nn) +- H = k_tan +- H

   So theta_plus + theta_minus = 2 (trk - k_nn) and the difference is 2H.
*/

struct RadialInitialData {
    ProfileExpr F, k_nn, k_tan;     // profiles in r
    ProfileExpr dF, dk_nn, dk_tan;  // symbolic d/dr of the above
    double r_min = 0;               // inner coordinate bound
    std::string label;

    // True when both k profiles are the literal constant 0.
    bool time_symmetric() const {
        return k_nn.is_literal_zero() && k_tan.is_literal_zero();
    }
};

struct SphereGeometry {
    double r = 0;
    double area = 0;
    double H = 0;
    double theta_plus = 0;
    double theta_minus = 0;
    double trk = 0;
    double k_nn = 0;
};

/// Time-symmetric slice of the Schwarzschild solution of mass m > 0:
// F^2 = (1 - 2m/r)^-1 (stored in the cancellation-safe division form),
// k = 0, r_min = 2m.
RadialInitialData schwarzschild(double m);

// Euclidean data: F = 1, k = 0, r_min = 0.
RadialInitialData flat_data();

// Profiles from expression text.  Throws parse_error on bad profile text.
RadialInitialData custom_data(const std::string& f_text,
                              const std::string& k_nn_text,
                              const std::string& k_tan_text, double r_min,
                              const std::string& label = "custom");

// Per-sphere geometry.  r == r_min evaluates the one-sided limit by nudging
// the radius one ulp into the domain (profiles may pole exactly at r_min,
// as the Schwarzschild F does at the horizon); r < r_min throws.
SphereGeometry sphere_geometry(const RadialInitialData& data, double r);

// Smallest radius where theta_plus vanishes with theta_plus > 0 beyond it.
// Scan over (r_min, 100 max(r_min,1)], log-spaced 4096 points, then
// bisection to 1e-12 relative.  When theta_plus is positive on the whole
// scan but tends to 0 at r_min (horizon exactly on the boundary), returns
// r_min.  Otherwise throws "no MOTS".
double find_mots(const RadialInitialData& data);

struct AdmFit {
    double mass = 0;
    double max_residual = 0;  // worst |(1 - F^-2) - 2m/r| over the window
};

// Least-squares fit of 1 - F(r)^-2 against 2m/r over a far-field window
// [R, 4R].  Throws when the residual says the data is not asymptotically
// Schwarzschildian at order 1/r.
AdmFit adm_mass(const RadialInitialData& data);

// Profile bundle at radius base + offset, evaluated in pair precision so
// (r - r_h)-type factors stay exact arbitrarily close to the horizon.
struct ProfileValues {
    real F = 0, dF = 0, knn = 0, ktan = 0, dktan = 0;
};
ProfileValues profiles_at(const RadialInitialData& data, real base, real offset);

}  // namespace motslab
