// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <cmath>

#include "motslab/numerics.hpp"

namespace motslab {

/*
   Double-word arithmetic over long double (a compensated hi+lo pair).

   Purpose: profile expressions are evaluated at radii r = r_h + xi with
   xi as small as 1e-15 * r_h.  A plain scalar loses xi below the ulp of
   r_h when forming r, which wrecks every factor of the form (r - r_h)
   inside F(r).  Carrying r as an unevaluated pair keeps the subtraction
   exact; all pair operations below preserve ~2x working precision on the
   arithmetic core (+ - * / sqrt), and apply first-order corrections for
   the transcendentals, which is far more than the solvers need.

   Requires round-to-nearest and no FMA contraction games on the hi/lo
   error terms, i.e. build without -ffast-math.
*/

struct dd {
    real hi = 0;
    real lo = 0;

    constexpr dd() = default;
    constexpr dd(real h) : hi(h) {}
    constexpr dd(double h) : hi(h) {}
    constexpr dd(int h) : hi(h) {}
    constexpr dd(real h, real l) : hi(h), lo(l) {}

    real collapse() const { return hi + lo; }
};

namespace ddops {

inline void two_sum(real a, real b, real& s, real& e) {
    s = a + b;
    const real bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b| (or a == 0).
inline void quick_two_sum(real a, real b, real& s, real& e) {
    s = a + b;
    e = b - (s - a);
}

// Dekker split for the 64-bit x87 mantissa: 2^32 + 1.
inline void split(real a, real& h, real& l) {
    const real t = 4294967297.0L * a;
    h = t - (t - a);
    l = a - h;
}

inline void two_prod(real a, real b, real& p, real& e) {
    p = a * b;
    real ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

}  // namespace ddops

inline dd operator+(const dd& a, const dd& b) {
    real s1, s2, t1, t2;
    ddops::two_sum(a.hi, b.hi, s1, s2);
    ddops::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    ddops::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    ddops::quick_two_sum(s1, s2, s1, s2);
    return dd(s1, s2);
}

inline dd operator-(const dd& a) { return dd(-a.hi, -a.lo); }

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    real p1, p2;
    ddops::two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    ddops::quick_two_sum(p1, p2, p1, p2);
    return dd(p1, p2);
}

inline dd operator/(const dd& a, const dd& b) {
    const real q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    const real q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    const real q3 = r.hi / b.hi;
    real s1, s2;
    ddops::quick_two_sum(q1, q2, s1, s2);
    return dd(s1, s2) + dd(q3);
}

inline bool operator==(const dd& a, const dd& b) {
    return a.collapse() == b.collapse();
}
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) {
    return a.collapse() < b.collapse();
}
inline bool operator<=(const dd& a, const dd& b) {
    return a.collapse() <= b.collapse();
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator>=(const dd& a, const dd& b) { return b <= a; }

inline dd abs(const dd& a) { return (a.collapse() < 0) ? -a : a; }

inline dd floor(const dd& a) { return dd(std::floor(a.collapse())); }

inline dd sqrt(const dd& a) {
    if (a.hi == 0 && a.lo == 0) return dd(0.0L);
    // One Newton correction on the scalar root doubles its precision.
    const real y = std::sqrt(a.hi);
    const dd ydd(y);
    const dd err = (a - ydd * ydd) / dd(2 * y);
    return ydd + err;
}

inline dd log(const dd& a) {
    // log(hi + lo) = log(hi) + log1p(lo/hi) ~= log(hi) + lo/hi
    return dd(std::log(a.hi)) + dd(a.lo / a.hi);
}

inline dd exp(const dd& a) {
    const real e = std::exp(a.hi);
    return dd(e) + dd(e) * dd(a.lo);
}

inline dd sin(const dd& a) {
    return dd(std::sin(a.hi)) + dd(std::cos(a.hi)) * dd(a.lo);
}

inline dd cos(const dd& a) {
    return dd(std::cos(a.hi)) - dd(std::sin(a.hi)) * dd(a.lo);
}

inline dd pow(const dd& a, const dd& b) {
    const real bc = b.collapse();
    // Integer exponents by binary powering so negative bases stay exact.
    if (bc == std::floor(bc) && std::abs(bc) <= 1024.0L) {
        long n = static_cast<long>(bc);
        if (n == 0) return dd(1.0L);
        const bool invert = n < 0;
        unsigned long m = invert ? static_cast<unsigned long>(-n)
                                 : static_cast<unsigned long>(n);
        dd base = a;
        dd acc(1.0L);
        while (m) {
            if (m & 1ul) acc = acc * base;
            base = base * base;
            m >>= 1;
        }
        return invert ? dd(1.0L) / acc : acc;
    }
    return exp(b * log(a));
}

inline bool isnan(const dd& a) { return std::isnan(a.hi) || std::isnan(a.lo); }

}  // namespace motslab
