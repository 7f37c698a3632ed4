#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcis/errors.hpp"

namespace mcis {

/// Closed real interval with outward rounding: every arithmetic result
/// encloses the exact real result. Directed rounding is realized by one-ulp
/// outward nudges after each correctly-rounded primitive (+,-,*,/,sqrt), so
/// no global FP-mode state is touched.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double point) : lo(point), hi(point) {
        if (std::isnan(point)) throw DomainViolation("Interval: NaN endpoint");
    }
    Interval(double l, double h) : lo(l), hi(h) {
        if (std::isnan(l) || std::isnan(h) || l > h)
            throw DomainViolation("Interval: invalid endpoints");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_point() const { return lo == hi; }
};

inline double next_down(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline Interval widen(double lo, double hi) { return {next_down(lo), next_up(hi)}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return widen(a.lo + b.lo, a.hi + b.hi);
}
inline Interval operator-(const Interval& a, const Interval& b) {
    return widen(a.lo - b.hi, a.hi - b.lo);
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    // 0 * inf from zero-width times unbounded: treat as 0 contribution
    auto fix = [](double v) { return std::isnan(v) ? 0.0 : v; };
    p1 = fix(p1); p2 = fix(p2); p3 = fix(p3); p4 = fix(p4);
    return widen(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0)
        throw DomainViolation("Interval division by interval containing 0");
    double q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
    return widen(std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4}));
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

/// Dependency-aware square: [-1,1]^2 = [0,1].
inline Interval i_square(const Interval& a) {
    if (a.lo >= 0.0) return widen(a.lo * a.lo, a.hi * a.hi);
    if (a.hi <= 0.0) return widen(a.hi * a.hi, a.lo * a.lo);
    double m = std::max(-a.lo, a.hi);
    return widen(0.0, m * m);
}

/// sqrt on the part of a intersecting [0, inf); errors if a < 0 entirely.
inline Interval i_sqrt(const Interval& a) {
    if (a.hi < 0.0) throw DomainViolation("i_sqrt of negative interval");
    double lo = a.lo <= 0.0 ? 0.0 : next_down(std::sqrt(a.lo));
    return {std::max(0.0, lo), next_up(std::sqrt(a.hi))};
}

inline Interval i_min(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}
inline Interval i_max(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw EmptyIntersection("intersect: empty result");
    return {lo, hi};
}

inline Interval pi_interval() { return {0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1}; }
inline Interval half_pi_interval() { return {0x1.921fb54442d18p+0, 0x1.921fb54442d19p+0}; }
inline Interval ln2_interval() { return {0x1.62e42fefa39efp-1, 0x1.62e42fefa39f0p-1}; }
inline Interval inv_sqrt_2pi_interval() { return {0x1.9884533d43650p-2, 0x1.9884533d43651p-2}; }
inline Interval inv_2pi_interval() { return {0x1.45f306dc9c882p-3, 0x1.45f306dc9c883p-3}; }

/// exp with certified remainder: argument reduction by ln 2, degree-17
/// Taylor tail bound, exact binary rescale.
Interval i_exp(const Interval& a);

/// sin/cos by Taylor with the |x|^N / N! remainder; |x| <= 6.4.
Interval i_sin(const Interval& a);
Interval i_cos(const Interval& a);

/// arccos for |x| <= 0.999: libm point value corrected by a certified
/// cos-residual over a verified sine bound.
Interval i_arccos(const Interval& a);

/// arcsin over [-1, 1]; near +-1 switches to the shifted half-angle series
/// so no division by a vanishing cosine occurs.
Interval i_arcsin(const Interval& a);

}  // namespace mcis
