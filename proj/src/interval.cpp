#include "mcis/interval.hpp"

namespace mcis {

namespace {

// exp at a point (degenerate interval), certified.
Interval exp_point(double x) {
    if (x < -745.0) return {0.0, 5e-324};
    if (x > 709.0)
        return {next_down(std::exp(709.0)), std::numeric_limits<double>::infinity()};
    double k = std::nearbyint(x / 0.6931471805599453);
    Interval r = Interval(x) - Interval(k) * ln2_interval();  // |r| <= ln2/2 + slack
    if (std::abs(r.lo) > 0.5 || std::abs(r.hi) > 0.5)
        throw DomainViolation("i_exp: reduction failed");
    // Horner for sum_{n<=21} r^n/n!; tail <= 0.35^22/22! * e^0.35 < 2e-31.
    Interval acc(1.0);
    for (int n = 21; n >= 1; --n) acc = Interval(1.0) + r * acc / static_cast<double>(n);
    acc = acc + Interval(-2e-31, 2e-31);
    int ki = static_cast<int>(k);
    return widen(std::ldexp(acc.lo, ki), std::ldexp(acc.hi, ki));
}

// Taylor enclosure of sin at a point; Lagrange remainder |x|^(2K+2)/(2K+2)!.
// 24!/26! ~ 2.6e26/4e26; the short degree covers |x| <= 1.7 at ~1e-17.
Interval sin_point(double x) {
    if (std::abs(x) > 6.4) throw DomainViolation("i_sin: |x| too large");
    Interval xi(x);
    Interval x2 = i_square(xi);
    const int K = std::abs(x) <= 1.7 ? 11 : 24;
    Interval acc(1.0);
    for (int k = K; k >= 1; --k)
        acc = Interval(1.0) - x2 * acc / static_cast<double>((2 * k) * (2 * k + 1));
    Interval v = xi * acc;
    // (2K+2)! >= 24! ~ 6.2e23 (K=11) or 50! ~ 3.04e64 (K=24); divide by less.
    double fact = K == 11 ? 6.0e23 : 3.0e64;
    double rem = std::pow(std::abs(x) + 1e-9, 2 * K + 2) / fact;
    return v + Interval(-rem, rem);
}

Interval cos_point(double x) {
    if (std::abs(x) > 6.4) throw DomainViolation("i_cos: |x| too large");
    Interval x2 = i_square(Interval(x));
    const int K = std::abs(x) <= 1.7 ? 11 : 24;
    Interval acc(1.0);
    for (int k = K; k >= 1; --k)
        acc = Interval(1.0) - x2 * acc / static_cast<double>((2 * k - 1) * (2 * k));
    // (2K+1)! >= 23! ~ 2.58e22 (K=11) or 49! ~ 6.08e62 (K=24).
    double fact = K == 11 ? 2.5e22 : 6.0e62;
    double rem = std::pow(std::abs(x) + 1e-9, 2 * K + 1) / fact;
    return acc + Interval(-rem, rem);
}

Interval clamp_unit(const Interval& v) {
    return {std::max(v.lo, -1.0), std::min(v.hi, 1.0)};
}

}  // namespace

Interval i_exp(const Interval& a) {
    Interval lo = exp_point(a.lo), hi = exp_point(a.hi);
    return {lo.lo, hi.hi};  // exp is increasing
}

Interval i_sin(const Interval& a) {
    Interval v = hull(sin_point(a.lo), sin_point(a.hi));
    // Interior extrema at odd multiples of pi/2; the 1e-9 margin absorbs the
    // inexact critical-point location.
    double hp = 1.5707963267948966;
    for (int m = -2; m <= 2; ++m) {
        double crit = (2 * m + 1) * hp;
        if (a.lo - 1e-9 < crit && crit < a.hi + 1e-9) {
            int mod = ((2 * m + 1) % 4 + 4) % 4;
            v = hull(v, mod == 1 ? Interval(1.0) : Interval(-1.0));
        }
    }
    return clamp_unit(v);
}

Interval i_cos(const Interval& a) {
    Interval v = hull(cos_point(a.lo), cos_point(a.hi));
    double pi_pt = 3.141592653589793;
    for (int k = -2; k <= 2; ++k) {
        double crit = k * pi_pt;
        if (a.lo - 1e-9 < crit && crit < a.hi + 1e-9)
            v = hull(v, (k % 2 == 0) ? Interval(1.0) : Interval(-1.0));
    }
    return clamp_unit(v);
}

Interval i_arccos(const Interval& a) {
    if (a.lo < -1.0 - 1e-15 || a.hi > 1.0 + 1e-15)
        throw DomainViolation("i_arccos: argument outside [-1, 1]");
    if (std::max(std::abs(a.lo), std::abs(a.hi)) > 0.999)
        throw DomainViolation("i_arccos: |x| > 0.999 unsupported");
    auto point = [](double c) {
        double th0 = std::acos(c);
        // theta = th0 + (cos th0 - c)/sin(xi), xi within 1e-6 of th0; the
        // +-1e-12 widening covers an interior sine extremum in that window.
        Interval resid = cos_point(th0) - Interval(c);
        Interval s = hull(sin_point(th0 - 1e-6), sin_point(th0 + 1e-6)) +
                     Interval(-1e-12, 1e-12);
        if (s.lo <= 0.0) throw DomainViolation("i_arccos: sine bound failed");
        Interval th = Interval(th0) + resid / s;
        if (th.width() > 1e-6) throw DomainViolation("i_arccos: correction too wide");
        return th;
    };
    Interval at_hi = point(a.hi), at_lo = point(a.lo);  // decreasing map
    return {at_hi.lo, at_lo.hi};
}

Interval i_arcsin(const Interval& a) {
    if (a.lo < -1.0 || a.hi > 1.0)
        throw DomainViolation("i_arcsin: argument outside [-1, 1]");
    auto point = [](double c) -> Interval {
        double ac = std::abs(c);
        if (ac <= 0.999) {
            double th0 = std::asin(c);
            Interval resid = Interval(c) - sin_point(th0);
            Interval co = hull(cos_point(th0 - 1e-6), cos_point(th0 + 1e-6)) +
                          Interval(-1e-12, 1e-12);
            if (co.lo <= 0.0) throw DomainViolation("i_arcsin: cosine bound failed");
            Interval th = Interval(th0) + resid / co;
            if (th.width() > 1e-6) throw DomainViolation("i_arcsin: correction too wide");
            return th;
        }
        // asin(1 - u) = pi/2 - 2 asin(sqrt(u/2)): small-angle series, all
        // coefficients in (0, 1], so the tail is below the geometric bound.
        double sign = c < 0.0 ? -1.0 : 1.0;
        Interval u = Interval(1.0) - Interval(ac);
        Interval w = i_sqrt(u / 2.0);  // <= 0.0224
        Interval w2 = i_square(w);
        Interval series = w * (Interval(1.0) +
                               w2 * (Interval(1.0) / 6.0 +
                                     w2 * (Interval(3.0) / 40.0 + w2 * (Interval(15.0) / 336.0))));
        double tail = std::pow(w.hi + 1e-12, 9.0) / (1.0 - 0.001);
        series = series + Interval(0.0, tail);
        Interval th = half_pi_interval() - 2.0 * series;
        return sign > 0 ? th : -th;
    };
    Interval at_lo = point(a.lo), at_hi = point(a.hi);  // increasing map
    return {at_lo.lo, at_hi.hi};
}

}  // namespace mcis
