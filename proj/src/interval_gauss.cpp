#include "mcis/interval_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mcis/gaussian.hpp"

namespace mcis {

namespace {

constexpr double kInfCut = 38.0;  // |x| beyond this: tail below 2^-1074 scale

Interval clamp01(const Interval& v) {
    return {std::max(v.lo, 0.0), std::min(v.hi, 1.0)};
}

// Enclosure of int_0^y phi: alternating series, valid (terms decreasing) for
// y <= 2. Remainder is inside the first omitted term.
Interval phi_integral_series(double y) {
    Interval yi(y);
    Interval y2 = i_square(yi);
    Interval sum(0.0);
    Interval term = yi;  // y^(2n+1)/(2^n n!) part; divide by (2n+1) at use
    const int N = 32;
    for (int n = 0; n <= N; ++n) {
        Interval contrib = term / static_cast<double>(2 * n + 1);
        sum = (n % 2 == 0) ? sum + contrib : sum - contrib;
        term = term * y2 / static_cast<double>(2 * (n + 1));
    }
    Interval tail = term / static_cast<double>(2 * N + 3);
    // Next term has sign (-1)^(N+1); for odd N+1 the remainder is negative.
    Interval rem = (N % 2 == 0) ? Interval(-tail.hi, 0.0) : Interval(0.0, tail.hi);
    return inv_sqrt_2pi_interval() * (sum + rem);
}

// Upper tail Q(y) = Phi(-y) for y > 2 via the Laplace continued fraction
// R = 1/(y + 1/(y + 2/(y + 3/(...)))); consecutive convergents bracket the
// Mills ratio, and each convergent is evaluated in interval arithmetic.
Interval mills_convergent(double y, int depth) {
    Interval tail(0.0);
    for (int m = depth; m >= 1; --m) tail = Interval(static_cast<double>(m)) / (Interval(y) + tail);
    return Interval(1.0) / (Interval(y) + tail);
}

Interval upper_tail_cf(double y) {
    int depth = std::min(500, 24 + static_cast<int>(1200.0 / (y * y)));
    Interval a = mills_convergent(y, depth);
    Interval b = mills_convergent(y, depth + 1);
    Interval mills = hull(a, b);
    Interval pdf = i_normal_pdf(Interval(y));
    return pdf * mills;
}

// Certified Phi at a scalar point.
Interval phi_point(double x) {
    if (x != x) throw DomainViolation("i_phi: NaN");
    if (x >= kInfCut) return {next_down(1.0), 1.0};
    if (x <= -kInfCut) return {0.0, 1e-300};
    double ax = std::abs(x);
    Interval q;  // upper tail at ax
    if (ax <= 2.0) {
        Interval half(0.5);
        q = half - phi_integral_series(ax);
    } else {
        q = upper_tail_cf(ax);
    }
    q = clamp01(q);
    if (x >= 0.0) return clamp01(Interval(1.0) - q);
    return q;
}

struct PanelBounds {
    Interval sin_t, cos_t;
};

// sin/cos over a panel inside [-pi/2, pi/2]: both monotone pieces known.
PanelBounds trig_over(const Interval& th) {
    PanelBounds b;
    Interval slo = i_sin(Interval(th.lo)), shi = i_sin(Interval(th.hi));
    b.sin_t = {slo.lo, shi.hi};  // sin increasing on [-pi/2, pi/2]
    Interval clo = i_cos(Interval(th.lo)), chi = i_cos(Interval(th.hi));
    if (th.lo >= 0.0)
        b.cos_t = {chi.lo, clo.hi};  // decreasing on [0, pi/2]
    else if (th.hi <= 0.0)
        b.cos_t = {clo.lo, chi.hi};  // increasing on [-pi/2, 0]
    else
        b.cos_t = {std::min(clo.lo, chi.lo), 1.0};
    b.cos_t = clamp01(b.cos_t);
    b.sin_t = {std::max(b.sin_t.lo, -1.0), std::min(b.sin_t.hi, 1.0)};
    return b;
}

// Q(theta) = (x^2 - 2xy sin + y^2) / (2 cos^2); numerator is (x - y sin)^2 +
// y^2 cos^2 >= 0. Returns [lo, hi] with hi possibly +inf when cos -> 0.
Interval q_over(double x, double y, const PanelBounds& t) {
    Interval num = Interval(x * x + y * y) - 2.0 * Interval(x) * Interval(y) * t.sin_t;
    num = i_max(num, Interval(0.0));
    Interval den = 2.0 * i_square(t.cos_t);
    double lo = den.hi > 0.0 ? next_down(num.lo / den.hi) : 0.0;
    double hi = den.lo > 0.0 ? next_up(num.hi / den.lo)
                             : std::numeric_limits<double>::infinity();
    if (num.hi == 0.0) hi = 0.0;
    return {std::max(lo, 0.0), hi};
}

Interval exp_neg(const Interval& q) {
    // e^{-q} for q possibly [finite, +inf]
    double lo = q.hi == std::numeric_limits<double>::infinity()
                    ? 0.0
                    : i_exp(Interval(-q.hi)).lo;
    double hi = i_exp(Interval(-q.lo)).hi;
    return {lo, std::min(hi, 1.0)};
}

// d/dtheta and d2/dtheta2 of Q, interval-evaluated over a panel.
Interval q_prime(double x, double y, const PanelBounds& t) {
    // Q' = -xy / C + N s / C^3
    Interval num = Interval(x * x + y * y) - 2.0 * Interval(x) * Interval(y) * t.sin_t;
    Interval c = t.cos_t;
    Interval c3 = c * i_square(c);
    return Interval(-x * y) / c + num * t.sin_t / c3;
}

Interval q_second(double x, double y, const PanelBounds& t) {
    // Q'' = -3xy s / C^2 + N / C^2 + 3 N s^2 / C^4
    Interval num = Interval(x * x + y * y) - 2.0 * Interval(x) * Interval(y) * t.sin_t;
    Interval c2 = i_square(t.cos_t);
    Interval s2 = i_square(t.sin_t);
    return Interval(-3.0 * x * y) * t.sin_t / c2 + num / c2 + 3.0 * num * s2 / (c2 * c2);
}

// Enclosure of int over [a, b] of exp(-Q); panels adaptively bisected.
Interval integrate_exp_q(double x, double y, double a, double b, double width_target) {
    struct Panel {
        double a, b;
        int depth;
    };
    Interval total(0.0);
    std::vector<Panel> stack{{a, b, 0}};
    const int max_depth = 42;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double h = p.b - p.a;
        Interval th{p.a, p.b};
        PanelBounds tb = trig_over(th);
        Interval crude = exp_neg(q_over(x, y, tb)) * Interval(h);
        Interval est = crude;
        if (tb.cos_t.lo > 1e-8) {
            // Midpoint rule with curvature term: int = f(m) h + f''(xi) h^3/24,
            // f'' = (Q'^2 - Q'') e^{-Q}.
            double m = 0.5 * (p.a + p.b);
            PanelBounds tm = trig_over(Interval(m));
            Interval fm = exp_neg(q_over(x, y, tm));
            Interval fpp =
                (i_square(q_prime(x, y, tb)) - q_second(x, y, tb)) * exp_neg(q_over(x, y, tb));
            Interval mid = fm * Interval(h) + fpp * Interval(h * h * h / 24.0);
            // Both forms are valid enclosures; intersect for tightness.
            double lo = std::max(mid.lo, crude.lo);
            double hi = std::min(mid.hi, crude.hi);
            if (lo <= hi) est = {lo, hi};
        }
        double budget = width_target * (h / (b - a));
        if (est.width() <= budget || p.depth >= max_depth) {
            total = total + est;
        } else {
            double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    return total;
}

}  // namespace

Interval i_normal_pdf(const Interval& x) {
    // |x| over the interval, dependency-aware; pdf decreasing in |x|.
    Interval ax = i_sqrt(i_square(x));
    Interval lo_exp = i_exp(-i_square(Interval(ax.hi)) / 2.0);
    Interval hi_exp = i_exp(-i_square(Interval(ax.lo)) / 2.0);
    return inv_sqrt_2pi_interval() * Interval(lo_exp.lo, hi_exp.hi);
}

Interval i_phi(const Interval& x) {
    Interval lo = phi_point(x.lo), hi = phi_point(x.hi);
    return clamp01({lo.lo, hi.hi});
}

Interval i_phi_inv(const Interval& p) {
    if (!(p.lo > 0.0 && p.hi < 1.0))
        throw DomainViolation("i_phi_inv: p must be inside (0, 1)");
    auto bound = [](double pp, bool want_lower) {
        double x0 = std_normal_quantile(pp);
        double h = std::max(1e-13, 1e-13 * std::abs(x0));
        double a = x0 - h, b = x0 + h;
        for (int it = 0; it < 80 && i_phi(Interval(a)).hi > pp; ++it) a -= (h *= 2.0);
        h = std::max(1e-13, 1e-13 * std::abs(x0));
        for (int it = 0; it < 80 && i_phi(Interval(b)).lo < pp; ++it) b += (h *= 2.0);
        if (i_phi(Interval(a)).hi > pp || i_phi(Interval(b)).lo < pp)
            throw DomainViolation("i_phi_inv: bracketing failed");
        // Verified bisection: keep Phi(a) <= pp <= Phi(b).
        for (int it = 0; it < 90; ++it) {
            double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;
            Interval pm = i_phi(Interval(m));
            if (pm.hi <= pp)
                a = m;
            else if (pm.lo >= pp)
                b = m;
            else
                break;  // undecidable at i_phi's width; interval [a,b] stands
        }
        return want_lower ? a : b;
    };
    double lo = bound(p.lo, true);
    double hi = bound(p.hi, false);
    return {lo, hi};
}

Interval i_bvn_point(double rho, double x, double y, double width_target) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw DomainViolation("i_bvn: rho outside [-1, 1]");
    Interval px = phi_point(x), py = phi_point(y);
    if (rho <= -1.0) return clamp01(i_max(Interval(0.0), px + py - Interval(1.0)));
    if (rho >= 1.0) return clamp01(i_min(px, py));
    if (rho == 0.0) return clamp01(px * py);
    if (x >= kInfCut) return py;
    if (y >= kInfCut) return px;
    if (x <= -kInfCut || y <= -kInfCut) return {0.0, 1e-300};

    Interval asr = i_arcsin(Interval(rho));
    Interval arc(0.0);
    if (rho < 0.0) {
        // int_0^{asin rho} = -int_{asin rho}^0; integrate the certain core
        // [asr.hi, 0] and pad by the strip of width(asr) (integrand in [0,1]).
        Interval core = integrate_exp_q(x, y, asr.hi, 0.0, width_target);
        double pad = asr.width();
        arc = -Interval(core.lo, next_up(core.hi + pad));
    } else {
        Interval core = integrate_exp_q(x, y, 0.0, asr.lo, width_target);
        arc = Interval(core.lo, next_up(core.hi + asr.width()));
    }
    return clamp01(px * py + inv_2pi_interval() * arc);
}

Interval i_bvn(const Interval& rho, const Interval& x, const Interval& y,
               double width_target) {
    // Phi_rho(x, y) is nondecreasing in each of rho (Plackett), x, and y.
    Interval lo = i_bvn_point(rho.lo, x.lo, y.lo, width_target);
    Interval hi = i_bvn_point(rho.hi, x.hi, y.hi, width_target);
    return {lo.lo, hi.hi};
}

}  // namespace mcis
