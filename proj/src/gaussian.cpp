#include "mcis/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcis {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Integrands live on [-kTailCut, kTailCut]; mass beyond is < 1e-17.
constexpr double kTailCut = 8.5;

// Acklam's rational approximation for the normal quantile (~1.15e-9 relative
// before refinement).
double quantile_initial(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        double z = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * z + c[1]) * z + c[2]) * z + c[3]) * z + c[4]) * z + c[5]) /
               ((((d[0] * z + d[1]) * z + d[2]) * z + d[3]) * z + 1.0);
    }
    if (p > 1.0 - p_low) {
        double z = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * z + c[1]) * z + c[2]) * z + c[3]) * z + c[4]) * z + c[5]) /
               ((((d[0] * z + d[1]) * z + d[2]) * z + d[3]) * z + 1.0);
    }
    double u = p - 0.5;
    double t = u * u;
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
}

// Adaptive Simpson with absolute tolerance; f must be smooth on [a, b].
template <typename F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m,
                   double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double h = b - a;
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (!(a < b)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror).
constexpr int kGlHalf = 16;
constexpr double kGlNode[kGlHalf] = {
    0.04830766568773832, 0.14447196158279649, 0.23928736225213707,
    0.33186860228212765, 0.42135127613063535, 0.50689990893222939,
    0.58771575724076233, 0.66304426693021520, 0.73218211874028968,
    0.79448379596794241, 0.84936761373256997, 0.89632115576605212,
    0.93490607593773969, 0.96476225558750643, 0.98561151154526834,
    0.99726386184948156};
constexpr double kGlWeight[kGlHalf] = {
    0.09654008851472780, 0.09563872007927486, 0.09384439908080457,
    0.09117387869576388, 0.08765209300440381, 0.08331192422694676,
    0.07819389578707031, 0.07234579410884851, 0.06582222277636185,
    0.05868409347853555, 0.05099805926237618, 0.04283589802222668,
    0.03427386291302143, 0.02539206530926206, 0.01627439473090567,
    0.00701861000947010};

// Fast route for batch scans: Plackett's identity integrated in the arcsin
// parametrization, Phi(x)Phi(y) + (1/2pi) int_0^asin(rho) exp(-Q(theta)),
// where Q = (x^2 - 2xy sin(theta) + y^2) / (2 cos^2(theta)). The integrand is
// analytic and bounded for |rho| away from 1, so two panels of GL-32 reach
// ~1e-13. Cross-checked against the adaptive route in the test suite.
double bvn_cdf_arc(double rho, double x, double y) {
    double base = std_normal_cdf(x) * std_normal_cdf(y);
    double lim = std::asin(rho);
    double acc = 0.0;
    for (int panel = 0; panel < 2; ++panel) {
        double a = lim * 0.5 * panel, b = lim * 0.5 * (panel + 1);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < kGlHalf; ++i) {
            for (double sgn : {-1.0, 1.0}) {
                double t = mid + sgn * half * kGlNode[i];
                double ct = std::cos(t);
                double q = (x * x - 2.0 * x * y * std::sin(t) + y * y) / (2.0 * ct * ct);
                acc += kGlWeight[i] * half * std::exp(-q);
            }
        }
    }
    return std::clamp(base + acc / (2.0 * kPi), 0.0, 1.0);
}

}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) {
    if (std::isnan(x)) throw DomainViolation("std_normal_cdf: NaN input");
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    // erfc keeps full relative accuracy in the left tail.
    return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_quantile(double p, bool allow_infinite) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw DomainViolation("std_normal_quantile: p outside [0, 1]");
    if (p == 0.0 || p == 1.0) {
        if (allow_infinite)
            return p == 0.0 ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
        throw DomainViolation("std_normal_quantile: p at 0 or 1");
    }
    if (p == 0.5) return 0.0;
    // Evaluate on the smaller tail and negate for p > 1/2 so the Newton
    // residual Phi(x) - p never loses digits to cancellation.
    bool flip = p > 0.5;
    double pp = flip ? 1.0 - p : p;
    double x = quantile_initial(pp);
    for (int it = 0; it < 2; ++it) {
        double err = std_normal_cdf(x) - pp;
        double d = std_normal_pdf(x);
        if (d > 0.0) x -= err / d;
    }
    return flip ? -x : x;
}

double g_func(double z) { return std::erf(z / kSqrt2); }

double k_func(Correlation rho, double x, double y) {
    double r = rho.value;
    if (std::abs(r) >= 1.0) throw DomainViolation("k_func: |rho| must be < 1");
    return (std_normal_quantile(y) - r * std_normal_quantile(x)) / std::sqrt(1.0 - r * r);
}

double bvn_cdf(double rho, double x, double y, double tol) {
    if (!(rho >= -1.0 && rho <= 1.0)) throw DomainViolation("bvn_cdf: rho outside [-1, 1]");
    double px = std_normal_cdf(x);
    double py = std_normal_cdf(y);
    if (px == 0.0 || py == 0.0) return 0.0;
    // Degenerate covariance: closed forms, never quadrature.
    if (rho >= 1.0) return std::min(px, py);
    if (rho <= -1.0) return std::max(0.0, px + py - 1.0);
    if (rho == 0.0) return px * py;
    if (x > kTailCut) return py;
    if (y > kTailCut) return px;
    if (x < -kTailCut || y < -kTailCut) return 0.0;
    // Loose-tolerance callers (grid scans) take the fixed-order arc route.
    if (tol >= 1e-10 && std::abs(rho) <= 0.95) return bvn_cdf_arc(rho, x, y);

    // Lambda_rho(x, y) = int_-inf^x Phi((y - rho*a)/L) phi(a) da, truncated at
    // -kTailCut. Integrating up to the smaller threshold keeps the range
    // short; the swap is exact by symmetry.
    double L = std::sqrt((1.0 - rho) * (1.0 + rho));
    double xa = x, yb = y;
    if (yb < xa) std::swap(xa, yb);
    auto integrand = [&](double a) {
        return std_normal_cdf((yb - rho * a) / L) * std_normal_pdf(a);
    };
    double v = adaptive_simpson(integrand, -kTailCut, xa, tol);
    return std::clamp(v, 0.0, 1.0);
}

double bvn_quadrant(Correlation rho, double mu1, double mu2, double tol) {
    if (!(mu1 >= 0.0 && mu1 <= 1.0 && mu2 >= 0.0 && mu2 <= 1.0))
        throw DomainViolation("bvn_quadrant: measures outside [0, 1]");
    double r = rho.value;
    if (r >= 1.0) return std::min(mu1, mu2);
    if (r <= -1.0) return std::max(0.0, mu1 + mu2 - 1.0);
    if (r == 0.0) return mu1 * mu2;
    if (mu1 == 0.0 || mu2 == 0.0) return 0.0;
    if (mu1 == 1.0) return mu2;
    if (mu2 == 1.0) return mu1;
    return bvn_cdf(r, std_normal_quantile(mu1), std_normal_quantile(mu2), tol);
}

double gaussian_cut(Correlation rho, double mu1, double mu2, double tol) {
    double v = 1.0 - bvn_quadrant(rho, mu1, mu2, tol) -
               bvn_quadrant(rho, 1.0 - mu1, 1.0 - mu2, tol);
    return std::clamp(v, 0.0, 1.0);
}

double co_cut(Correlation rho, double mu1, double mu2, double tol) {
    return 1.0 - gaussian_cut(rho, mu1, mu2, tol);
}

CriticalConstants compute_critical_constants() {
    // Objective 2*arccos(rho)/(pi*(1-rho)): unimodal on [-0.99, -0.1].
    auto obj = [](double r) { return 2.0 * std::acos(r) / (kPi * (1.0 - r)); };
    double lo = -0.99, hi = -0.1;
    const double invphi = 0.6180339887498949;
    double a = hi - invphi * (hi - lo), b = lo + invphi * (hi - lo);
    double fa = obj(a), fb = obj(b);
    while (hi - lo > 1e-12) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - invphi * (hi - lo); fa = obj(a);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + invphi * (hi - lo); fb = obj(b);
        }
    }
    // One derivative bisection pass: the stationarity condition reduces to
    // arccos(rho) = sqrt((1-rho)/(1+rho)).
    auto dsign = [](double r) { return std::acos(r) - std::sqrt((1.0 - r) / (1.0 + r)); };
    double bl = lo - 1e-9, bh = hi + 1e-9;
    if (dsign(bl) < 0.0 || dsign(bh) > 0.0) { bl = -0.99; bh = -0.1; }
    for (int it = 0; it < 200 && bh - bl > 1e-16; ++it) {
        double mid = 0.5 * (bl + bh);
        (dsign(mid) > 0.0 ? bl : bh) = mid;
    }
    CriticalConstants cc{};
    cc.rho_star = 0.5 * (bl + bh);
    cc.c_star = 0.5 * (1.0 - cc.rho_star);
    cc.s_star = std::acos(cc.rho_star) / kPi;
    cc.alpha_gw = cc.s_star / cc.c_star;
    cc.alpha_star = 2.0 * cc.rho_star / (cc.rho_star - 1.0);
    cc.b_star = 0.1840220;
    double rho00 = -(1.0 - cc.b_star) / (1.0 + cc.b_star);
    double s0 = std::acos(rho00) / kPi;
    cc.p_star = -2.0 / ((1.0 + cc.b_star) * (1.0 + cc.b_star) * kPi * std::sin(kPi * s0));
    cc.q_star = -cc.p_star * cc.b_star + s0;
    return cc;
}

}  // namespace mcis
