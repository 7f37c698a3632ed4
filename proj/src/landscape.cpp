#include "mcis/landscape.hpp"

#include <algorithm>
#include <cmath>

namespace mcis {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool interior(double x) { return x > 0.0 && x < 1.0; }

// Golden-section maximization of a 1-D function on [lo, hi].
template <typename F>
double golden_max(const F& f, double lo, double hi, double tol = 1e-10) {
    const double invphi = 0.6180339887498949;
    double a = hi - invphi * (hi - lo), b = lo + invphi * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > tol) {
        if (fa > fb) {
            hi = b; b = a; fb = fa;
            a = hi - invphi * (hi - lo); fa = f(a);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + invphi * (hi - lo); fb = f(b);
        }
    }
    return 0.5 * (lo + hi);
}

double grad_norm(const std::array<double, 3>& g) {
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

}  // namespace

double f_cut_tripartite(Correlation rho, const TripartitePoint& p, double tol) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) s += gaussian_cut(rho, p.mu[i], p.mu[j], tol);
    return s;
}

std::array<double, 3> grad_f_tripartite(Correlation rho, const TripartitePoint& p) {
    for (double m : p.mu)
        if (!interior(m)) throw DomainViolation("grad_f_tripartite: point on boundary");
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        g[i] = g_func(k_func(rho, p.mu[i], p.mu[j])) +
               g_func(k_func(rho, p.mu[i], p.mu[k]));
    }
    return g;
}

TripartitePoint stationary_solve(Correlation rho) {
    double r = rho.value;
    if (!(r > -1.0 && r <= 0.0))
        throw DomainViolation("stationary_solve: rho outside (-1, 0]");
    // Stationarity forces the quantiles t_i to solve M t = 0 with
    // M = ones(3) - (2 rho + 1) I; M is singular exactly at rho = -1/2.
    if (std::abs(r + 0.5) < 1e-12)
        throw SingularSystem("stationary_solve: coefficient matrix singular at rho = -1/2");
    // det = (2 - 2 rho) (1 + 2 rho)^2 != 0, so t = 0 is the only solution.
    TripartitePoint p;
    p.mu = {0.5, 0.5, 0.5};
    return p;
}

LandscapeReport boundary_max_tripartite(Correlation rho) {
    double r = rho.value;
    if (!(r > -1.0 && r <= 0.0))
        throw DomainViolation("boundary_max_tripartite: rho outside (-1, 0]");
    // Each face fixes one coordinate at 0 or 1. A coarse grid finds the basin,
    // then two rounds of 1-D golden-section refine the free coordinates.
    const double mesh = 1e-3;
    const double scan_tol = 1e-9;
    double best = -1.0;
    std::array<double, 3> best_pt{};
    for (int fixed = 0; fixed < 3; ++fixed) {
        for (double fv : {0.0, 1.0}) {
            auto value = [&](double u, double v) {
                TripartitePoint p;
                p.mu[fixed] = fv;
                p.mu[(fixed + 1) % 3] = u;
                p.mu[(fixed + 2) % 3] = v;
                return f_cut_tripartite(rho, p, scan_tol);
            };
            double bu = 0.0, bv = 0.0, bval = -1.0;
            int n = static_cast<int>(1.0 / mesh);
            for (int iu = 0; iu <= n; ++iu) {
                // The faces are effectively 1-D: for fixed u the v-section is
                // unimodal, so refine v by golden section instead of a full 2-D mesh.
                double u = iu * mesh;
                double v = golden_max([&](double vv) { return value(u, vv); }, 0.0, 1.0, 1e-6);
                for (double vv : {v, 0.0, 1.0}) {
                    double val = value(u, vv);
                    if (val > bval) { bval = val; bu = u; bv = vv; }
                }
            }
            double ru = golden_max([&](double uu) { return value(uu, bv); }, 0.0, 1.0);
            double rv = golden_max([&](double vv) { return value(ru, vv); }, 0.0, 1.0);
            double val = value(ru, rv);
            if (val < bval) { ru = bu; rv = bv; val = bval; }
            if (val > best) {
                best = val;
                best_pt[fixed] = fv;
                best_pt[(fixed + 1) % 3] = ru;
                best_pt[(fixed + 2) % 3] = rv;
            }
        }
    }
    LandscapeReport rep;
    rep.maximizer = {best_pt[0], best_pt[1], best_pt[2]};
    rep.value = best;  // unnormalized: the boundary maximum is exactly 2
    rep.location_class = LocationClass::boundary;
    rep.residual = std::abs(best - 2.0);
    return rep;
}

LandscapeReport tripartite_max(Correlation rho) {
    double r = rho.value;
    if (!(r > -1.0 && r <= 0.0))
        throw DomainViolation("tripartite_max: rho outside (-1, 0]");
    LandscapeReport boundary = boundary_max_tripartite(rho);
    // At rho = -1/2 both branches give 2/3; skip the singular interior solve.
    if (std::abs(r + 0.5) < 1e-12) {
        boundary.value /= 3.0;
        return boundary;
    }
    TripartitePoint st = stationary_solve(rho);
    double interior_val = f_cut_tripartite(rho, st);
    if (interior_val > boundary.value) {
        LandscapeReport rep;
        rep.maximizer = {st.mu[0], st.mu[1], st.mu[2]};
        rep.value = interior_val / 3.0;
        rep.location_class = LocationClass::interior;
        rep.residual = grad_norm(grad_f_tripartite(rho, st));
        return rep;
    }
    boundary.value /= 3.0;
    return boundary;
}

double f_alpha_bipartite(Correlation rho, double alpha, double mu1, double mu2,
                         double tol) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainViolation("f_alpha_bipartite: alpha outside [0, 1]");
    return alpha * gaussian_cut(rho, mu1, mu2, tol) +
           (1.0 - alpha) * gaussian_cut(rho, mu2, mu2, tol);
}

std::array<double, 2> grad_f_alpha(Correlation rho, double alpha, double mu1, double mu2) {
    if (!interior(mu1) || !interior(mu2))
        throw DomainViolation("grad_f_alpha: point on boundary");
    // Gradient of the co-cut combination alpha*coCut(mu1,mu2) +
    // (1-alpha)*coCut(mu2,mu2); f_alpha's gradient is its negative.
    double g1 = alpha * g_func(k_func(rho, mu1, mu2));
    double g2 = alpha * g_func(k_func(rho, mu2, mu1)) +
                2.0 * (1.0 - alpha) * g_func(k_func(rho, mu2, mu2));
    return {g1, g2};
}

LandscapeReport bipartite_max(Correlation rho, double alpha) {
    double r = rho.value;
    if (!(r > -1.0 && r <= 0.0))
        throw DomainViolation("bipartite_max: rho outside (-1, 0]");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainViolation("bipartite_max: alpha outside [0, 1]");
    double interior_val = std::acos(r) / kPi;  // f_alpha at (1/2, 1/2)
    double boundary_val = alpha;               // f_alpha at (0, 1) or (1, 0)
    LandscapeReport rep;
    if (interior_val >= boundary_val) {
        rep.maximizer = {0.5, 0.5};
        rep.value = interior_val;
        rep.location_class = LocationClass::interior;
        auto g = grad_f_alpha(rho, alpha, 0.5, 0.5);
        rep.residual = std::hypot(g[0], g[1]);
    } else {
        rep.maximizer = {0.0, 1.0};
        rep.value = boundary_val;
        rep.location_class = LocationClass::boundary;
        rep.residual = std::abs(f_alpha_bipartite(rho, alpha, 0.0, 1.0) - alpha);
    }
    return rep;
}

bool z_ratio_check(Correlation rho, double t_max, int n) {
    double r = rho.value;
    if (!(r > -1.0 && r < 0.0) || !(t_max > 0.0) || n < 2)
        throw DomainViolation("z_ratio_check: bad arguments");
    double absA = std::sqrt(1.0 - r * r) / std::abs(r);
    double B = std::sqrt((1.0 - r) / (1.0 + r));
    auto Z = [&](double t) { return g_func(absA * t) / g_func(B * t); };
    double prev = Z(t_max / n);
    for (int i = 2; i <= n; ++i) {
        double cur = Z(t_max * i / n);
        if (!(cur > prev)) return false;
        prev = cur;
    }
    // Convexity of h(x) = G(x)/G'(x) = G(x)/(2 phi(x)) via second differences.
    auto h = [](double x) { return g_func(x) / (2.0 * std_normal_pdf(x)); };
    const double step = 1e-4;
    for (int i = 1; i <= n; ++i) {
        double x = t_max * i / n * std::max(absA, B);
        double h2 = h(x + step) - 2.0 * h(x) + h(x - step);
        if (!(h2 > 0.0)) return false;
    }
    return true;
}

}  // namespace mcis
