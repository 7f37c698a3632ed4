#pragma once

#include <cmath>

#include "mcis/errors.hpp"

namespace mcis {

/// Correlation coefficient of a pair of random variables, kept in [-1, 1].
struct Correlation {
    double value = 0.0;

    Correlation() = default;
    explicit Correlation(double v) : value(v) {
        if (!(std::isfinite(v)) || v < -1.0 || v > 1.0)
            throw DomainViolation("correlation outside [-1, 1]");
    }
};

/// Standard normal density.
double std_normal_pdf(double x);

/// Standard normal CDF. Accepts +-inf.
double std_normal_cdf(double x);

/// Inverse standard normal CDF on (0, 1). Rational initial guess refined by
/// two Newton steps on the CDF, so cdf(quantile(p)) == p to ~1e-15.
/// If allow_infinite, p == 0 or 1 map to -+inf instead of throwing.
double std_normal_quantile(double p, bool allow_infinite = false);

/// Gaussian quadrant probability Lambda_rho(mu1, mu2):
/// Pr[g1 <= Phi^-1(mu1), g2 <= Phi^-1(mu2)] for rho-correlated standard
/// Gaussians. Symmetric and nondecreasing in each measure argument.
double bvn_quadrant(Correlation rho, double mu1, double mu2, double tol = 5e-14);

/// Bivariate normal CDF at Gaussian-space thresholds (x, y). The measure
/// version above is bvn_cdf(rho, quantile(mu1), quantile(mu2)).
double bvn_cdf(double rho, double x, double y, double tol = 5e-14);

/// Cut_rho(mu1, mu2) = 1 - Lambda(mu1, mu2) - Lambda(1-mu1, 1-mu2):
/// the probability a rho-correlated Gaussian pair is separated by halfspaces
/// of measures mu1 and mu2.
double gaussian_cut(Correlation rho, double mu1, double mu2, double tol = 5e-14);

/// 1 - gaussian_cut.
double co_cut(Correlation rho, double mu1, double mu2, double tol = 5e-14);

/// G(z) = Phi(z) - Phi(-z) = erf(z / sqrt(2)); odd, strictly increasing.
double g_func(double z);

/// K(x, y) = (Phi^-1(y) - rho * Phi^-1(x)) / sqrt(1 - rho^2). |rho| < 1.
double k_func(Correlation rho, double x, double y);

/// Constants from the Max-Cut rounding analysis. rho_star minimizes
/// 2*arccos(rho) / (pi*(1 - rho)); everything else derives from it except
/// b_star, which is the pinned bias 0.1840220 used by the rounding pipeline.
struct CriticalConstants {
    double rho_star;    // ~ -0.68916
    double alpha_gw;    // ~  0.87856
    double c_star;      // (1 - rho_star)/2
    double s_star;      // arccos(rho_star)/pi
    double alpha_star;  // 2*rho_star/(rho_star - 1)
    double b_star;      // 0.1840220
    double p_star;      // slope of the affine soundness bound at b_star
    double q_star;      // intercept of the affine soundness bound at b_star
};

CriticalConstants compute_critical_constants();

}  // namespace mcis
