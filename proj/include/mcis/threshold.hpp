#pragma once

#include <utility>
#include <vector>

#include "mcis/gaussian.hpp"

namespace mcis {

/// Bias-pair correlation: -sqrt((1-bi)(1-bj) / ((1+bi)(1+bj))) when the
/// denominator is nonzero, else 0. For feasible SDP edges (b_i + b_j >= 0)
/// this is the correlation of the perpendicular parts, and lies in [-1, 0].
Correlation rho_of_biases(double b_i, double b_j);

/// (p, q) of the affine soundness bound at anchor bias b0:
/// p = -2 / ((1+b0)^2 pi sin(pi s0)), q = -p b0 + s0,
/// with s0 = arccos(rho(b0, b0)) / pi.
std::pair<double, double> pq_constants(double b0);

/// Piecewise-linear threshold function on [-1, 1] with the seven break points
///   -1, -b0, 0, b0-r, b0, b0+r, 1
/// and values
///   0, q-1/2+delta, q/2+delta, 1/2-slope*r, 1/2, 1/2+slope*r, q+0.0095.
struct ThresholdFunction {
    double b0 = 0.0, q = 0.0, delta = 0.0, r = 0.0, mid_slope = 0.0;
    std::vector<std::pair<double, double>> breakpoints;  // (b, t(b)), increasing in b

    double operator()(double b) const;
    /// Slope of the linear piece containing b (b strictly between breakpoints).
    double slope_at(double b) const;
};

/// The scheme's threshold function: delta = r = 0.001, mid slope 0.42,
/// q from pq_constants(b0).
ThresholdFunction default_threshold(double b0);

double threshold_eval(const ThresholdFunction& t, double b);

/// Probability that an edge with biases (b_i, b_j) is cut by the rounding
/// scheme: gaussian_cut(rho(b_i, b_j), t(b_i), t(b_j)). Exact limit formulas
/// apply when a threshold value reaches 0 or 1.
double edge_soundness(const ThresholdFunction& t, double b_i, double b_j,
                      double tol = 5e-14);

}  // namespace mcis
