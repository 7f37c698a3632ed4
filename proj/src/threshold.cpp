#include "mcis/threshold.hpp"

#include <algorithm>
#include <cmath>

namespace mcis {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Correlation rho_of_biases(double b_i, double b_j) {
    if (!(b_i >= -1.0 && b_i <= 1.0 && b_j >= -1.0 && b_j <= 1.0))
        throw DomainViolation("rho_of_biases: bias outside [-1, 1]");
    double denom = (1.0 + b_i) * (1.0 + b_j);
    if (denom == 0.0) return Correlation(0.0);
    double ratio = (1.0 - b_i) * (1.0 - b_j) / denom;
    double r = -std::sqrt(ratio);
    // Feasible bias pairs give |rho| <= 1; clamp the round-off at the edge.
    return Correlation(std::clamp(r, -1.0, 0.0));
}

std::pair<double, double> pq_constants(double b0) {
    if (!(b0 > 0.0 && b0 < 1.0)) throw DomainViolation("pq_constants: b0 outside (0, 1)");
    double rho00 = rho_of_biases(b0, b0).value;
    double s0 = std::acos(rho00) / kPi;
    double p = -2.0 / ((1.0 + b0) * (1.0 + b0) * kPi * std::sin(kPi * s0));
    double q = -p * b0 + s0;
    return {p, q};
}

double ThresholdFunction::operator()(double b) const {
    if (!(b >= -1.0 && b <= 1.0)) throw DomainViolation("threshold: b outside [-1, 1]");
    if (b <= breakpoints.front().first) return breakpoints.front().second;
    if (b >= breakpoints.back().first) return breakpoints.back().second;
    for (size_t k = 1; k < breakpoints.size(); ++k) {
        if (b <= breakpoints[k].first) {
            auto [b0v, t0] = breakpoints[k - 1];
            auto [b1v, t1] = breakpoints[k];
            if (b == b1v) return t1;
            double u = (b - b0v) / (b1v - b0v);
            return t0 + u * (t1 - t0);
        }
    }
    return breakpoints.back().second;
}

double ThresholdFunction::slope_at(double b) const {
    for (size_t k = 1; k < breakpoints.size(); ++k) {
        if (b < breakpoints[k].first || (k + 1 == breakpoints.size() && b <= breakpoints[k].first)) {
            auto [b0v, t0] = breakpoints[k - 1];
            auto [b1v, t1] = breakpoints[k];
            return (t1 - t0) / (b1v - b0v);
        }
    }
    throw DomainViolation("slope_at: b outside [-1, 1]");
}

ThresholdFunction default_threshold(double b0) {
    auto [p, q] = pq_constants(b0);
    (void)p;
    ThresholdFunction t;
    t.b0 = b0;
    t.q = q;
    t.delta = 0.001;
    t.r = 0.001;
    t.mid_slope = 0.42;
    t.breakpoints = {
        {-1.0, 0.0},
        {-b0, q - 0.5 + t.delta},
        {0.0, q / 2.0 + t.delta},
        {b0 - t.r, 0.5 - t.mid_slope * t.r},
        {b0, 0.5},
        {b0 + t.r, 0.5 + t.mid_slope * t.r},
        {1.0, q + 0.0095},
    };
    for (size_t k = 1; k < t.breakpoints.size(); ++k)
        if (!(t.breakpoints[k - 1].first < t.breakpoints[k].first))
            throw DomainViolation("default_threshold: breakpoints not increasing");
    for (auto& [b, v] : t.breakpoints)
        if (!(v >= 0.0 && v <= 1.0))
            throw DomainViolation("default_threshold: value outside [0, 1]");
    return t;
}

double threshold_eval(const ThresholdFunction& t, double b) { return t(b); }

double edge_soundness(const ThresholdFunction& t, double b_i, double b_j, double tol) {
    double rho = rho_of_biases(b_i, b_j).value;
    double ti = t(b_i), tj = t(b_j);
    // t-values of exactly 0 or 1 flow through the Lambda limit formulas
    // inside gaussian_cut (quantiles at -+inf are handled in closed form).
    return gaussian_cut(Correlation(rho), ti, tj, tol);
}

}  // namespace mcis
