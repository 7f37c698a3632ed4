#pragma once

#include "mcis/interval.hpp"

namespace mcis {

/// Rigorous enclosure of the standard normal CDF. Series with alternating
/// remainder on [0, 2], Laplace continued-fraction convergent bounds on the
/// tail; monotone endpoint evaluation for interval arguments.
Interval i_phi(const Interval& x);

/// Certified enclosure of phi(x) = exp(-x^2/2)/sqrt(2 pi).
Interval i_normal_pdf(const Interval& x);

/// Enclosure of the normal quantile via verified bracketing plus interval
/// bisection on i_phi. p must be inside (0, 1).
Interval i_phi_inv(const Interval& p);

/// Rigorous enclosure of the bivariate normal CDF Phi_rho(x, y) at
/// Gaussian-space thresholds. Monotone in rho, x and y, so interval arguments
/// reduce to two certified corner evaluations; each corner integrates
/// exp(-Q(theta)) over [0, arcsin(rho)] with midpoint-rule panels whose
/// curvature term is enclosed in interval arithmetic. `width_target` steers
/// the panel subdivision; the result is rigorous at any setting.
Interval i_bvn(const Interval& rho, const Interval& x, const Interval& y,
               double width_target = 1e-8);

/// Single certified corner evaluation behind i_bvn (scalar arguments).
Interval i_bvn_point(double rho, double x, double y, double width_target = 1e-8);

}  // namespace mcis
