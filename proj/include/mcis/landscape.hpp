#pragma once

#include <array>
#include <vector>

#include "mcis/gaussian.hpp"

namespace mcis {

/// A point of the tripartite cut landscape: three halfspace measures in [0,1].
struct TripartitePoint {
    std::array<double, 3> mu{0.5, 0.5, 0.5};
};

enum class LocationClass { interior, boundary };

struct LandscapeReport {
    std::vector<double> maximizer;  // 2 or 3 components
    double value = 0.0;             // normalized to edge-fraction units unless noted
    LocationClass location_class = LocationClass::interior;
    double residual = 0.0;          // gradient norm or boundary-certificate gap
};

/// F_cut(mu) = sum_{i<j} Cut_rho(mu_i, mu_j); unnormalized, in [0, 3].
double f_cut_tripartite(Correlation rho, const TripartitePoint& p, double tol = 5e-14);

/// Gradient of the co-cut sum sum_{i<j} coCut_rho(mu_i, mu_j), i.e. the
/// negative gradient of f_cut_tripartite. Component i is
/// G(K(mu_i, mu_j)) + G(K(mu_i, mu_k)). Interior points only.
std::array<double, 3> grad_f_tripartite(Correlation rho, const TripartitePoint& p);

/// The unique interior stationary point for rho in (-1, 0], rho != -1/2,
/// obtained by solving the 3x3 linear system in quantile space. Throws
/// SingularSystem at rho == -1/2 where the system loses rank.
TripartitePoint stationary_solve(Correlation rho);

/// Maximum of F_cut over the boundary of [0,1]^3: value 2, attained on the
/// family (0, 1, x) up to permutation. Scans all six faces with a coarse grid
/// and golden-section refinement. Reported value is unnormalized.
LandscapeReport boundary_max_tripartite(Correlation rho);

/// Global maximum of the normalized tripartite objective (F_cut / 3):
/// arccos(rho)/pi at (1/2,1/2,1/2) for rho < -1/2, else 2/3 on the boundary.
LandscapeReport tripartite_max(Correlation rho);

/// F_alpha(mu1, mu2) = alpha*Cut_rho(mu1, mu2) + (1-alpha)*Cut_rho(mu2, mu2).
double f_alpha_bipartite(Correlation rho, double alpha, double mu1, double mu2,
                         double tol = 5e-14);

/// Closed-form gradient of f_alpha_bipartite at an interior point.
std::array<double, 2> grad_f_alpha(Correlation rho, double alpha, double mu1, double mu2);

/// Global maximum of f_alpha_bipartite: max(arccos(rho)/pi, alpha), interior
/// maximizer (1/2, 1/2) in the first case, (0,1)/(1,0) in the second.
LandscapeReport bipartite_max(Correlation rho, double alpha);

/// Checks that Z(t) = G(|A|t)/G(Bt) is strictly increasing on an n-point grid
/// of (0, t_max], with A = sqrt(1-rho^2)/rho and B = sqrt((1-rho)/(1+rho)),
/// and that h(x) = G(x)/G'(x) has positive second differences (convexity).
bool z_ratio_check(Correlation rho, double t_max, int n);

}  // namespace mcis
