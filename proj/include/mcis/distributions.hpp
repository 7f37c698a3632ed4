#pragma once

#include <vector>

#include "mcis/gaussian.hpp"

namespace mcis {

/// A probability table on Omega x Omega. Entries sum to 1; both marginals are
/// valid distributions. Houses mu_1 (the rho-correlated pair), mu_{2,alpha},
/// and their tensor products.
struct PairDistribution {
    int domain_size = 0;
    std::vector<double> table;  // row-major, table[x * domain_size + y]

    double operator()(int x, int y) const { return table[x * domain_size + y]; }
    double& at(int x, int y) { return table[x * domain_size + y]; }

    std::vector<double> marginal_x() const;
    std::vector<double> marginal_y() const;
    double total() const;
};

/// 2x2 table with uniform marginals and Pr[x != y] = (1 - rho)/2.
PairDistribution make_rho_correlated(Correlation rho);

/// The independent-set seed distribution:
/// {(0,0): 1-alpha, (1,0): alpha/2, (0,1): alpha/2, (1,1): 0}.
PairDistribution make_mu2_alpha(double alpha);

/// Tensor product under the pairing ((x1,x2),(y1,y2)); symbol (x1,x2) is
/// encoded as x1 * b.domain_size + x2.
PairDistribution tensor_distribution(const PairDistribution& a, const PairDistribution& b);

/// Correlation rho(Omega^2; mu): the second-largest singular value of the
/// normalized coupling matrix M[x,y] = mu(x,y) / sqrt(mu1(x) mu2(y)).
/// Throws DegenerateMarginal if any marginal atom is zero.
Correlation correlation_of(const PairDistribution& d);

}  // namespace mcis
