#include "mcis/distributions.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace mcis {

std::vector<double> PairDistribution::marginal_x() const {
    std::vector<double> m(domain_size, 0.0);
    for (int x = 0; x < domain_size; ++x)
        for (int y = 0; y < domain_size; ++y) m[x] += (*this)(x, y);
    return m;
}

std::vector<double> PairDistribution::marginal_y() const {
    std::vector<double> m(domain_size, 0.0);
    for (int x = 0; x < domain_size; ++x)
        for (int y = 0; y < domain_size; ++y) m[y] += (*this)(x, y);
    return m;
}

double PairDistribution::total() const {
    double s = 0.0;
    for (double v : table) s += v;
    return s;
}

PairDistribution make_rho_correlated(Correlation rho) {
    double agree = (1.0 + rho.value) / 4.0;
    double differ = (1.0 - rho.value) / 4.0;
    PairDistribution d;
    d.domain_size = 2;
    d.table = {agree, differ, differ, agree};
    return d;
}

PairDistribution make_mu2_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainViolation("make_mu2_alpha: alpha outside [0, 1]");
    PairDistribution d;
    d.domain_size = 2;
    d.table = {1.0 - alpha, alpha / 2.0, alpha / 2.0, 0.0};
    return d;
}

PairDistribution tensor_distribution(const PairDistribution& a, const PairDistribution& b) {
    PairDistribution d;
    d.domain_size = a.domain_size * b.domain_size;
    d.table.assign(static_cast<size_t>(d.domain_size) * d.domain_size, 0.0);
    for (int xa = 0; xa < a.domain_size; ++xa)
        for (int xb = 0; xb < b.domain_size; ++xb)
            for (int ya = 0; ya < a.domain_size; ++ya)
                for (int yb = 0; yb < b.domain_size; ++yb) {
                    int x = xa * b.domain_size + xb;
                    int y = ya * b.domain_size + yb;
                    d.at(x, y) = a(xa, ya) * b(xb, yb);
                }
    return d;
}

Correlation correlation_of(const PairDistribution& d) {
    auto mx = d.marginal_x();
    auto my = d.marginal_y();
    for (int i = 0; i < d.domain_size; ++i)
        if (mx[i] <= 0.0 || my[i] <= 0.0)
            throw DegenerateMarginal("correlation_of: marginal atom is zero; restrict support");
    Eigen::MatrixXd m(d.domain_size, d.domain_size);
    for (int x = 0; x < d.domain_size; ++x)
        for (int y = 0; y < d.domain_size; ++y)
            m(x, y) = d(x, y) / std::sqrt(mx[x] * my[y]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    // The top singular value is 1 (the constant functions); the correlation
    // is the next one.
    double second = svd.singularValues()(1);
    return Correlation(std::min(second, 1.0));
}

}  // namespace mcis
