#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mcis/gaussian.hpp"

using namespace mcis;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Bisection oracle: invert a monotone function without touching the quantile
// code path.
double bisect_cdf(double target) {
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (lo + hi);
        (std_normal_cdf(m) < target ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("pdf basics") {
    CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
    // high-precision reference evaluation of the closed form
    CHECK(std_normal_pdf(1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-13));
    for (double x : {0.3, 1.7, 2.9}) CHECK(std_normal_pdf(x) == std_normal_pdf(-x));
}

TEST_CASE("cdf basics") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std_normal_cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(std_normal_cdf(-std::numeric_limits<double>::infinity()) == 0.0);
    for (double x : {0.1, 0.9, 2.2, 4.4})
        CHECK(std_normal_cdf(-x) == doctest::Approx(1.0 - std_normal_cdf(x)).epsilon(1e-15));
    double x95 = bisect_cdf(0.95);
    CHECK(x95 == doctest::Approx(1.6448536269514722).epsilon(1e-12));
}

TEST_CASE("quantile inverts cdf") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK(std_normal_quantile(0.95) == doctest::Approx(bisect_cdf(0.95)).epsilon(1e-12));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(1e-12, 1.0 - 1e-12);
    for (int it = 0; it < 2000; ++it) {
        double p = unif(rng);
        double x = std_normal_quantile(p);
        CHECK(std_normal_cdf(x) == doctest::Approx(p).epsilon(1e-12));
        CHECK(std_normal_quantile(1.0 - p) == doctest::Approx(-x).epsilon(1e-9));
    }
    CHECK_THROWS_AS(std_normal_quantile(0.0), DomainViolation);
    CHECK(std::isinf(std_normal_quantile(1.0, true)));
}

TEST_CASE("bvn quadrant closed forms") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int it = 0; it < 50; ++it) {
        double a = unif(rng), b = unif(rng);
        CHECK(bvn_quadrant(Correlation(0.0), a, b) == doctest::Approx(a * b).epsilon(1e-14));
        CHECK(bvn_quadrant(Correlation(-1.0), a, b) ==
              doctest::Approx(std::max(0.0, a + b - 1.0)).epsilon(1e-14));
        CHECK(bvn_quadrant(Correlation(1.0), a, b) == doctest::Approx(std::min(a, b)));
    }
    // Sheppard: Lambda_rho(1/2, 1/2) = (1 - arccos(rho)/pi)/2
    for (int k = 0; k <= 100; ++k) {
        double rho = -0.999 + 1.998 * k / 100.0;
        double expect = (1.0 - std::acos(rho) / kPi) / 2.0;
        CHECK(bvn_quadrant(Correlation(rho), 0.5, 0.5) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("bvn quadrant symmetry and monotonicity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(0.02, 0.98);
    std::uniform_real_distribution<double> rhod(-0.98, 0.98);
    for (int it = 0; it < 40; ++it) {
        Correlation rho(rhod(rng));
        double a = unif(rng), b = unif(rng);
        CHECK(bvn_quadrant(rho, a, b) == doctest::Approx(bvn_quadrant(rho, b, a)).epsilon(1e-11));
        double h = 0.01;
        if (a + h < 1.0)
            CHECK(bvn_quadrant(rho, a + h, b) >= bvn_quadrant(rho, a, b) - 1e-12);
    }
}

TEST_CASE("bvn quadrant vs Monte Carlo") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    std::uniform_real_distribution<double> rhod(-0.95, 0.95);
    std::normal_distribution<double> gauss;
    const int kSamples = 200000;
    for (int it = 0; it < 8; ++it) {
        double rho = rhod(rng), a = unif(rng), b = unif(rng);
        double xa = std_normal_quantile(a), xb = std_normal_quantile(b);
        double c = std::sqrt(1.0 - rho * rho);
        long hits = 0;
        for (int s = 0; s < kSamples; ++s) {
            double g1 = gauss(rng);
            double g2 = rho * g1 + c * gauss(rng);
            if (g1 <= xa && g2 <= xb) ++hits;
        }
        double est = static_cast<double>(hits) / kSamples;
        double se = std::sqrt(est * (1.0 - est) / kSamples) + 1e-9;
        double val = bvn_quadrant(Correlation(rho), a, b);
        CHECK(std::abs(val - est) <= 4.0 * se);
    }
}

TEST_CASE("gaussian cut identities") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> rhod(-0.99, 0.99);
    for (int it = 0; it < 30; ++it) {
        Correlation rho(rhod(rng));
        double m = unif(rng);
        CHECK(gaussian_cut(rho, 0.5, 0.5) ==
              doctest::Approx(std::acos(rho.value) / kPi).epsilon(1e-10));
        CHECK(gaussian_cut(rho, 0.0, 1.0) == doctest::Approx(1.0));
        CHECK(gaussian_cut(rho, 1.0, m) == doctest::Approx(1.0 - m).epsilon(1e-13));
        double a = unif(rng), b = unif(rng);
        // complement symmetry is exact: the two Lambda terms swap
        CHECK(gaussian_cut(rho, a, b) == gaussian_cut(rho, 1.0 - a, 1.0 - b));
        CHECK(co_cut(rho, a, b) == doctest::Approx(1.0 - gaussian_cut(rho, a, b)));
    }
    CHECK(co_cut(Correlation(0.4), 0.0, 1.0) == doctest::Approx(0.0));
    double a = 0.3, b = 0.8;
    CHECK(co_cut(Correlation(0.0), a, b) ==
          doctest::Approx(a * b + (1 - a) * (1 - b)).epsilon(1e-13));
}

TEST_CASE("convexity of x -> Lambda(x, x)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.02, 0.98);
    std::uniform_real_distribution<double> rhod(-0.95, 0.95);
    for (int it = 0; it < 60; ++it) {
        Correlation rho(rhod(rng));
        double x = unif(rng), y = unif(rng);
        double m = 0.5 * (x + y);
        double lhs = bvn_quadrant(rho, m, m);
        double rhs = 0.5 * (bvn_quadrant(rho, x, x) + bvn_quadrant(rho, y, y));
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("Lambda partial derivative matches finite differences") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unif(0.1, 0.9);
    std::uniform_real_distribution<double> rhod(-0.9, 0.9);
    for (int it = 0; it < 25; ++it) {
        double rho = rhod(rng), x = unif(rng), y = unif(rng);
        // closed form: dLambda/dx = Phi((t(y) - rho t(x))/sqrt(1-rho^2))
        double closed = std_normal_cdf(k_func(Correlation(rho), x, y));
        double h = 1e-5;
        double fd = (bvn_quadrant(Correlation(rho), x + h, y) -
                     bvn_quadrant(Correlation(rho), x - h, y)) /
                    (2.0 * h);
        CHECK(closed == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("g and k helpers") {
    CHECK(g_func(0.0) == 0.0);
    for (double z : {0.2, 1.1, 2.5}) {
        CHECK(g_func(-z) == doctest::Approx(-g_func(z)));
        CHECK(g_func(z) == doctest::Approx(2.0 * std_normal_cdf(z) - 1.0).epsilon(1e-14));
    }
    CHECK(g_func(1.6448536269514722) == doctest::Approx(0.9).epsilon(1e-10));
    CHECK(k_func(Correlation(-0.5), 0.5, 0.5) == 0.0);
    CHECK(k_func(Correlation(0.0), 0.3, 0.7) ==
          doctest::Approx(std_normal_quantile(0.7)).epsilon(1e-14));
    CHECK_THROWS_AS(k_func(Correlation(1.0), 0.3, 0.7), DomainViolation);
}

TEST_CASE("critical constants") {
    auto cc = compute_critical_constants();
    CHECK(cc.rho_star == doctest::Approx(-0.68915).epsilon(1e-4));
    CHECK(cc.alpha_gw == doctest::Approx(0.87856).epsilon(1e-4));
    CHECK(cc.s_star == doctest::Approx(std::acos(cc.rho_star) / kPi).epsilon(1e-12));
    CHECK(cc.c_star == doctest::Approx((1.0 - cc.rho_star) / 2.0).epsilon(1e-12));
    CHECK(cc.alpha_gw == doctest::Approx(cc.s_star / cc.c_star).epsilon(1e-12));
    CHECK(cc.alpha_star == doctest::Approx(2.0 * cc.rho_star / (cc.rho_star - 1.0)));
    CHECK(std::abs(cc.b_star - (1.0 - cc.alpha_star)) <= 1e-4);
    CHECK(cc.p_star == doctest::Approx(-0.6266938).epsilon(1e-6));
    CHECK(cc.q_star == doctest::Approx(0.8573447).epsilon(1e-6));
    // the objective is minimized: compare against neighbors
    auto obj = [](double r) { return 2.0 * std::acos(r) / (kPi * (1.0 - r)); };
    CHECK(obj(cc.rho_star) <= obj(cc.rho_star + 1e-6));
    CHECK(obj(cc.rho_star) <= obj(cc.rho_star - 1e-6));
}
