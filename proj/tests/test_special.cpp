#include <doctest.h>

#include <cmath>
#include <random>

#include "fblris/quadrature.hpp"
#include "fblris/special.hpp"

using namespace fblris;
using namespace fblris::special;

namespace {

// independent oracle: Gaussian tail by adaptive quadrature
double q_oracle(double x) {
    const double upper = std::max(x, 0.0) + 40.0;
    return integrate(
        [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); }, x,
        upper, 1e-14);
}

// independent oracle: bisection on q_func
double q_inv_oracle(double p) {
    double lo = -42.0, hi = 42.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (q_func(mid) > p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("q_func basic values") {
    CHECK(q_func(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q_func(41.0) == 0.0);
    CHECK(q_func(-41.0) == 1.0);
    CHECK(q_func(3.0902) == doctest::Approx(1.0e-3).epsilon(1e-3));
    CHECK(q_func(3.0902) == doctest::Approx(q_oracle(3.0902)).epsilon(1e-10));
    CHECK_THROWS_AS(q_func(std::nan("")), std::domain_error);
}

TEST_CASE("q_func matches the quadrature oracle over the working range") {
    for (double x = -8.0; x <= 8.0; x += 0.37) {
        const double ref = q_oracle(x);
        CHECK(std::fabs(q_func(x) - ref) <= 1e-12 * std::max(ref, 1e-300) + 1e-15);
    }
}

TEST_CASE("q_func symmetry and monotonicity") {
    double prev = 2.0;
    for (double x = -8.0; x <= 8.0; x += 0.11) {
        CHECK(q_func(x) + q_func(-x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(q_func(x) < prev);
        prev = q_func(x);
    }
}

TEST_CASE("q_inv basic values") {
    CHECK(q_inv(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q_inv(1e-3) == doctest::Approx(3.0902).epsilon(1e-4));
    CHECK(q_inv(1e-3) == doctest::Approx(q_inv_oracle(1e-3)).epsilon(1e-10));
    CHECK(q_inv(q_func(1.7)) == doctest::Approx(1.7).epsilon(1e-10));
    CHECK_THROWS_AS(q_inv(0.0), std::domain_error);
    CHECK_THROWS_AS(q_inv(1.0), std::domain_error);
}

TEST_CASE("q_inv is the functional inverse on a 1000-point grid") {
    // log-spaced into both tails plus a linear sweep of the bulk
    for (int i = 0; i < 1000; ++i) {
        double p;
        if (i < 300)
            p = std::pow(10.0, -15.0 + 14.5 * i / 300.0);
        else if (i < 700)
            p = 0.02 + 0.96 * (i - 300) / 400.0;
        else
            p = 1.0 - std::pow(10.0, -15.0 + 14.5 * (999 - i) / 300.0);
        const double x = q_inv(p);
        CHECK(std::fabs(q_func(x) - p) <= 1e-10);
    }
}

TEST_CASE("log_gamma values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-13));
    CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-12));
    CHECK(std::isfinite(log_gamma(1e5)));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-2.0), std::domain_error);
}

TEST_CASE("complex log_gamma agrees with the real one on the axis") {
    for (double x : {0.7, 1.0, 2.5, 10.0, 123.4}) {
        const auto lz = log_gamma(std::complex<double>(x, 0.0));
        CHECK(lz.real() == doctest::Approx(log_gamma(x)).epsilon(1e-11));
        CHECK(std::fabs(lz.imag()) < 1e-10);
    }
}

TEST_CASE("laguerre closed forms") {
    CHECK(laguerre(0, 3.2, 7.7) == 1.0);
    for (double a : {0.0, 1.0, 2.5})
        for (double x : {0.0, 0.3, 4.0})
            CHECK(laguerre(1, a, x) == doctest::Approx(1.0 + a - x).epsilon(1e-14));
    // L_3^0(x) = (-x^3 + 9x^2 - 18x + 6)/6 at x = 2 -> -1/3
    CHECK(laguerre(3, 0.0, 2.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre(65, 0.0, 1.0), std::domain_error);
}

TEST_CASE("laguerre satisfies the three-term recurrence") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> ua(0.0, 5.0), ux(0.0, 30.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = ua(gen), x = ux(gen);
        for (int i = 1; i < 20; ++i) {
            const double lhs = (i + 1.0) * laguerre(i + 1, a, x);
            const double rhs = (2.0 * i + a + 1.0 - x) * laguerre(i, a, x) -
                               (i + a) * laguerre(i - 1, a, x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("gamma_pdf values") {
    CHECK(gamma_pdf(0.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_pdf(1.0, 2.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
    CHECK(std::isfinite(gamma_pdf(1.0, 1e4, 1e-4)));  // shape = blocklength scale
    CHECK_THROWS_AS(gamma_pdf(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_pdf(-1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("gamma_pdf normalizes for fixed and randomized parameters") {
    for (auto [k, th] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {50.0, 0.1}}) {
        const double mass = integrate_semi_inf(
            [k = k, th = th](double x) { return gamma_pdf(x, k, th); }, 0.0, 1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> uk(0.5, 100.0), uth(0.05, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double k = uk(gen), th = uth(gen);
        const double mass = integrate_semi_inf(
            [k, th](double x) { return gamma_pdf(x, k, th); }, 0.0, 1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
    }
}
