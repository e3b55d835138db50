// SPDX-License-Identifier: Apache-2.0
#include "fblris/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fblris::special {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// standard normal density
double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Acklam's rational approximation to the inverse normal CDF, good to ~1e-9.
double norm_cdf_inv_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double q_func(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_func: non-finite argument");
    if (x > 40.0) return 0.0;
    if (x < -40.0) return 1.0;
    return 0.5 * std::erfc(x / kSqrt2);
}

double q_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("q_inv: p must be in (0,1)");
    // Q(x) = 1 - CDF(x), so Q^{-1}(p) = CDF^{-1}(1-p) = -CDF^{-1}(p)
    double x = -norm_cdf_inv_approx(p);
    // Newton on q_func; q_func' = -phi
    for (int iter = 0; iter < 4; ++iter) {
        const double err = q_func(x) - p;
        const double d = phi(x);
        if (d <= 0.0) break;
        const double step = err / d;
        x += step;
        if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
    return std::lgamma(x);
}

std::complex<double> log_gamma(std::complex<double> z) {
    // Lanczos, g = 7, 9 terms
    static const double coef[] = {0.99999999999980993,  676.5203681218851,
                                  -1259.1392167224028,  771.32342877765313,
                                  -176.61502916214059,  12.507343278686905,
                                  -0.13857109526572012, 9.9843695780195716e-6,
                                  1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(M_PI / std::sin(M_PI * z)) - log_gamma(1.0 - z);
    }
    const std::complex<double> zm1 = z - 1.0;
    std::complex<double> x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (zm1 + static_cast<double>(i));
    const std::complex<double> t = zm1 + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

double laguerre(int i, double a, double x) {
    if (i < 0) throw std::domain_error("laguerre: negative degree");
    if (i > kLaguerreMaxDegree)
        throw std::domain_error("laguerre: degree above supported cap");
    if (i == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + a - x;
    for (int k = 1; k < i; ++k) {
        const double lp1 = ((2.0 * k + a + 1.0 - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double log_gamma_pdf(double x, double k, double theta) {
    if (!(k > 0.0) || !(theta > 0.0))
        throw std::domain_error("gamma_pdf: k and theta must be positive");
    if (x < 0.0) throw std::domain_error("gamma_pdf: x must be nonnegative");
    if (x == 0.0) {
        if (k < 1.0) return std::numeric_limits<double>::infinity();
        if (k == 1.0) return -std::log(theta);
        return -std::numeric_limits<double>::infinity();
    }
    return (k - 1.0) * std::log(x) - x / theta - log_gamma(k) - k * std::log(theta);
}

double gamma_pdf(double x, double k, double theta) {
    const double lp = log_gamma_pdf(x, k, theta);
    if (lp == std::numeric_limits<double>::infinity()) return lp;
    return lp < -745.0 ? 0.0 : std::exp(lp);
}

}  // namespace fblris::special
