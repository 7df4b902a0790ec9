#pragma once

// Scalar special functions and small optimizers used across the library.
// Everything here is pure and thread-safe.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace scorm::math {

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
inline constexpr double sqrt2 = 1.4142135623730950488016887;

// Standard normal density.
inline double normal_pdf(double z) {
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// Standard normal CDF via the complementary error function; accurate in
// both tails.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / sqrt2);
}

inline double normal_sf(double z) {
    return 0.5 * std::erfc(z / sqrt2);
}

// Inverse standard normal CDF. Acklam's rational approximation polished
// with one Halley step, good to ~1e-15 over (0, 1).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x); series for x < a + 1,
// continued fraction otherwise.
double gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of
// freedom, i.e. P(X > x).
inline double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

// Sample mean.
double mean(std::span<const double> xs);

// Population variance (divide by n).
double variance(std::span<const double> xs);

// Golden-section search for the minimum of f on [lo, hi]. Converges to a
// bracket of width `tol`; f is assumed unimodal on the interval (for the
// smooth one-dimensional objectives used here multimodality has not been
// an issue in practice).
double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol = 1e-10,
                               int max_iter = 200);

// Nelder-Mead simplex minimizer for low-dimensional objectives.
struct SimplexResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Minimizes f starting from `start`; `scale` sets the initial simplex edge
// lengths per coordinate. Stops when the simplex diameter falls below
// `diameter_tol` or after `max_iter` iterations.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> start,
                          std::span<const double> scale,
                          double diameter_tol = 1e-8,
                          int max_iter = 2000);

} // namespace scorm::math
