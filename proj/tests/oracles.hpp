#pragma once

// Test-side oracles, kept independent of the library's evaluation paths:
// adaptive quadrature, long-double density formulas, and KS distance.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "scorm/distributions.hpp"

namespace oracle {

// Adaptive Simpson quadrature.
inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_step(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

// Numerical mass of the mixture over its whole support. The tail is
// integrated in the variable t with x(t) = u + beta (e^{xi t} - 1)/xi,
// which keeps heavy tails (xi near 1.5 pushes the 1 - 1e-12 quantile
// past 1e18) on a bounded, well-conditioned range; the integrand is
// still the implementation's density times the exact Jacobian.
inline double hpd_total_mass(const scorm::HpdParams& p, double tol = 1e-9) {
    double u = p.threshold();
    double body_lo = p.mu - 14.0 * p.sigma; // parent mass below is < 1e-44
    double body = 0.0;
    if (body_lo < u)
        body = integrate([&](double x) { return scorm::hpd_pdf(x, p); }, body_lo, u, tol);
    double tail = 0.0;
    if (p.p_extreme > 0.0) {
        double xi = p.gpd.xi, beta = p.gpd.beta;
        auto x_of_t = [&](double t) {
            return std::fabs(xi) < 1e-8 ? u + beta * t : u + beta * std::expm1(xi * t) / xi;
        };
        auto jacobian = [&](double t) { return beta * std::exp(xi * t); };
        double t_max = -std::log(1e-12); // truncates 1e-12 of the tail mass
        tail = integrate(
            [&](double t) { return scorm::hpd_pdf(x_of_t(t), p) * jacobian(t); }, 0.0, t_max,
            tol);
    }
    return body + tail;
}

// Long-double GPD density, written independently of the library path.
inline long double gpd_pdf_ld(long double x, long double u, long double xi, long double beta) {
    if (x < u) return 0.0L;
    long double y = (x - u) / beta;
    if (std::fabs((double)xi) < 1e-8) return expl(-y) / beta;
    long double t = 1.0L + xi * y;
    if (t <= 0.0L) return 0.0L;
    return powl(t, -1.0L / xi - 1.0L) / beta;
}

inline long double sqrt2pi_ld() { return 2.50662827463100050241576528481L; }

inline long double normal_cdf_ld(long double z) { return 0.5L * erfcl(-z / sqrtl(2.0L)); }

inline long double trunc_normal_pdf_ld(long double x, long double mu, long double sigma,
                                       long double ub) {
    if (x >= ub) return 0.0L;
    long double z = (x - mu) / sigma;
    long double mass = std::isinf((double)ub) ? 1.0L : normal_cdf_ld((ub - mu) / sigma);
    return expl(-0.5L * z * z) / (sigma * sqrt2pi_ld()) / mass;
}

inline long double hpd_neg_log_lik_ld(const std::vector<double>& data,
                                      const scorm::HpdParams& p) {
    long double nll = 0.0L;
    for (double x : data) {
        long double d;
        if (x < p.gpd.u)
            d = (1.0L - (long double)p.p_extreme) *
                trunc_normal_pdf_ld(x, p.mu, p.sigma, p.gpd.u);
        else
            d = (long double)p.p_extreme * gpd_pdf_ld(x, p.gpd.u, p.gpd.xi, p.gpd.beta);
        nll -= logl(d);
    }
    return nll;
}

// Kolmogorov-Smirnov distance between a sample and the mixture CDF.
inline double ks_distance(std::vector<double> sample, const scorm::HpdParams& p) {
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double c = scorm::hpd_cdf(sample[i], p);
        ks = std::max(ks, std::fabs(c - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::fabs(c - static_cast<double>(i) / n));
    }
    return ks;
}

// The anchored case-study fit used as a reference parameter set.
inline scorm::HpdParams case_study_params() {
    scorm::HpdParams p;
    p.mu = 9.9838;
    p.sigma = 22.9521;
    p.gpd = {38.0, 0.5994, 121.1862};
    p.p_extreme = 9.0 / 81.0;
    return p;
}

} // namespace oracle
