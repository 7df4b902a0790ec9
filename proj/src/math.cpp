#include "scorm/math.hpp"

#include "scorm/error.hpp"

#include <algorithm>
#include <cmath>

namespace scorm::math {

namespace {

// Acklam's coefficients for the inverse normal CDF.
constexpr double a_coef[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double b_coef[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
constexpr double c_coef[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
constexpr double d_coef[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};

double acklam_raw(double p) {
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c_coef[0] * q + c_coef[1]) * q + c_coef[2]) * q + c_coef[3]) * q + c_coef[4]) * q + c_coef[5]) /
               ((((d_coef[0] * q + d_coef[1]) * q + d_coef[2]) * q + d_coef[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        return (((((a_coef[0] * r + a_coef[1]) * r + a_coef[2]) * r + a_coef[3]) * r + a_coef[4]) * r + a_coef[5]) * q /
               (((((b_coef[0] * r + b_coef[1]) * r + b_coef[2]) * r + b_coef[3]) * r + b_coef[4]) * r + 1.0);
    }
    double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c_coef[0] * q + c_coef[1]) * q + c_coef[2]) * q + c_coef[3]) * q + c_coef[4]) * q + c_coef[5]) /
           ((((d_coef[0] * q + d_coef[1]) * q + d_coef[2]) * q + d_coef[3]) * q + 1.0);
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw_error(ErrorKind::InvalidParameter, "normal_quantile: p must lie in [0, 1]");
    }
    double x = acklam_raw(p);
    // One Halley refinement against erfc brings the approximation to
    // near machine precision.
    double e = 0.5 * std::erfc(-x / sqrt2) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), modified Lentz.
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw_error(ErrorKind::InvalidParameter, "gamma_p: a must be > 0");
    if (x < 0.0) throw_error(ErrorKind::InvalidParameter, "gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0) throw_error(ErrorKind::InvalidParameter, "gamma_q: a must be > 0");
    if (x < 0.0) throw_error(ErrorKind::InvalidParameter, "gamma_q: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw_error(ErrorKind::InvalidInput, "mean: empty input");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

double golden_section_minimize(const std::function<double(double)>& f,
                               double lo, double hi, double tol, int max_iter) {
    constexpr double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> start,
                          std::span<const double> scale,
                          double diameter_tol, int max_iter) {
    const std::size_t n = start.size();
    const std::size_t m = n + 1;

    std::vector<std::vector<double>> pts(m, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale[i];

    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = f(pts[i]);

    auto diameter = [&]() {
        double d = 0.0;
        for (std::size_t i = 1; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d = std::max(d, std::fabs(pts[i][j] - pts[0][j]));
        return d;
    };

    SimplexResult result;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // Order: best first, worst last.
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> sorted_pts(m);
        std::vector<double> sorted_vals(m);
        for (std::size_t i = 0; i < m; ++i) {
            sorted_pts[i] = pts[idx[i]];
            sorted_vals[i] = vals[idx[i]];
        }
        pts = std::move(sorted_pts);
        vals = std::move(sorted_vals);

        if (diameter() < diameter_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (pts[m - 1][j] - centroid[j]);
            return p;
        };

        std::vector<double> refl = blend(-1.0);
        double f_refl = f(refl);
        if (f_refl < vals[0]) {
            std::vector<double> exp_pt = blend(-2.0);
            double f_exp = f(exp_pt);
            if (f_exp < f_refl) {
                pts[m - 1] = std::move(exp_pt);
                vals[m - 1] = f_exp;
            } else {
                pts[m - 1] = std::move(refl);
                vals[m - 1] = f_refl;
            }
        } else if (f_refl < vals[m - 2]) {
            pts[m - 1] = std::move(refl);
            vals[m - 1] = f_refl;
        } else {
            std::vector<double> contr = blend(f_refl < vals[m - 1] ? -0.5 : 0.5);
            double f_contr = f(contr);
            if (f_contr < std::min(vals[m - 1], f_refl)) {
                pts[m - 1] = std::move(contr);
                vals[m - 1] = f_contr;
            } else {
                // Shrink toward the best point.
                for (std::size_t i = 1; i < m; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (vals[i] < vals[best]) best = i;
    result.x = pts[best];
    result.value = vals[best];
    result.iterations = iter;
    return result;
}

} // namespace scorm::math
