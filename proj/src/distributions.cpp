#include "scorm/distributions.hpp"

#include <cmath>
#include <limits>

#include "scorm/error.hpp"
#include "scorm/math.hpp"

namespace scorm {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

double GpdParams::support_upper() const {
    if (xi < -gpd_xi_switch_tol) return u - beta / xi;
    return inf;
}

void GpdParams::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw_error(ErrorKind::InvalidParameter, "GpdParams: beta must be > 0");
    if (!std::isfinite(u) || !std::isfinite(xi))
        throw_error(ErrorKind::InvalidParameter, "GpdParams: non-finite parameter");
}

void HpdParams::validate() const {
    gpd.validate();
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw_error(ErrorKind::InvalidParameter, "HpdParams: sigma must be > 0");
    if (!std::isfinite(mu))
        throw_error(ErrorKind::InvalidParameter, "HpdParams: non-finite mu");
    if (!(p_extreme >= 0.0 && p_extreme <= 1.0))
        throw_error(ErrorKind::InvalidParameter, "HpdParams: p_extreme must lie in [0, 1]");
}

double trunc_normal_pdf(double x, double mu, double sigma, double upper_bound) {
    if (!(sigma > 0.0))
        throw_error(ErrorKind::InvalidParameter, "trunc_normal_pdf: sigma must be > 0");
    if (x >= upper_bound) return 0.0;
    double mass = std::isinf(upper_bound) ? 1.0 : math::normal_cdf((upper_bound - mu) / sigma);
    if (mass <= 0.0) return 0.0;
    return math::normal_pdf((x - mu) / sigma) / (sigma * mass);
}

double trunc_normal_cdf(double x, double mu, double sigma, double upper_bound) {
    if (!(sigma > 0.0))
        throw_error(ErrorKind::InvalidParameter, "trunc_normal_cdf: sigma must be > 0");
    if (x >= upper_bound) return 1.0;
    double mass = std::isinf(upper_bound) ? 1.0 : math::normal_cdf((upper_bound - mu) / sigma);
    if (mass <= 0.0) return 1.0;
    double c = math::normal_cdf((x - mu) / sigma) / mass;
    return c < 1.0 ? c : 1.0;
}

double trunc_normal_quantile(double q, double mu, double sigma, double upper_bound) {
    if (!(sigma > 0.0))
        throw_error(ErrorKind::InvalidParameter, "trunc_normal_quantile: sigma must be > 0");
    if (!(q >= 0.0 && q <= 1.0))
        throw_error(ErrorKind::InvalidParameter, "trunc_normal_quantile: q must lie in [0, 1]");
    if (q >= 1.0) return upper_bound;
    double mass = std::isinf(upper_bound) ? 1.0 : math::normal_cdf((upper_bound - mu) / sigma);
    if (!(mass > 0.0))
        throw_error(ErrorKind::Numeric,
                    "trunc_normal_quantile: no body mass below the truncation point");
    return mu + sigma * math::normal_quantile(q * mass);
}

double gpd_pdf(double x, const GpdParams& p) {
    p.validate();
    if (x < p.u) return 0.0;
    double y = (x - p.u) / p.beta;
    if (std::fabs(p.xi) < gpd_xi_switch_tol) {
        return std::exp(-y) / p.beta;
    }
    double t = 1.0 + p.xi * y;
    if (t <= 0.0) return 0.0; // beyond the xi < 0 support edge
    return std::exp(-(1.0 / p.xi + 1.0) * std::log1p(p.xi * y)) / p.beta;
}

double gpd_cdf(double x, const GpdParams& p) {
    p.validate();
    if (x <= p.u) return 0.0;
    double y = (x - p.u) / p.beta;
    if (std::fabs(p.xi) < gpd_xi_switch_tol) {
        return -std::expm1(-y);
    }
    double t = 1.0 + p.xi * y;
    if (t <= 0.0) return 1.0;
    return -std::expm1(-std::log1p(p.xi * y) / p.xi);
}

double gpd_quantile(double q, const GpdParams& p) {
    p.validate();
    if (!(q >= 0.0 && q < 1.0))
        throw_error(ErrorKind::InvalidParameter, "gpd_quantile: q must lie in [0, 1)");
    if (std::fabs(p.xi) < gpd_xi_switch_tol) {
        return p.u - p.beta * std::log1p(-q);
    }
    return p.u + p.beta / p.xi * std::expm1(-p.xi * std::log1p(-q));
}

double hpd_pdf(double x, const HpdParams& p) {
    p.validate();
    double u = p.threshold();
    if (x < u) {
        if (p.p_extreme >= 1.0) return 0.0;
        return (1.0 - p.p_extreme) * trunc_normal_pdf(x, p.mu, p.sigma, u);
    }
    if (p.p_extreme <= 0.0) return 0.0;
    return p.p_extreme * gpd_pdf(x, p.gpd);
}

double hpd_cdf(double x, const HpdParams& p) {
    p.validate();
    double u = p.threshold();
    if (x < u) {
        return (1.0 - p.p_extreme) * trunc_normal_cdf(x, p.mu, p.sigma, u);
    }
    return (1.0 - p.p_extreme) + p.p_extreme * gpd_cdf(x, p.gpd);
}

double hpd_quantile(double q, const HpdParams& p) {
    p.validate();
    if (!(q > 0.0 && q < 1.0))
        throw_error(ErrorKind::InvalidParameter, "hpd_quantile: q must lie in (0, 1)");
    double body_mass = 1.0 - p.p_extreme;
    if (q < body_mass) {
        return trunc_normal_quantile(q / body_mass, p.mu, p.sigma, p.threshold());
    }
    if (p.p_extreme <= 0.0) return p.threshold();
    return gpd_quantile((q - body_mass) / p.p_extreme, p.gpd);
}

std::vector<double> hpd_sample(const HpdParams& p, std::size_t count, std::uint64_t seed) {
    p.validate();
    std::vector<double> out;
    out.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        double q = rng.uniform();
        // uniform() never returns 1 but can return 0; nudge into (0, 1).
        if (q <= 0.0) q = std::numeric_limits<double>::min();
        out.push_back(hpd_quantile(q, p));
    }
    return out;
}

double hpd_density_jump(const HpdParams& p) {
    p.validate();
    double u = p.threshold();
    double body_side = (1.0 - p.p_extreme) * trunc_normal_pdf(std::nextafter(u, -inf), p.mu, p.sigma, u);
    double tail_side = p.p_extreme * gpd_pdf(u, p.gpd);
    return tail_side - body_side;
}

double hpd_neg_log_lik(const std::vector<double>& data, const HpdParams& p) {
    if (data.empty())
        throw_error(ErrorKind::InvalidInput, "hpd_neg_log_lik: empty data");
    p.validate();
    double nll = 0.0;
    for (double x : data) {
        double d = hpd_pdf(x, p);
        if (!(d > 0.0)) return inf;
        nll -= std::log(d);
    }
    return nll;
}

} // namespace scorm
