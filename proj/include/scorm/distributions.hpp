#pragma once

// Return-quantity distributions: upper-truncated normal body, generalized
// Pareto tail, and their two-component mixture. The mixture places weight
// (1 - p_extreme) on the normal body renormalized over (-inf, u) and
// p_extreme on the GPD above u, so it integrates to one and its CDF at the
// threshold equals 1 - p_extreme.

#include <cstdint>
#include <optional>
#include <vector>

#include "scorm/rng.hpp"

namespace scorm {

// Shape values inside this band are evaluated with the exponential branch.
inline constexpr double gpd_xi_switch_tol = 1e-8;

struct GpdParams {
    double u = 0.0;    // threshold (batch-size units, > 0)
    double xi = 0.0;   // shape
    double beta = 1.0; // scale (> 0)

    // Upper end of the support: u - beta/xi when xi < 0, +inf otherwise.
    double support_upper() const;
    void validate() const;
};

struct HpdParams {
    double mu = 0.0;        // body location (parent-normal mean)
    double sigma = 1.0;     // body scale (parent-normal sd, > 0)
    GpdParams gpd;          // tail component; gpd.u is the regime threshold
    double p_extreme = 0.0; // mixture weight of the tail, in [0, 1]

    double threshold() const { return gpd.u; }
    void validate() const;
};

// Density of a normal(mu, sigma) truncated to (-inf, upper_bound) and
// renormalized. upper_bound may be +inf. Returns 0 at and above the bound.
double trunc_normal_pdf(double x, double mu, double sigma, double upper_bound);

// CDF of the same truncated normal.
double trunc_normal_cdf(double x, double mu, double sigma, double upper_bound);

// Quantile of the same truncated normal, q in [0, 1].
double trunc_normal_quantile(double q, double mu, double sigma, double upper_bound);

// GPD density; 0 below the threshold and outside the support.
double gpd_pdf(double x, const GpdParams& p);

// GPD CDF; 0 below the threshold.
double gpd_cdf(double x, const GpdParams& p);

// GPD quantile, q in [0, 1).
double gpd_quantile(double q, const GpdParams& p);

// Mixture density: (1 - p)*body below u, p*tail at and above u.
double hpd_pdf(double x, const HpdParams& p);

// Mixture CDF; equals 1 - p_extreme at the threshold.
double hpd_cdf(double x, const HpdParams& p);

// Mixture quantile (inverse CDF), q in (0, 1).
double hpd_quantile(double q, const HpdParams& p);

// Draws `count` values by inverse-CDF sampling, one uniform per draw.
// Deterministic for a given seed.
std::vector<double> hpd_sample(const HpdParams& p, std::size_t count, std::uint64_t seed);

// Diagnostic: density jump at the threshold, tail side minus body side.
// The mixture is not constrained to be continuous at u.
double hpd_density_jump(const HpdParams& p);

// Negative log-likelihood of the mixture over `data`. Returns +inf if any
// point has zero density. Throws on empty data.
double hpd_neg_log_lik(const std::vector<double>& data, const HpdParams& p);

} // namespace scorm
