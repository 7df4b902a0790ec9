#include "scorm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "scorm/error.hpp"
#include "scorm/math.hpp"

namespace scorm {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double nearest_rank_percentile(const std::vector<double>& sorted, double q) {
    std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

std::vector<double> candidate_thresholds(const std::vector<double>& data,
                                         const HpdFitOptions& options) {
    if (options.fixed_threshold) {
        double u = *options.fixed_threshold;
        std::size_t exceed = static_cast<std::size_t>(
            std::count_if(data.begin(), data.end(), [&](double x) { return x >= u; }));
        if (exceed < options.min_exceedances)
            throw_error(ErrorKind::Unidentifiable,
                        "fit_hpd: fixed threshold leaves fewer than " +
                            std::to_string(options.min_exceedances) + " exceedances");
        if (exceed == data.size())
            throw_error(ErrorKind::Unidentifiable, "fit_hpd: fixed threshold leaves no body");
        return {u};
    }

    std::vector<double> sorted(data);
    std::sort(sorted.begin(), sorted.end());
    double lo = nearest_rank_percentile(sorted, options.grid_lower_percentile);
    double hi = nearest_rank_percentile(sorted, options.grid_upper_percentile);

    std::set<double> uniq(sorted.begin(), sorted.end());
    std::vector<double> grid;
    for (double v : uniq) {
        if (v < lo || v > hi) continue;
        std::size_t exceed = static_cast<std::size_t>(
            sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), v));
        std::size_t body = sorted.size() - exceed;
        if (exceed >= options.min_exceedances && body > 0) grid.push_back(v);
    }
    if (grid.empty())
        throw_error(ErrorKind::Unidentifiable,
                    "fit_hpd: no candidate threshold keeps enough tail observations");
    if (options.max_candidates >= 2 && grid.size() > options.max_candidates) {
        std::vector<double> thinned;
        thinned.reserve(options.max_candidates);
        double step = static_cast<double>(grid.size() - 1) /
                      static_cast<double>(options.max_candidates - 1);
        for (std::size_t i = 0; i < options.max_candidates; ++i)
            thinned.push_back(grid[static_cast<std::size_t>(std::llround(i * step))]);
        thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
        grid = std::move(thinned);
    }
    return grid;
}

struct SplitData {
    std::vector<double> body;
    std::vector<double> excesses; // x - u for x >= u
};

SplitData split_at(const std::vector<double>& data, double u) {
    SplitData s;
    for (double x : data) {
        if (x >= u)
            s.excesses.push_back(x - u);
        else
            s.body.push_back(x);
    }
    return s;
}

HpdParams fit_candidate_component_mle(const std::vector<double>& data, double u,
                                      const SplitData& split, const HpdFitOptions& options) {
    HpdParams p;
    p.p_extreme = static_cast<double>(split.excesses.size()) / static_cast<double>(data.size());
    p.gpd.u = u;
    auto [mu, sigma] = fit_truncated_normal(split.body, u, options.simplex_tol,
                                            options.simplex_max_iter);
    p.mu = mu;
    p.sigma = sigma;
    auto [xi, beta] = fit_gpd_excesses(split.excesses, -0.5, 5.0, options.simplex_tol,
                                       options.simplex_max_iter);
    p.gpd.xi = xi;
    p.gpd.beta = beta;
    return p;
}

HpdParams fit_candidate_tail_anchored(const std::vector<double>& data, double u,
                                      const SplitData& split) {
    if (u <= 0.0)
        throw_error(ErrorKind::Numeric, "fit_hpd: anchored strategy needs a positive threshold");

    HpdParams p;
    double k = static_cast<double>(split.excesses.size());
    double n = static_cast<double>(data.size());
    p.p_extreme = k / n;
    p.gpd.u = u;

    // Parent dispersion from the full sample; location placed so the
    // parent normal's tail mass at u equals the exceedance fraction.
    double z = math::normal_quantile(1.0 - p.p_extreme);
    p.sigma = std::sqrt(math::variance(data));
    p.mu = u - p.sigma * z;

    // Scale from density continuity of the unweighted stitch at u:
    // phi(z)/sigma = 1/beta.
    p.gpd.beta = p.sigma / math::normal_pdf(z);

    // Shape from the Pareto MLE of the size ratios above the threshold.
    double s = 0.0;
    for (double y : split.excesses) {
        double x = u + y;
        if (x <= 0.0)
            throw_error(ErrorKind::Numeric, "fit_hpd: anchored shape needs positive data");
        s += std::log(x / u);
    }
    p.gpd.xi = s / k;
    return p;
}

} // namespace

std::pair<double, double> fit_truncated_normal(const std::vector<double>& body,
                                               double upper_bound, double simplex_tol,
                                               int simplex_max_iter) {
    if (body.size() < 2)
        throw_error(ErrorKind::InsufficientData, "fit_truncated_normal: need at least 2 points");

    double m0 = math::mean(body);
    double s0 = std::sqrt(std::max(math::variance(body), 1e-12));

    auto nll = [&](std::span<const double> th) {
        double mu = th[0];
        double sigma = th[1];
        if (!(sigma > 1e-12) || !std::isfinite(mu) || !std::isfinite(sigma)) return inf;
        double mass = math::normal_cdf((upper_bound - mu) / sigma);
        if (!(mass > 0.0)) return inf;
        double acc = 0.0;
        for (double x : body) {
            double z = (x - mu) / sigma;
            acc += 0.5 * z * z;
        }
        acc += static_cast<double>(body.size()) *
               (std::log(sigma) + 0.5 * std::log(2.0 * M_PI) + std::log(mass));
        return acc;
    };

    std::vector<double> start = {m0, s0};
    std::vector<double> scale = {0.5 * s0 + 1e-3, 0.25 * s0 + 1e-3};
    auto res = math::nelder_mead(nll, start, scale, simplex_tol, simplex_max_iter);
    // One restart from the converged point guards against premature
    // simplex collapse.
    auto res2 = math::nelder_mead(nll, res.x, scale, simplex_tol, simplex_max_iter);
    if (res2.value < res.value) res = res2;
    return {res.x[0], std::fabs(res.x[1])};
}

std::pair<double, double> gpd_pwm_estimate(const std::vector<double>& excesses) {
    std::vector<double> sorted(excesses);
    std::sort(sorted.begin(), sorted.end());
    double n = static_cast<double>(sorted.size());
    double a0 = 0.0, a1 = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        a0 += sorted[i];
        double w = sorted.size() > 1
                       ? static_cast<double>(sorted.size() - 1 - i) / (n - 1.0)
                       : 0.0;
        a1 += w * sorted[i];
    }
    a0 /= n;
    a1 /= n;
    double denom = a0 - 2.0 * a1;
    if (std::fabs(denom) < 1e-12 || a0 <= 0.0) return {0.0, std::max(a0, 1e-6)};
    double xi = 2.0 - a0 / denom;
    double beta = 2.0 * a0 * a1 / denom;
    if (!(beta > 0.0)) beta = std::max(a0, 1e-6);
    return {xi, beta};
}

std::pair<double, double> fit_gpd_excesses(const std::vector<double>& all_excesses,
                                           double xi_min, double xi_max,
                                           double simplex_tol, int simplex_max_iter) {
    // Exact zeros are threshold ties of a discrete sample; they carry no
    // information about the tail shape and an atom of them makes the
    // continuous likelihood spike at beta -> 0. They re-enter the mixture
    // through the tail weight, so the shape/scale fit uses positive
    // excesses only.
    std::vector<double> excesses;
    excesses.reserve(all_excesses.size());
    for (double y : all_excesses) {
        if (y < 0.0) throw_error(ErrorKind::InvalidInput, "fit_gpd_excesses: negative excess");
        if (y > 0.0) excesses.push_back(y);
    }
    if (excesses.size() < 2)
        throw_error(ErrorKind::InsufficientData,
                    "fit_gpd_excesses: need at least 2 positive excesses");

    auto [xi0, beta0] = gpd_pwm_estimate(excesses);
    xi0 = std::clamp(xi0, xi_min + 0.05, xi_max - 0.05);

    // Optimize in (logit-bounded shape, log scale) so the simplex cannot
    // leave the admissible region.
    auto to_xi = [&](double t) {
        return xi_min + (xi_max - xi_min) / (1.0 + std::exp(-t));
    };
    auto from_xi = [&](double xi) {
        double f = (xi - xi_min) / (xi_max - xi_min);
        f = std::clamp(f, 1e-6, 1.0 - 1e-6);
        return std::log(f / (1.0 - f));
    };

    auto nll = [&](std::span<const double> th) {
        double xi = to_xi(th[0]);
        double beta = std::exp(th[1]);
        if (!(beta > 0.0) || !std::isfinite(beta)) return inf;
        double acc = 0.0;
        for (double y : excesses) {
            double v = y / beta;
            if (std::fabs(xi) < gpd_xi_switch_tol) {
                acc += std::log(beta) + v;
            } else {
                double t = 1.0 + xi * v;
                if (t <= 0.0) return inf;
                acc += std::log(beta) + (1.0 / xi + 1.0) * std::log1p(xi * v);
            }
        }
        return acc;
    };

    std::vector<double> start = {from_xi(xi0), std::log(beta0)};
    std::vector<double> scale = {0.5, 0.5};
    auto res = math::nelder_mead(nll, start, scale, simplex_tol, simplex_max_iter);
    auto res2 = math::nelder_mead(nll, res.x, scale, simplex_tol, simplex_max_iter);
    if (res2.value < res.value) res = res2;
    return {to_xi(res.x[0]), std::exp(res.x[1])};
}

HpdFitReport fit_hpd(const std::vector<double>& data, const HpdFitOptions& options) {
    if (data.size() < options.min_sample)
        throw_error(ErrorKind::InsufficientData,
                    "fit_hpd: need at least " + std::to_string(options.min_sample) +
                        " observations, got " + std::to_string(data.size()));

    std::vector<double> grid = candidate_thresholds(data, options);
    std::sort(grid.begin(), grid.end());

    HpdFitReport report;
    report.strategy = options.strategy;
    double best_ll = -inf;
    HpdParams best_params;

    for (double u : grid) {
        SplitData split = split_at(data, u);
        double ll = -inf;
        HpdParams params;
        // A candidate can be unfittable on its own (for instance when
        // threshold ties leave too few positive excesses for the tail);
        // it just drops out of the comparison.
        try {
            params = options.strategy == FitStrategy::ComponentMle
                         ? fit_candidate_component_mle(data, u, split, options)
                         : fit_candidate_tail_anchored(data, u, split);
            ll = -hpd_neg_log_lik(data, params);
        } catch (const Error&) {
        }
        report.threshold_candidates.emplace_back(u, ll);
        // Strictly-greater comparison on an ascending grid breaks ties
        // toward the smallest threshold.
        if (ll > best_ll) {
            best_ll = ll;
            best_params = params;
        }
    }
    if (!(best_ll > -inf))
        throw_error(ErrorKind::Unidentifiable,
                    "fit_hpd: no candidate threshold admits a valid fit");

    report.params = best_params;
    report.log_likelihood = best_ll;
    for (double x : data) {
        if (x >= best_params.threshold())
            ++report.n_extreme;
        else
            ++report.n_normal;
    }
    report.density_jump_at_threshold = hpd_density_jump(best_params);
    return report;
}

} // namespace scorm
