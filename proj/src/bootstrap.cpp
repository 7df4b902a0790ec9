#include "scorm/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "scorm/error.hpp"
#include "scorm/rng.hpp"

namespace scorm {

void BootstrapConfig::validate() const {
    if (replicates < 1)
        throw_error(ErrorKind::Configuration, "BootstrapConfig: replicates must be >= 1");
    if (quantiles.empty())
        throw_error(ErrorKind::Configuration, "BootstrapConfig: need at least one quantile");
    double prev = 0.0;
    for (double q : quantiles) {
        if (!(q > 0.0 && q < 1.0))
            throw_error(ErrorKind::Configuration, "BootstrapConfig: quantiles must lie in (0, 1)");
        if (q <= prev && prev != 0.0)
            throw_error(ErrorKind::Configuration,
                        "BootstrapConfig: quantiles must be strictly increasing");
        prev = q;
    }
}

namespace {

// Linear interpolation between order statistics of `sorted`.
double interpolated_quantile(const std::vector<double>& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double h = q * static_cast<double>(n - 1);
    auto lo = static_cast<std::size_t>(h);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

BootstrapSummary summarize_paths(const std::vector<CostPath>& paths,
                                 const std::vector<double>& quantiles) {
    if (paths.empty())
        throw_error(ErrorKind::InvalidInput, "summarize_paths: no paths");
    const auto& axis = paths.front().periods;
    for (const auto& p : paths) {
        if (p.periods != axis)
            throw_error(ErrorKind::InvalidInput, "summarize_paths: mismatched period axes");
        if (p.cumulative.size() != axis.size())
            throw_error(ErrorKind::InvalidInput, "summarize_paths: malformed path");
    }

    BootstrapSummary summary;
    summary.total_costs.reserve(paths.size());
    for (const auto& p : paths) summary.total_costs.push_back(p.cumulative.back());

    summary.best_total = *std::min_element(summary.total_costs.begin(), summary.total_costs.end());
    summary.worst_total = *std::max_element(summary.total_costs.begin(), summary.total_costs.end());
    double acc = 0.0;
    for (double t : summary.total_costs) acc += t;
    summary.expected_total = acc / static_cast<double>(summary.total_costs.size());

    summary.expected_path.periods = axis;
    summary.expected_path.cumulative.assign(axis.size(), 0.0);
    for (const auto& q : quantiles)
        summary.quantile_paths.push_back({q, CostPath{axis, std::vector<double>(axis.size(), 0.0)}});

    std::vector<double> column(paths.size());
    for (std::size_t t = 0; t < axis.size(); ++t) {
        for (std::size_t r = 0; r < paths.size(); ++r) column[r] = paths[r].cumulative[t];
        double m = 0.0;
        for (double v : column) m += v;
        summary.expected_path.cumulative[t] = m / static_cast<double>(column.size());
        std::sort(column.begin(), column.end());
        for (std::size_t k = 0; k < quantiles.size(); ++k)
            summary.quantile_paths[k].second.cumulative[t] = interpolated_quantile(column, quantiles[k]);
    }
    return summary;
}

BootstrapSummary bootstrap_nonparametric(const std::vector<BatchObservation>& batches,
                                         const BootstrapConfig& config) {
    config.validate();
    if (config.mode != BootstrapMode::nonparametric)
        throw_error(ErrorKind::Configuration, "bootstrap_nonparametric: config.mode mismatch");
    if (batches.empty())
        throw_error(ErrorKind::InvalidInput, "bootstrap_nonparametric: no batches");
    std::vector<double> costs;
    costs.reserve(batches.size());
    for (const auto& b : batches) {
        if (!b.observed_cost)
            throw_error(ErrorKind::InvalidInput,
                        "bootstrap_nonparametric: batch without observed cost (period " +
                            std::to_string(b.period) + ")");
        costs.push_back(*b.observed_cost);
    }

    const std::size_t n = costs.size();
    std::vector<CostPath> paths;
    paths.reserve(config.replicates);
    std::vector<long long> axis(n);
    for (std::size_t i = 0; i < n; ++i) axis[i] = static_cast<long long>(i + 1);

    for (std::size_t r = 0; r < config.replicates; ++r) {
        Rng rng(derive_seed(config.seed, r));
        CostPath path;
        path.periods = axis;
        path.cumulative.reserve(n);
        double running = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            running += costs[rng.index(n)];
            path.cumulative.push_back(running);
        }
        paths.push_back(std::move(path));
    }
    return summarize_paths(paths, config.quantiles);
}

BootstrapSummary bootstrap_parametric(const HpdParams& hpd, const CostParams& cost,
                                      const QualitySource& quality, std::size_t horizon,
                                      const BootstrapConfig& config) {
    config.validate();
    if (config.mode != BootstrapMode::parametric)
        throw_error(ErrorKind::Configuration, "bootstrap_parametric: config.mode mismatch");
    if (horizon < 1)
        throw_error(ErrorKind::Configuration, "bootstrap_parametric: horizon must be >= 1");
    cost.validate();

    std::vector<CostPath> paths;
    paths.reserve(config.replicates);
    for (std::size_t r = 0; r < config.replicates; ++r) {
        ReturnSimConfig sim;
        sim.horizon = horizon;
        sim.hpd = hpd;
        sim.quality = quality;
        sim.seed = derive_seed(config.seed, r);
        auto stream = simulate_return_stream(sim);

        CostPath path;
        path.periods.reserve(horizon);
        path.cumulative.reserve(horizon);
        double running = 0.0;
        for (const auto& batch : stream) {
            running += batch_cost(batch.qualities, cost, batch.label);
            path.periods.push_back(static_cast<long long>(batch.period));
            path.cumulative.push_back(running);
        }
        paths.push_back(std::move(path));
    }
    return summarize_paths(paths, config.quantiles);
}

} // namespace scorm
