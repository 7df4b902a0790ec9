#include "scorm/return_process.hpp"

#include <cmath>
#include <limits>

#include "scorm/error.hpp"

namespace scorm {

TransitionMatrix TransitionMatrix::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw_error(ErrorKind::InvalidParameter, "TransitionMatrix: p must lie in [0, 1]");
    TransitionMatrix m;
    m.rows[0][0] = 1.0 - p;
    m.rows[0][1] = p;
    m.rows[1][0] = 1.0 - p;
    m.rows[1][1] = p;
    return m;
}

void TransitionMatrix::validate() const {
    for (int r = 0; r < 2; ++r) {
        double sum = 0.0;
        for (int c = 0; c < 2; ++c) {
            double v = rows[r][c];
            if (!(v >= 0.0 && v <= 1.0))
                throw_error(ErrorKind::InvalidParameter,
                            "TransitionMatrix: entries must lie in [0, 1]");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw_error(ErrorKind::InvalidParameter, "TransitionMatrix: rows must sum to 1");
    }
}

void QualitySource::validate() const {
    for (const auto* pool : {&normal_pool, &extreme_pool})
        for (double q : *pool)
            if (!(q >= 0.0 && q <= 1.0))
                throw_error(ErrorKind::InvalidParameter,
                            "QualitySource: quality values must lie in [0, 1]");
}

std::vector<RegimeLabel> classify_batches(std::span<const double> sizes, double u) {
    if (!(u > 0.0))
        throw_error(ErrorKind::InvalidParameter, "classify_batches: threshold must be > 0");
    std::vector<RegimeLabel> labels;
    labels.reserve(sizes.size());
    for (double s : sizes)
        labels.push_back(s >= u ? RegimeLabel::extreme : RegimeLabel::normal);
    return labels;
}

double estimate_p(std::span<const RegimeLabel> labels) {
    if (labels.empty())
        throw_error(ErrorKind::InvalidInput, "estimate_p: empty label sequence");
    std::size_t extreme = 0;
    for (RegimeLabel l : labels)
        if (l == RegimeLabel::extreme) ++extreme;
    return static_cast<double>(extreme) / static_cast<double>(labels.size());
}

double geometric_pmf(long long t, double p) {
    if (t < 1)
        throw_error(ErrorKind::InvalidParameter, "geometric_pmf: t must be >= 1");
    if (!(p > 0.0 && p <= 1.0))
        throw_error(ErrorKind::InvalidParameter, "geometric_pmf: p must lie in (0, 1]");
    return std::exp(static_cast<double>(t - 1) * std::log1p(-p)) * p;
}

long long sample_inter_arrival(double p, Rng& rng) {
    if (!(p > 0.0 && p <= 1.0))
        throw_error(ErrorKind::InvalidParameter, "sample_inter_arrival: p must lie in (0, 1]");
    double u = rng.uniform();
    if (p >= 1.0) return 1;
    // Inverse CDF: smallest t with 1 - (1-p)^t >= u.
    double t = std::floor(std::log1p(-u) / std::log1p(-p));
    return 1 + static_cast<long long>(t);
}

std::vector<RegimeLabel> dtmc_simulate(const TransitionMatrix& transition, std::size_t horizon,
                                       RegimeLabel initial, std::uint64_t seed) {
    if (horizon < 1)
        throw_error(ErrorKind::InvalidParameter, "dtmc_simulate: horizon must be >= 1");
    transition.validate();
    Rng rng(seed);
    std::vector<RegimeLabel> states;
    states.reserve(horizon);
    RegimeLabel current = initial;
    for (std::size_t t = 0; t < horizon; ++t) {
        current = rng.uniform() < transition.prob(current, RegimeLabel::extreme)
                      ? RegimeLabel::extreme
                      : RegimeLabel::normal;
        states.push_back(current);
    }
    return states;
}

std::vector<SimulatedBatch> simulate_return_stream(const ReturnSimConfig& config) {
    if (config.horizon < 1)
        throw_error(ErrorKind::Configuration, "simulate_return_stream: horizon must be >= 1");
    config.hpd.validate();
    config.quality.validate();

    TransitionMatrix transition =
        config.transition ? *config.transition : TransitionMatrix::bernoulli(config.hpd.p_extreme);
    transition.validate();

    const double u = config.hpd.threshold();
    const long long extreme_floor = static_cast<long long>(std::ceil(u));
    const long long normal_ceiling = extreme_floor - 1; // largest integer below u
    if (normal_ceiling < 1 && config.hpd.p_extreme < 1.0)
        throw_error(ErrorKind::Configuration,
                    "simulate_return_stream: threshold leaves no integer batch size below it");

    Rng rng(config.seed);
    std::vector<SimulatedBatch> stream;
    stream.reserve(config.horizon);
    RegimeLabel state = config.initial;

    for (std::size_t t = 0; t < config.horizon; ++t) {
        state = rng.uniform() < transition.prob(state, RegimeLabel::extreme)
                    ? RegimeLabel::extreme
                    : RegimeLabel::normal;

        SimulatedBatch batch;
        batch.period = t + 1;
        batch.label = state;

        double q = rng.uniform();
        if (q <= 0.0) q = std::numeric_limits<double>::min();
        long long size;
        if (state == RegimeLabel::extreme) {
            double draw = gpd_quantile(q, config.hpd.gpd);
            size = std::llround(draw);
            if (size < extreme_floor) size = extreme_floor;
        } else {
            double draw = trunc_normal_quantile(q, config.hpd.mu, config.hpd.sigma, u);
            size = std::llround(draw);
            if (size > normal_ceiling) size = normal_ceiling;
            if (size < 1) size = 1;
        }
        batch.size = size;

        const auto& pool = config.quality.pool(state);
        if (pool.empty())
            throw_error(ErrorKind::Configuration,
                        "simulate_return_stream: empty quality pool for an occurring regime");
        batch.qualities.reserve(static_cast<std::size_t>(size));
        for (long long j = 0; j < size; ++j)
            batch.qualities.push_back(pool[rng.index(pool.size())]);

        stream.push_back(std::move(batch));
    }
    return stream;
}

} // namespace scorm
