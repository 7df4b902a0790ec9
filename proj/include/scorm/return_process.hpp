#pragma once

// Regime labeling and the return-timing process: Bernoulli probability
// estimation, geometric inter-arrival times, a two-state discrete-time
// Markov chain, and synthetic return-stream generation.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scorm/distributions.hpp"
#include "scorm/rng.hpp"

namespace scorm {

enum class RegimeLabel : int {
    normal = 0,
    extreme = 1,
};

// Row-stochastic 2x2 transition matrix; row index is the current regime,
// column index the next.
struct TransitionMatrix {
    double rows[2][2] = {{1.0, 0.0}, {1.0, 0.0}};

    // Identical rows [1-p, p] make the regime sequence i.i.d. Bernoulli(p).
    static TransitionMatrix bernoulli(double p);
    void validate() const;
    double prob(RegimeLabel from, RegimeLabel to) const {
        return rows[static_cast<int>(from)][static_cast<int>(to)];
    }
};

// Per-regime empirical quality pools; sampled with replacement.
struct QualitySource {
    std::vector<double> normal_pool;
    std::vector<double> extreme_pool;
    void validate() const;
    const std::vector<double>& pool(RegimeLabel label) const {
        return label == RegimeLabel::extreme ? extreme_pool : normal_pool;
    }
};

struct ReturnSimConfig {
    std::size_t horizon = 1;
    HpdParams hpd;
    QualitySource quality;
    std::uint64_t seed = 0;
    // Defaults to Bernoulli rows built from hpd.p_extreme.
    std::optional<TransitionMatrix> transition;
    RegimeLabel initial = RegimeLabel::normal;
};

struct SimulatedBatch {
    std::size_t period = 0; // 1-based
    long long size = 0;
    RegimeLabel label = RegimeLabel::normal;
    std::vector<double> qualities;
};

// A batch is extreme iff its size is at or above the threshold.
std::vector<RegimeLabel> classify_batches(std::span<const double> sizes, double u);

// Empirical extreme probability: count(extreme) / count(all).
double estimate_p(std::span<const RegimeLabel> labels);

// P(T = t) = (1-p)^(t-1) p for t >= 1.
double geometric_pmf(long long t, double p);

// Draws an inter-arrival time distributed per geometric_pmf.
long long sample_inter_arrival(double p, Rng& rng);

// Runs `horizon` transitions from `initial`; the returned sequence holds
// the visited states after each step (the initial state is not included).
std::vector<RegimeLabel> dtmc_simulate(const TransitionMatrix& transition, std::size_t horizon,
                                       RegimeLabel initial, std::uint64_t seed);

// One batch per period over the horizon: regime from the chain, size
// from the matching mixture component (rounded to an integer on the
// regime's side of the threshold, at least 1), qualities resampled from
// the regime's pool. Deterministic for a given seed.
std::vector<SimulatedBatch> simulate_return_stream(const ReturnSimConfig& config);

} // namespace scorm
