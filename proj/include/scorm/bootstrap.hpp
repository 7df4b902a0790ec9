#pragma once

// Bootstrap uncertainty quantification of cumulative cost paths:
// nonparametric (resample observed batches) and parametric (simulate
// from fitted models). Replicate r draws its stream from a sub-seed
// derived from (seed, r), so results do not depend on execution order.

#include <cstdint>
#include <vector>

#include "scorm/cost.hpp"
#include "scorm/return_process.hpp"

namespace scorm {

enum class BootstrapMode {
    nonparametric,
    parametric,
};

struct BootstrapConfig {
    std::size_t replicates = 3000;
    BootstrapMode mode = BootstrapMode::nonparametric;
    std::uint64_t seed = 0;
    std::vector<double> quantiles = {0.025, 0.5, 0.975};

    void validate() const;
};

struct BootstrapSummary {
    std::vector<double> total_costs;                        // one per replicate
    std::vector<std::pair<double, CostPath>> quantile_paths; // (level, path)
    double best_total = 0.0;
    double worst_total = 0.0;
    double expected_total = 0.0;
    CostPath expected_path;
};

// Resamples whole batches with replacement (quality-size-cost coupling
// preserved within a batch); replicate paths run over periods 1..n in
// draw order. Every batch must carry an observed cost.
BootstrapSummary bootstrap_nonparametric(const std::vector<BatchObservation>& batches,
                                         const BootstrapConfig& config);

// Simulates `horizon` periods per replicate from the fitted mixture and
// regime process, pricing every core through the regime's cost curve.
BootstrapSummary bootstrap_parametric(const HpdParams& hpd, const CostParams& cost,
                                      const QualitySource& quality, std::size_t horizon,
                                      const BootstrapConfig& config);

// Pointwise reduction behind both modes: quantile paths use linear
// interpolation between order statistics, totals are the final
// cumulative values.
BootstrapSummary summarize_paths(const std::vector<CostPath>& paths,
                                 const std::vector<double>& quantiles);

} // namespace scorm
