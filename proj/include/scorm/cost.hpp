#pragma once

// Per-core polynomial cost curve, per-regime least-squares exponent
// estimation, batch/total aggregation, cumulative cost paths, and the
// prediction-error metrics used to validate them.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scorm/return_process.hpp"

namespace scorm {

// Per-regime (a0, theta) pairs of the cost curve a0 * (1 - q^theta).
struct CostParams {
    double a0_normal = 0.0;
    double theta_normal = 1.0;
    double a0_extreme = 0.0;
    double theta_extreme = 1.0;

    void validate() const;
    std::pair<double, double> select(RegimeLabel label) const {
        return label == RegimeLabel::extreme ? std::pair{a0_extreme, theta_extreme}
                                             : std::pair{a0_normal, theta_normal};
    }
};

// One returned core. `features` carries whatever extra columns the source
// file had, untouched.
struct CoreObservation {
    std::string tag;
    long long period = 0; // id of the owning batch
    double quality = 0.0; // in [0, 1]
    std::optional<double> observed_cost;
    std::vector<std::pair<std::string, std::string>> features;
};

// One returned batch (one period).
struct BatchObservation {
    long long period = 0;
    long long size = 0;
    RegimeLabel label = RegimeLabel::normal;
    double mean_quality = 0.0;
    std::optional<double> observed_cost;
    std::optional<double> predicted_cost;

    bool operator==(const BatchObservation&) const = default;
};

struct CostPath {
    std::vector<long long> periods;
    std::vector<double> cumulative;

    bool operator==(const CostPath&) const = default;
};

// a0 * (1 - q^theta); a0 is the cost of a worst-quality core, a like-new
// core (q = 1) costs nothing.
double core_cost(double q, double a0, double theta);

// Least-squares exponent for a known a0 over (quality, cost) pairs.
// Pairs at q = 0 or q = 1 carry no information about theta and are
// ignored. Golden-section search over theta in [theta_lo, theta_hi].
double fit_theta(std::span<const std::pair<double, double>> pairs, double a0,
                 double theta_lo = 1e-4, double theta_hi = 20.0);

// Joint (a0, theta) fit for datasets without a known a0: profiles a0 in
// closed form and searches theta.
struct CostCurveFit {
    double a0 = 0.0;
    double theta = 1.0;
};
CostCurveFit fit_cost_curve(std::span<const std::pair<double, double>> pairs,
                            double theta_lo = 1e-4, double theta_hi = 20.0);

// Sum of core costs with the regime's parameters.
double batch_cost(std::span<const double> qualities, const CostParams& params, RegimeLabel label);

struct TotalCostSplit {
    double total = 0.0;
    double normal_part = 0.0;
    double extreme_part = 0.0;
};

// Total cost split by regime; total == normal_part + extreme_part.
TotalCostSplit total_cost(const std::vector<std::pair<std::vector<double>, RegimeLabel>>& batches,
                          const CostParams& params);

// Cumulative cost over periods; input is sorted by period first.
CostPath cost_path(std::vector<std::pair<long long, double>> batch_costs);

// Mean squared error between two equal-length series.
double mse(std::span<const double> predicted, std::span<const double> observed);

// |predicted - observed| / observed * 100.
double percent_error(double predicted_total, double observed_total);

// ZeroR baseline: the training mean, used as a constant prediction.
double zeror_predict(std::span<const double> training_costs);

} // namespace scorm
