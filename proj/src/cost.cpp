#include "scorm/cost.hpp"

#include <algorithm>
#include <cmath>

#include "scorm/error.hpp"
#include "scorm/math.hpp"

namespace scorm {

void CostParams::validate() const {
    if (!(a0_normal >= 0.0) || !(a0_extreme >= 0.0))
        throw_error(ErrorKind::InvalidParameter, "CostParams: a0 must be >= 0");
    if (!(theta_normal > 0.0) || !(theta_extreme > 0.0))
        throw_error(ErrorKind::InvalidParameter, "CostParams: theta must be > 0");
}

double core_cost(double q, double a0, double theta) {
    if (!(q >= 0.0 && q <= 1.0))
        throw_error(ErrorKind::InvalidInput, "core_cost: quality must lie in [0, 1]");
    if (!(a0 >= 0.0))
        throw_error(ErrorKind::InvalidParameter, "core_cost: a0 must be >= 0");
    if (!(theta > 0.0))
        throw_error(ErrorKind::InvalidParameter, "core_cost: theta must be > 0");
    return a0 * (1.0 - std::pow(q, theta));
}

namespace {

std::vector<std::pair<double, double>> usable_pairs(
    std::span<const std::pair<double, double>> pairs) {
    std::vector<std::pair<double, double>> usable;
    bool any = false;
    for (const auto& [q, c] : pairs) {
        if (!(q >= 0.0 && q <= 1.0))
            throw_error(ErrorKind::InvalidInput, "fit_theta: quality must lie in [0, 1]");
        any = true;
        if (q > 0.0 && q < 1.0) usable.push_back({q, c});
    }
    if (any && usable.empty())
        throw_error(ErrorKind::Unidentifiable,
                    "fit_theta: every quality is 0 or 1; theta is unidentifiable");
    if (usable.size() < 2)
        throw_error(ErrorKind::InsufficientData, "fit_theta: need at least 2 usable pairs");
    return usable;
}

} // namespace

double fit_theta(std::span<const std::pair<double, double>> pairs, double a0,
                 double theta_lo, double theta_hi) {
    if (!(a0 > 0.0))
        throw_error(ErrorKind::InvalidParameter, "fit_theta: a0 must be > 0");
    auto usable = usable_pairs(pairs);

    auto sse = [&](double theta) {
        double acc = 0.0;
        for (const auto& [q, c] : usable) {
            double r = c - a0 * (1.0 - std::pow(q, theta));
            acc += r * r;
        }
        return acc;
    };
    return math::golden_section_minimize(sse, theta_lo, theta_hi, 1e-10);
}

CostCurveFit fit_cost_curve(std::span<const std::pair<double, double>> pairs,
                            double theta_lo, double theta_hi) {
    auto usable = usable_pairs(pairs);

    // For fixed theta the optimal a0 is a linear least-squares coefficient.
    auto profile_a0 = [&](double theta) {
        double num = 0.0, den = 0.0;
        for (const auto& [q, c] : usable) {
            double g = 1.0 - std::pow(q, theta);
            num += c * g;
            den += g * g;
        }
        return den > 0.0 ? std::max(num / den, 0.0) : 0.0;
    };
    auto sse = [&](double theta) {
        double a0 = profile_a0(theta);
        double acc = 0.0;
        for (const auto& [q, c] : usable) {
            double r = c - a0 * (1.0 - std::pow(q, theta));
            acc += r * r;
        }
        return acc;
    };
    double theta = math::golden_section_minimize(sse, theta_lo, theta_hi, 1e-10);
    return {profile_a0(theta), theta};
}

double batch_cost(std::span<const double> qualities, const CostParams& params, RegimeLabel label) {
    params.validate();
    auto [a0, theta] = params.select(label);
    double total = 0.0;
    for (double q : qualities) total += core_cost(q, a0, theta);
    return total;
}

TotalCostSplit total_cost(const std::vector<std::pair<std::vector<double>, RegimeLabel>>& batches,
                          const CostParams& params) {
    TotalCostSplit split;
    for (const auto& [qualities, label] : batches) {
        double c = batch_cost(qualities, params, label);
        if (label == RegimeLabel::extreme)
            split.extreme_part += c;
        else
            split.normal_part += c;
    }
    split.total = split.normal_part + split.extreme_part;
    return split;
}

CostPath cost_path(std::vector<std::pair<long long, double>> batch_costs) {
    for (const auto& [period, cost] : batch_costs)
        if (cost < 0.0)
            throw_error(ErrorKind::InvalidInput, "cost_path: negative batch cost");
    std::stable_sort(batch_costs.begin(), batch_costs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    CostPath path;
    path.periods.reserve(batch_costs.size());
    path.cumulative.reserve(batch_costs.size());
    double running = 0.0;
    for (const auto& [period, cost] : batch_costs) {
        running += cost;
        path.periods.push_back(period);
        path.cumulative.push_back(running);
    }
    return path;
}

double mse(std::span<const double> predicted, std::span<const double> observed) {
    if (predicted.empty() || predicted.size() != observed.size())
        throw_error(ErrorKind::InvalidInput, "mse: series must be nonempty and equal length");
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double d = predicted[i] - observed[i];
        acc += d * d;
    }
    return acc / static_cast<double>(predicted.size());
}

double percent_error(double predicted_total, double observed_total) {
    if (!(observed_total > 0.0))
        throw_error(ErrorKind::InvalidInput, "percent_error: observed total must be > 0");
    return std::fabs(predicted_total - observed_total) / observed_total * 100.0;
}

double zeror_predict(std::span<const double> training_costs) {
    if (training_costs.empty())
        throw_error(ErrorKind::InvalidInput, "zeror_predict: empty training set");
    return math::mean(training_costs);
}

} // namespace scorm
