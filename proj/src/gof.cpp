#include "scorm/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scorm/error.hpp"
#include "scorm/math.hpp"

namespace scorm {

GofResult chi_square_gof(const std::vector<double>& data, const HpdParams& p,
                         int n_estimated_params, std::optional<int> bins_override) {
    if (data.size() < 20)
        throw_error(ErrorKind::InsufficientData, "chi_square_gof: need at least 20 observations");
    p.validate();

    const double n = static_cast<double>(data.size());
    const int max_bins = static_cast<int>(n / 5.0); // keeps every expected count >= 5
    int bins = bins_override ? *bins_override
                             : static_cast<int>(std::ceil(2.0 * std::pow(n, 0.4)));
    bins = std::min(bins, max_bins);
    if (bins < 3)
        throw_error(ErrorKind::InsufficientData, "chi_square_gof: cannot form at least 3 bins");
    if (bins - 1 - n_estimated_params < 1)
        throw_error(ErrorKind::InsufficientData,
                    "chi_square_gof: not enough bins for positive degrees of freedom");

    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(bins) + 1);
    edges.push_back(-std::numeric_limits<double>::infinity());
    for (int j = 1; j < bins; ++j)
        edges.push_back(hpd_quantile(static_cast<double>(j) / bins, p));
    edges.push_back(std::numeric_limits<double>::infinity());

    std::vector<double> sorted(data);
    std::sort(sorted.begin(), sorted.end());

    GofResult result;
    result.bins.resize(static_cast<std::size_t>(bins));
    const double expected = n / bins;
    double statistic = 0.0;
    for (int j = 0; j < bins; ++j) {
        auto lo = std::upper_bound(sorted.begin(), sorted.end(), edges[static_cast<std::size_t>(j)]);
        auto hi = std::upper_bound(sorted.begin(), sorted.end(), edges[static_cast<std::size_t>(j) + 1]);
        auto observed = static_cast<std::size_t>(hi - lo);
        double diff = static_cast<double>(observed) - expected;
        statistic += diff * diff / expected;
        result.bins[static_cast<std::size_t>(j)] = {edges[static_cast<std::size_t>(j)],
                                                    edges[static_cast<std::size_t>(j) + 1],
                                                    observed, expected};
    }

    result.statistic = statistic;
    result.degrees_of_freedom = bins - 1 - n_estimated_params;
    result.p_value = math::chi_square_sf(statistic, result.degrees_of_freedom);
    return result;
}

} // namespace scorm
