#pragma once

// Pearson chi-square goodness of fit against a fitted mixture, using
// equal-probability bins under the model.

#include <cstddef>
#include <optional>
#include <vector>

#include "scorm/distributions.hpp"

namespace scorm {

struct GofBin {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t observed = 0;
    double expected = 0.0;
};

struct GofResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    std::vector<GofBin> bins;
};

// Bins are equal-probability under `p` (expected count n/B >= 5 each).
// The bin count follows Moore's rule ceil(2 n^0.4), capped so expected
// counts stay at or above 5; `bins_override` forces an explicit count.
// degrees_of_freedom = bins - 1 - n_estimated_params. Pass
// n_estimated_params = 0 when the parameters were not estimated from
// `data`.
GofResult chi_square_gof(const std::vector<double>& data, const HpdParams& p,
                         int n_estimated_params,
                         std::optional<int> bins_override = std::nullopt);

} // namespace scorm
