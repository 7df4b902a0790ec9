#pragma once

// The bundled 81-batch steam-trap case study: period, size, regime label,
// mean quality, observed and predicted batch cost. Used as the regression
// dataset for fitting, metrics, and bootstrap behavior.

#include <vector>

#include "scorm/cost.hpp"

namespace scorm::fixture {

// All 81 batches, sorted by period.
const std::vector<BatchObservation>& steam_trap_batches();

// Column sums and reference values derived from the embedded table,
// frozen so regressions in the embedded data or the metric code surface
// immediately.
struct Goldens {
    long long total_cores;          // sum of the size column
    double observed_cost_total;     // sum of observed_cost
    double predicted_cost_total;    // sum of predicted_cost
    std::size_t extreme_batches;    // count of label == extreme
    long long extreme_cores;        // cores inside extreme batches
    double extreme_observed_cost;   // observed cost inside extreme batches
    // Mixture negative log-likelihood of the size column under the
    // default (anchored) fit of this dataset; frozen from an independent
    // long-double evaluation.
    double anchored_fit_neg_log_lik;
};

const Goldens& goldens();

// Writes the fixture in the canonical batch CSV format.
void write_csv(std::ostream& out);

} // namespace scorm::fixture
