#pragma once

// Core-level and batch-level dataset ingestion.
//
// Batch files carry one row per period with columns
//   period,size,label,mean_quality,observed_cost,predicted_cost
// (label and the cost columns may be absent or empty).
//
// Core files carry one row per returned core with at least
//   tag_number,period
// plus either a quality column or a leak_rate column; every other column
// is preserved verbatim as an opaque feature.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scorm/cost.hpp"

namespace scorm {

struct BatchLoadResult {
    std::vector<BatchObservation> batches;
    std::vector<std::string> warnings;
};

// Loads a batch-level CSV. When `threshold` is given, stored labels are
// cross-checked against it; mismatches produce warnings, the data wins.
// Absent labels are classified from the threshold when available.
BatchLoadResult load_batches(const std::string& path,
                             std::optional<double> threshold = std::nullopt);
BatchLoadResult load_batches_stream(std::istream& in, const std::string& source_name,
                                    std::optional<double> threshold = std::nullopt);

// Writes batches in the canonical column order; absent values become
// empty cells. load/emit round-trips exactly.
void emit_batches(std::ostream& out, const std::vector<BatchObservation>& batches);
std::string format_batch_value(double v);

struct CoreLoadOptions {
    // quality = max(0, 1 - leak_rate / leak_rate_max), applied only when
    // the file has no quality column.
    double leak_rate_max = 35.0;
    std::optional<double> threshold; // classifies batches when no batch_type column
};

struct CoreLoadResult {
    std::vector<CoreObservation> cores;
    std::vector<BatchObservation> batches; // grouped by period, size = cores per period
    bool quality_derived = false;          // true when the leak-rate mapping was used
    std::vector<std::string> warnings;
};

CoreLoadResult load_cores(const std::string& path, const CoreLoadOptions& options = {});
CoreLoadResult load_cores_stream(std::istream& in, const std::string& source_name,
                                 const CoreLoadOptions& options = {});

} // namespace scorm
