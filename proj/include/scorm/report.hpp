#pragma once

// Machine-readable run reports: fit results, metrics, paths, bootstrap
// summaries, and enough provenance (input digest, seed, version) to
// reproduce every number from the report alone.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "scorm/bootstrap.hpp"
#include "scorm/fit.hpp"
#include "scorm/gof.hpp"

namespace scorm {

inline constexpr const char* tool_version = "0.1.0";

using Json = nlohmann::ordered_json;

Json fit_report_to_json(const HpdFitReport& report);
Json gof_to_json(const GofResult& gof);
Json cost_params_to_json(const CostParams& params);
Json cost_path_to_json(const CostPath& path);
Json bootstrap_summary_to_json(const BootstrapSummary& summary, bool include_totals = false);

struct Provenance {
    std::string input_path;
    std::string input_sha256;
    std::optional<std::uint64_t> seed;
    std::string command;
};

Json provenance_to_json(const Provenance& p);

// Serializes with a stable layout: emit -> parse -> emit is
// byte-identical.
std::string dump_report(const Json& report);

// Tidy (period, series, value) rows for plotting tools.
void write_path_series_csv(std::ostream& out,
                           const std::vector<std::pair<std::string, CostPath>>& series);

} // namespace scorm
