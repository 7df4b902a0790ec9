#include "scorm/report.hpp"

#include <ostream>

#include "scorm/dataset.hpp"

namespace scorm {

namespace {

const char* strategy_name(FitStrategy s) {
    return s == FitStrategy::ComponentMle ? "component-mle" : "tail-anchored";
}

} // namespace

Json fit_report_to_json(const HpdFitReport& report) {
    Json candidates = Json::array();
    for (const auto& [u, ll] : report.threshold_candidates)
        candidates.push_back(Json{{"u", u}, {"log_likelihood", ll}});
    return Json{
        {"strategy", strategy_name(report.strategy)},
        {"mu", report.params.mu},
        {"sigma", report.params.sigma},
        {"threshold", report.params.gpd.u},
        {"xi", report.params.gpd.xi},
        {"beta", report.params.gpd.beta},
        {"p_extreme", report.params.p_extreme},
        {"log_likelihood", report.log_likelihood},
        {"n_normal", report.n_normal},
        {"n_extreme", report.n_extreme},
        {"density_jump_at_threshold", report.density_jump_at_threshold},
        {"threshold_candidates", std::move(candidates)},
    };
}

Json gof_to_json(const GofResult& gof) {
    Json bins = Json::array();
    for (const auto& b : gof.bins)
        bins.push_back(Json{{"lower", b.lower},
                            {"upper", b.upper},
                            {"observed", b.observed},
                            {"expected", b.expected}});
    return Json{
        {"statistic", gof.statistic},
        {"degrees_of_freedom", gof.degrees_of_freedom},
        {"p_value", gof.p_value},
        {"bins", std::move(bins)},
    };
}

Json cost_params_to_json(const CostParams& params) {
    return Json{
        {"a0_normal", params.a0_normal},
        {"theta_normal", params.theta_normal},
        {"a0_extreme", params.a0_extreme},
        {"theta_extreme", params.theta_extreme},
    };
}

Json cost_path_to_json(const CostPath& path) {
    return Json{{"periods", path.periods}, {"cumulative", path.cumulative}};
}

Json bootstrap_summary_to_json(const BootstrapSummary& summary, bool include_totals) {
    Json quantiles = Json::array();
    for (const auto& [level, path] : summary.quantile_paths)
        quantiles.push_back(Json{{"level", level}, {"path", cost_path_to_json(path)}});
    Json out{
        {"replicates", summary.total_costs.size()},
        {"best_total", summary.best_total},
        {"worst_total", summary.worst_total},
        {"expected_total", summary.expected_total},
        {"expected_path", cost_path_to_json(summary.expected_path)},
        {"quantile_paths", std::move(quantiles)},
    };
    if (include_totals) out["total_costs"] = summary.total_costs;
    return out;
}

Json provenance_to_json(const Provenance& p) {
    Json out{
        {"tool_version", tool_version},
        {"command", p.command},
        {"input_path", p.input_path},
        {"input_sha256", p.input_sha256},
    };
    if (p.seed)
        out["seed"] = *p.seed;
    else
        out["seed"] = nullptr;
    return out;
}

std::string dump_report(const Json& report) {
    return report.dump(2) + "\n";
}

void write_path_series_csv(std::ostream& out,
                           const std::vector<std::pair<std::string, CostPath>>& series) {
    out << "period,series,value\n";
    for (const auto& [name, path] : series)
        for (std::size_t i = 0; i < path.periods.size(); ++i)
            out << path.periods[i] << ',' << name << ','
                << format_batch_value(path.cumulative[i]) << '\n';
}

} // namespace scorm
