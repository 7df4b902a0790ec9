// scorm — fit, validate, simulate, bootstrap, and report on batch return
// data with a hybrid body/tail size model and per-regime cost curves.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scorm/bootstrap.hpp"
#include "scorm/csv.hpp"
#include "scorm/dataset.hpp"
#include "scorm/error.hpp"
#include "scorm/fit.hpp"
#include "scorm/fixture.hpp"
#include "scorm/gof.hpp"
#include "scorm/report.hpp"
#include "scorm/sha256.hpp"

namespace {

using namespace scorm;

struct CommonOptions {
    std::string batches_path;
    std::string cores_path;
    std::string threshold = "AUTO";
    std::string fit_strategy = "anchored";
    double a0 = 500.0;
    double leak_rate_max = 35.0;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_format = true) {
    auto* batches = cmd->add_option("--batches", opt.batches_path, "Batch-level CSV input");
    auto* cores = cmd->add_option("--cores", opt.cores_path, "Core-level CSV input");
    batches->excludes(cores);
    cores->excludes(batches);
    cmd->add_option("--threshold", opt.threshold, "AUTO or a fixed threshold value")
        ->default_str("AUTO");
    cmd->add_option("--fit-strategy", opt.fit_strategy, "anchored or mle")
        ->check(CLI::IsMember({"anchored", "mle"}))
        ->default_str("anchored");
    cmd->add_option("--a0", opt.a0, "Worst-quality core cost for the cost curve")
        ->default_val(500.0);
    cmd->add_option("--leak-rate-max", opt.leak_rate_max,
                    "Leak rate mapped to quality 0 when deriving quality")
        ->default_val(35.0);
    cmd->add_option("--out", opt.out_path, "Output file (stdout when omitted)");
    if (with_format)
        cmd->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->default_str("csv");
}

// Everything downstream commands need, assembled from either input kind.
struct PipelineData {
    std::string input_path;
    std::string input_sha256;
    std::vector<BatchObservation> batches;
    bool labels_from_file = false;
    bool per_core = false;
    // (quality, per-core cost) pairs per regime; batch inputs use the
    // batch-mean surrogate (q_bar, cost/size).
    std::vector<std::pair<double, double>> normal_pairs;
    std::vector<std::pair<double, double>> extreme_pairs;
    QualitySource pools;
    std::vector<std::string> warnings;
    std::vector<CoreObservation> cores;
};

std::optional<double> parse_threshold(const std::string& text) {
    if (text == "AUTO" || text == "auto") return std::nullopt;
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--threshold", "expected AUTO or a number, got '" + text + "'");
    }
}

PipelineData load_input(const CommonOptions& opt) {
    if (opt.batches_path.empty() == opt.cores_path.empty())
        throw CLI::RequiredError("exactly one of --batches/--cores");

    PipelineData data;
    std::optional<double> threshold = parse_threshold(opt.threshold);
    if (!opt.batches_path.empty()) {
        data.input_path = opt.batches_path;
        auto loaded = load_batches(opt.batches_path, threshold);
        data.batches = std::move(loaded.batches);
        data.warnings = std::move(loaded.warnings);
        csv::Table t = csv::read_file(opt.batches_path);
        data.labels_from_file = t.column("label") >= 0;
    } else {
        data.input_path = opt.cores_path;
        CoreLoadOptions core_opt;
        core_opt.leak_rate_max = opt.leak_rate_max;
        core_opt.threshold = threshold;
        auto loaded = load_cores(opt.cores_path, core_opt);
        data.batches = std::move(loaded.batches);
        data.cores = std::move(loaded.cores);
        data.warnings = std::move(loaded.warnings);
        data.per_core = true;
        csv::Table t = csv::read_file(opt.cores_path);
        data.labels_from_file = t.column("batch_type") >= 0;
    }
    data.input_sha256 = sha256_file_hex(data.input_path);
    if (data.batches.empty())
        throw_error(ErrorKind::Validation, data.input_path + ": no batches in input");
    return data;
}

HpdFitOptions fit_options(const CommonOptions& opt) {
    HpdFitOptions fo;
    fo.strategy =
        opt.fit_strategy == "mle" ? FitStrategy::ComponentMle : FitStrategy::TailAnchored;
    fo.fixed_threshold = parse_threshold(opt.threshold);
    return fo;
}

// Labels batches with the fitted threshold unless the file carried them,
// then groups quality pools and cost pairs by regime.
void finalize_regimes(PipelineData& data, double u) {
    if (!data.labels_from_file) {
        for (auto& b : data.batches)
            b.label = static_cast<double>(b.size) >= u ? RegimeLabel::extreme
                                                       : RegimeLabel::normal;
    }
    data.normal_pairs.clear();
    data.extreme_pairs.clear();
    data.pools = {};
    if (data.per_core) {
        // Period -> regime lookup.
        std::map<long long, RegimeLabel> regime;
        for (const auto& b : data.batches) regime[b.period] = b.label;
        for (const auto& c : data.cores) {
            RegimeLabel label = regime.at(c.period);
            auto& pool = label == RegimeLabel::extreme ? data.pools.extreme_pool
                                                       : data.pools.normal_pool;
            pool.push_back(c.quality);
            if (c.observed_cost) {
                auto& pairs = label == RegimeLabel::extreme ? data.extreme_pairs
                                                            : data.normal_pairs;
                pairs.push_back({c.quality, *c.observed_cost});
            }
        }
    } else {
        for (const auto& b : data.batches) {
            auto& pool = b.label == RegimeLabel::extreme ? data.pools.extreme_pool
                                                         : data.pools.normal_pool;
            pool.push_back(b.mean_quality);
            if (b.observed_cost) {
                auto& pairs = b.label == RegimeLabel::extreme ? data.extreme_pairs
                                                              : data.normal_pairs;
                pairs.push_back({b.mean_quality, *b.observed_cost / static_cast<double>(b.size)});
            }
        }
    }
}

std::optional<CostParams> fit_cost_params(const PipelineData& data, double a0) {
    auto usable = [](const std::vector<std::pair<double, double>>& pairs) {
        std::size_t n = 0;
        for (const auto& [q, c] : pairs)
            if (q > 0.0 && q < 1.0) ++n;
        return n >= 2;
    };
    if (!usable(data.normal_pairs) || !usable(data.extreme_pairs)) return std::nullopt;
    CostParams params;
    params.a0_normal = a0;
    params.a0_extreme = a0;
    params.theta_normal = fit_theta(data.normal_pairs, a0);
    params.theta_extreme = fit_theta(data.extreme_pairs, a0);
    return params;
}

void write_output(const CommonOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw_error(ErrorKind::Validation, opt.out_path + ": cannot open for writing");
    out << text;
}

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream out;
    out << "key,value\n";
    for (const auto& [k, v] : kv) out << k << ',' << v << '\n';
    return out.str();
}

std::string fmt(double v) { return format_batch_value(v); }

void print_warnings(const PipelineData& data) {
    for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
}

int run_fit(const CommonOptions& opt) {
    PipelineData data = load_input(opt);
    print_warnings(data);

    std::vector<double> sizes;
    for (const auto& b : data.batches) sizes.push_back(static_cast<double>(b.size));
    auto report = fit_hpd(sizes, fit_options(opt));
    finalize_regimes(data, report.params.threshold());

    std::vector<RegimeLabel> labels;
    for (const auto& b : data.batches) labels.push_back(b.label);
    double p_hat = estimate_p(labels);
    std::size_t extreme_labels = 0;
    for (RegimeLabel l : labels)
        if (l == RegimeLabel::extreme) ++extreme_labels;

    GofResult gof = chi_square_gof(sizes, report.params, 5);
    auto cost = fit_cost_params(data, opt.a0);

    std::ostringstream text;
    text << "fit (" << (report.strategy == FitStrategy::ComponentMle ? "mle" : "anchored")
         << " strategy, " << data.batches.size() << " batches)\n";
    text << "  u_hat = " << fmt(report.params.threshold()) << "\n";
    text << "  p_hat = " << fmt(p_hat) << " (" << extreme_labels << "/"
         << data.batches.size() << " labeled extreme)\n";
    text << "  n_normal = " << report.n_normal << "\n";
    text << "  n_extreme = " << report.n_extreme << "\n";
    text << "  mu = " << fmt(report.params.mu) << "\n";
    text << "  sigma = " << fmt(report.params.sigma) << "\n";
    text << "  xi = " << fmt(report.params.gpd.xi) << "\n";
    text << "  beta = " << fmt(report.params.gpd.beta) << "\n";
    text << "  log_likelihood = " << fmt(report.log_likelihood) << "\n";
    text << "  density_jump_at_u = " << fmt(report.density_jump_at_threshold) << "\n";
    text << "  gof_chi2 = " << fmt(gof.statistic) << " df = " << gof.degrees_of_freedom
         << " p = " << fmt(gof.p_value) << "\n";
    if (cost) {
        text << "  theta_normal = " << fmt(cost->theta_normal) << " (a0 = " << fmt(opt.a0)
             << ")\n";
        text << "  theta_extreme = " << fmt(cost->theta_extreme) << " (a0 = " << fmt(opt.a0)
             << ")\n";
    }
    std::cout << text.str();

    if (!opt.out_path.empty()) {
        if (opt.format == "json") {
            Json j{{"fit", fit_report_to_json(report)}, {"gof", gof_to_json(gof)}};
            if (cost) j["cost_params"] = cost_params_to_json(*cost);
            j["provenance"] = provenance_to_json(
                {data.input_path, data.input_sha256, std::nullopt, "fit"});
            write_output(opt, dump_report(j));
        } else {
            std::vector<std::pair<std::string, std::string>> kv = {
                {"u_hat", fmt(report.params.threshold())},
                {"p_hat", fmt(report.params.p_extreme)},
                {"n_normal", std::to_string(report.n_normal)},
                {"n_extreme", std::to_string(report.n_extreme)},
                {"mu", fmt(report.params.mu)},
                {"sigma", fmt(report.params.sigma)},
                {"xi", fmt(report.params.gpd.xi)},
                {"beta", fmt(report.params.gpd.beta)},
                {"log_likelihood", fmt(report.log_likelihood)},
                {"gof_chi2", fmt(gof.statistic)},
                {"gof_df", std::to_string(gof.degrees_of_freedom)},
                {"gof_p", fmt(gof.p_value)},
            };
            if (cost) {
                kv.push_back({"theta_normal", fmt(cost->theta_normal)});
                kv.push_back({"theta_extreme", fmt(cost->theta_extreme)});
            }
            write_output(opt, key_value_csv(kv));
        }
    }
    return 0;
}

int run_validate(const CommonOptions& opt) {
    PipelineData data = load_input(opt);
    print_warnings(data);

    std::vector<double> observed, predicted;
    for (const auto& b : data.batches) {
        if (!b.observed_cost || !b.predicted_cost)
            throw_error(ErrorKind::Validation,
                        "validate: period " + std::to_string(b.period) +
                            " lacks observed or predicted cost");
        observed.push_back(*b.observed_cost);
        predicted.push_back(*b.predicted_cost);
    }

    double model_mse = mse(predicted, observed);
    double obs_total = 0.0, pred_total = 0.0;
    for (double v : observed) obs_total += v;
    for (double v : predicted) pred_total += v;
    double e_pct = percent_error(pred_total, obs_total);

    double zr = zeror_predict(observed);
    std::vector<double> zr_pred(observed.size(), zr);
    double zeror_mse = mse(zr_pred, observed);

    std::ostringstream text;
    text << "validate (" << data.batches.size() << " batches)\n";
    text << "  mse = " << fmt(model_mse) << "\n";
    text << "  percent_error = " << fmt(e_pct) << " ("
         << (pred_total < obs_total ? "underestimates" : "overestimates") << ")\n";
    text << "  observed_total = " << fmt(obs_total) << "\n";
    text << "  predicted_total = " << fmt(pred_total) << "\n";
    text << "  zeror_mean = " << fmt(zr) << "\n";
    text << "  zeror_mse = " << fmt(zeror_mse) << "\n";
    text << "  beats_zeror = " << (model_mse < zeror_mse ? "yes" : "no") << "\n";
    std::cout << text.str();

    if (!opt.out_path.empty()) {
        if (opt.format == "json") {
            Json j{{"mse", model_mse},
                   {"percent_error", e_pct},
                   {"underestimates", pred_total < obs_total},
                   {"observed_total", obs_total},
                   {"predicted_total", pred_total},
                   {"zeror_mean", zr},
                   {"zeror_mse", zeror_mse},
                   {"beats_zeror", model_mse < zeror_mse}};
            j["provenance"] = provenance_to_json(
                {data.input_path, data.input_sha256, std::nullopt, "validate"});
            write_output(opt, dump_report(j));
        } else {
            write_output(opt, key_value_csv({{"mse", fmt(model_mse)},
                                             {"percent_error", fmt(e_pct)},
                                             {"observed_total", fmt(obs_total)},
                                             {"predicted_total", fmt(pred_total)},
                                             {"zeror_mean", fmt(zr)},
                                             {"zeror_mse", fmt(zeror_mse)}}));
        }
    }
    return 0;
}

int run_simulate(const CommonOptions& opt, std::uint64_t seed, std::size_t horizon_opt) {
    PipelineData data = load_input(opt);
    print_warnings(data);

    std::vector<double> sizes;
    for (const auto& b : data.batches) sizes.push_back(static_cast<double>(b.size));
    auto report = fit_hpd(sizes, fit_options(opt));
    finalize_regimes(data, report.params.threshold());

    ReturnSimConfig config;
    config.horizon = horizon_opt > 0 ? horizon_opt : data.batches.size();
    config.hpd = report.params;
    config.quality = data.pools;
    config.seed = seed;
    auto stream = simulate_return_stream(config);

    std::ostringstream out;
    out << "period,size,label,quality\n";
    for (const auto& batch : stream)
        for (double q : batch.qualities)
            out << batch.period << ',' << batch.size << ','
                << (batch.label == RegimeLabel::extreme ? 1 : 0) << ',' << fmt(q) << '\n';
    write_output(opt, out.str());
    return 0;
}

int run_bootstrap(const CommonOptions& opt, std::uint64_t seed, const std::string& mode,
                  std::size_t replicates, std::size_t horizon_opt) {
    PipelineData data = load_input(opt);
    print_warnings(data);

    std::vector<double> sizes;
    for (const auto& b : data.batches) sizes.push_back(static_cast<double>(b.size));
    auto fit = fit_hpd(sizes, fit_options(opt));
    finalize_regimes(data, fit.params.threshold());

    BootstrapConfig config;
    config.replicates = replicates;
    config.seed = seed;
    config.mode = mode == "parametric" ? BootstrapMode::parametric
                                       : BootstrapMode::nonparametric;

    BootstrapSummary summary;
    std::optional<CostParams> cost;
    if (config.mode == BootstrapMode::parametric) {
        cost = fit_cost_params(data, opt.a0);
        if (!cost)
            throw_error(ErrorKind::InvalidInput,
                        "bootstrap: parametric mode needs cost data to fit the cost curve");
        std::size_t horizon = horizon_opt > 0 ? horizon_opt : data.batches.size();
        summary = bootstrap_parametric(fit.params, *cost, data.pools, horizon, config);
    } else {
        summary = bootstrap_nonparametric(data.batches, config);
    }

    std::ostringstream text;
    text << "bootstrap (" << mode << ", " << replicates << " replicates, seed " << seed
         << ")\n";
    text << "  best_total = " << fmt(summary.best_total) << "\n";
    text << "  expected_total = " << fmt(summary.expected_total) << "\n";
    text << "  worst_total = " << fmt(summary.worst_total) << "\n";
    std::cout << text.str();

    if (!opt.out_path.empty()) {
        if (opt.format == "json") {
            Json j{{"mode", mode}, {"summary", bootstrap_summary_to_json(summary)}};
            if (cost) j["cost_params"] = cost_params_to_json(*cost);
            j["provenance"] =
                provenance_to_json({data.input_path, data.input_sha256, seed, "bootstrap"});
            write_output(opt, dump_report(j));
        } else {
            std::vector<std::pair<std::string, CostPath>> series;
            for (const auto& [level, path] : summary.quantile_paths)
                series.push_back({"q" + fmt(level), path});
            series.push_back({"expected", summary.expected_path});
            std::ostringstream out;
            write_path_series_csv(out, series);
            write_output(opt, out.str());
        }
    }
    return 0;
}

int run_report(const CommonOptions& opt, std::uint64_t seed, const std::string& mode,
               std::size_t replicates, std::size_t horizon_opt) {
    PipelineData data = load_input(opt);
    print_warnings(data);

    std::vector<double> sizes;
    for (const auto& b : data.batches) sizes.push_back(static_cast<double>(b.size));
    auto fit = fit_hpd(sizes, fit_options(opt));
    finalize_regimes(data, fit.params.threshold());
    GofResult gof = chi_square_gof(sizes, fit.params, 5);
    auto cost = fit_cost_params(data, opt.a0);

    Json j;
    j["fit"] = fit_report_to_json(fit);
    j["gof"] = gof_to_json(gof);
    if (cost) j["cost_params"] = cost_params_to_json(*cost);

    // Observed and stored-prediction paths when costs exist.
    bool have_observed = true, have_predicted = true;
    for (const auto& b : data.batches) {
        have_observed = have_observed && b.observed_cost.has_value();
        have_predicted = have_predicted && b.predicted_cost.has_value();
    }
    if (have_observed) {
        std::vector<std::pair<long long, double>> pc;
        std::vector<double> observed;
        for (const auto& b : data.batches) {
            pc.push_back({b.period, *b.observed_cost});
            observed.push_back(*b.observed_cost);
        }
        j["observed_path"] = cost_path_to_json(cost_path(pc));

        double zr = zeror_predict(observed);
        std::vector<double> zr_pred(observed.size(), zr);
        Json metrics{{"zeror_mean", zr}, {"zeror_mse", mse(zr_pred, observed)}};
        if (have_predicted) {
            std::vector<double> predicted;
            double obs_total = 0.0, pred_total = 0.0;
            std::vector<std::pair<long long, double>> pp;
            for (const auto& b : data.batches) {
                predicted.push_back(*b.predicted_cost);
                obs_total += *b.observed_cost;
                pred_total += *b.predicted_cost;
                pp.push_back({b.period, *b.predicted_cost});
            }
            metrics["mse"] = mse(predicted, observed);
            metrics["percent_error"] = percent_error(pred_total, obs_total);
            metrics["underestimates"] = pred_total < obs_total;
            j["predicted_path"] = cost_path_to_json(cost_path(pp));
        }
        j["metrics"] = std::move(metrics);
    }

    BootstrapConfig config;
    config.replicates = replicates;
    config.seed = seed;
    config.mode = mode == "parametric" ? BootstrapMode::parametric
                                       : BootstrapMode::nonparametric;
    if (config.mode == BootstrapMode::parametric) {
        if (!cost)
            throw_error(ErrorKind::InvalidInput,
                        "report: parametric bootstrap needs cost data to fit the cost curve");
        std::size_t horizon = horizon_opt > 0 ? horizon_opt : data.batches.size();
        j["bootstrap"] = Json{{"mode", mode},
                              {"summary", bootstrap_summary_to_json(bootstrap_parametric(
                                              fit.params, *cost, data.pools, horizon, config))}};
    } else if (have_observed) {
        j["bootstrap"] = Json{{"mode", mode},
                              {"summary", bootstrap_summary_to_json(
                                              bootstrap_nonparametric(data.batches, config))}};
    }

    j["provenance"] = provenance_to_json({data.input_path, data.input_sha256, seed, "report"});
    write_output(opt, dump_report(j));
    return 0;
}

int exit_code_for(const Error& e) {
    return e.kind() == ErrorKind::Numeric ? 4 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scorm: stochastic remanufacturing cost analysis"};
    app.require_subcommand(1);

    CommonOptions fit_opt, val_opt, sim_opt, boot_opt, rep_opt;
    std::uint64_t sim_seed = 0, boot_seed = 0, rep_seed = 0;
    std::size_t sim_horizon = 0, boot_horizon = 0, rep_horizon = 0;
    std::size_t boot_replicates = 3000, rep_replicates = 3000;
    std::string boot_mode = "nonparametric", rep_mode = "nonparametric";

    auto* fit_cmd = app.add_subcommand("fit", "Fit the size mixture and cost curve");
    add_common(fit_cmd, fit_opt);

    auto* val_cmd = app.add_subcommand("validate", "Prediction metrics against stored costs");
    add_common(val_cmd, val_opt);

    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic return stream");
    add_common(sim_cmd, sim_opt, false);
    sim_cmd->add_option("--seed", sim_seed, "Random seed")->required();
    sim_cmd->add_option("--horizon", sim_horizon, "Periods to simulate (default: observed)");

    auto* boot_cmd = app.add_subcommand("bootstrap", "Bootstrap cost-path uncertainty");
    add_common(boot_cmd, boot_opt);
    boot_cmd->add_option("--seed", boot_seed, "Random seed")->required();
    boot_cmd->add_option("--mode", boot_mode, "nonparametric or parametric")
        ->check(CLI::IsMember({"nonparametric", "parametric"}))
        ->default_str("nonparametric");
    boot_cmd->add_option("--replicates", boot_replicates, "Bootstrap replicates")
        ->default_val(3000);
    boot_cmd->add_option("--horizon", boot_horizon, "Parametric horizon (default: observed)");

    auto* rep_cmd = app.add_subcommand("report", "Full machine-readable run report (JSON)");
    add_common(rep_cmd, rep_opt, false);
    rep_cmd->add_option("--seed", rep_seed, "Random seed")->required();
    rep_cmd->add_option("--mode", rep_mode, "nonparametric or parametric")
        ->check(CLI::IsMember({"nonparametric", "parametric"}))
        ->default_str("nonparametric");
    rep_cmd->add_option("--replicates", rep_replicates, "Bootstrap replicates")
        ->default_val(3000);
    rep_cmd->add_option("--horizon", rep_horizon, "Parametric horizon (default: observed)");

    try {
        app.parse(argc, argv);
        if (fit_cmd->parsed()) return run_fit(fit_opt);
        if (val_cmd->parsed()) return run_validate(val_opt);
        if (sim_cmd->parsed()) return run_simulate(sim_opt, sim_seed, sim_horizon);
        if (boot_cmd->parsed())
            return run_bootstrap(boot_opt, boot_seed, boot_mode, boot_replicates, boot_horizon);
        if (rep_cmd->parsed())
            return run_report(rep_opt, rep_seed, rep_mode, rep_replicates, rep_horizon);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
