#include "scorm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "scorm/csv.hpp"
#include "scorm/error.hpp"
#include "scorm/math.hpp"

namespace scorm {

namespace {

std::string cell_context(const std::string& source, std::size_t line, const std::string& column) {
    return source + ":" + std::to_string(line) + ": column '" + column + "'";
}

long long parse_int(const std::string& text, const std::string& source, std::size_t line,
                    const std::string& column) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw_error(ErrorKind::Validation,
                    cell_context(source, line, column) + ": expected an integer, got '" + text + "'");
    }
}

double parse_real(const std::string& text, const std::string& source, std::size_t line,
                  const std::string& column) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw_error(ErrorKind::Validation,
                    cell_context(source, line, column) + ": expected a number, got '" + text + "'");
    }
}

int require_column(const csv::Table& table, const std::string& source, const std::string& name) {
    int idx = table.column(name);
    if (idx < 0)
        throw_error(ErrorKind::Schema, source + ": missing required column '" + name + "'");
    return idx;
}

} // namespace

BatchLoadResult load_batches(const std::string& path, std::optional<double> threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(ErrorKind::Schema, path + ": cannot open file");
    return load_batches_stream(in, path, threshold);
}

BatchLoadResult load_batches_stream(std::istream& in, const std::string& source,
                                    std::optional<double> threshold) {
    csv::Table table = csv::parse(in, source);
    int c_period = require_column(table, source, "period");
    int c_size = require_column(table, source, "size");
    int c_label = table.column("label");
    int c_quality = table.column("mean_quality");
    int c_obs = table.column("observed_cost");
    int c_pred = table.column("predicted_cost");

    BatchLoadResult result;
    std::set<long long> seen_periods;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::size_t line = table.line_numbers[r];
        BatchObservation b;
        b.period = parse_int(row[static_cast<std::size_t>(c_period)], source, line, "period");
        if (b.period < 1)
            throw_error(ErrorKind::Validation,
                        cell_context(source, line, "period") + ": must be >= 1");
        if (!seen_periods.insert(b.period).second)
            throw_error(ErrorKind::Validation,
                        cell_context(source, line, "period") + ": duplicate period " +
                            std::to_string(b.period));
        b.size = parse_int(row[static_cast<std::size_t>(c_size)], source, line, "size");
        if (b.size < 1)
            throw_error(ErrorKind::Validation, cell_context(source, line, "size") + ": must be >= 1");

        if (c_quality >= 0 && !row[static_cast<std::size_t>(c_quality)].empty()) {
            b.mean_quality =
                parse_real(row[static_cast<std::size_t>(c_quality)], source, line, "mean_quality");
            if (!(b.mean_quality >= 0.0 && b.mean_quality <= 1.0))
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "mean_quality") + ": must lie in [0, 1]");
        }
        for (auto [col, dest, name] :
             {std::tuple{c_obs, &b.observed_cost, "observed_cost"},
              std::tuple{c_pred, &b.predicted_cost, "predicted_cost"}}) {
            if (col < 0 || row[static_cast<std::size_t>(col)].empty()) continue;
            double v = parse_real(row[static_cast<std::size_t>(col)], source, line, name);
            if (v < 0.0)
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, name) + ": must be >= 0");
            *dest = v;
        }

        bool has_label = c_label >= 0 && !row[static_cast<std::size_t>(c_label)].empty();
        if (has_label) {
            long long lv = parse_int(row[static_cast<std::size_t>(c_label)], source, line, "label");
            if (lv != 0 && lv != 1)
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "label") + ": must be 0 or 1");
            b.label = lv == 1 ? RegimeLabel::extreme : RegimeLabel::normal;
            if (threshold) {
                RegimeLabel implied = static_cast<double>(b.size) >= *threshold
                                          ? RegimeLabel::extreme
                                          : RegimeLabel::normal;
                if (implied != b.label)
                    result.warnings.push_back(
                        source + ":" + std::to_string(line) + ": label " + std::to_string(lv) +
                        " disagrees with threshold " + std::to_string(*threshold) +
                        " for size " + std::to_string(b.size) + " (keeping the stored label)");
            }
        } else if (threshold) {
            b.label = static_cast<double>(b.size) >= *threshold ? RegimeLabel::extreme
                                                                : RegimeLabel::normal;
        }
        result.batches.push_back(b);
    }
    std::sort(result.batches.begin(), result.batches.end(),
              [](const auto& a, const auto& b) { return a.period < b.period; });
    return result;
}

std::string format_batch_value(double v) {
    // Shortest decimal form that round-trips through parsing; integral
    // values print without an exponent or trailing zeros.
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int precision = 1; precision <= 17; ++precision) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::stod(buf) == v) return buf;
    }
    return std::to_string(v);
}

void emit_batches(std::ostream& out, const std::vector<BatchObservation>& batches) {
    csv::write_row(out, {"period", "size", "label", "mean_quality", "observed_cost",
                         "predicted_cost"});
    for (const auto& b : batches) {
        csv::write_row(out, {std::to_string(b.period), std::to_string(b.size),
                             b.label == RegimeLabel::extreme ? "1" : "0",
                             format_batch_value(b.mean_quality),
                             b.observed_cost ? format_batch_value(*b.observed_cost) : "",
                             b.predicted_cost ? format_batch_value(*b.predicted_cost) : ""});
    }
}

CoreLoadResult load_cores(const std::string& path, const CoreLoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(ErrorKind::Schema, path + ": cannot open file");
    return load_cores_stream(in, path, options);
}

CoreLoadResult load_cores_stream(std::istream& in, const std::string& source,
                                 const CoreLoadOptions& options) {
    csv::Table table = csv::parse(in, source);
    int c_tag = require_column(table, source, "tag_number");
    int c_period = require_column(table, source, "period");
    int c_type = table.column("batch_type");
    int c_quality = table.column("quality");
    int c_leak = table.column("leak_rate");
    int c_cost = table.column("observed_cost");
    if (c_quality < 0 && c_leak < 0)
        throw_error(ErrorKind::Schema,
                    source + ": need a 'quality' or a 'leak_rate' column to assess core quality");

    // Everything not consumed above is an opaque feature column.
    std::vector<int> feature_cols;
    for (int i = 0; i < static_cast<int>(table.header.size()); ++i)
        if (i != c_tag && i != c_period && i != c_type && i != c_quality && i != c_cost)
            feature_cols.push_back(i);

    CoreLoadResult result;
    std::map<long long, std::vector<std::size_t>> by_period; // period -> core indices
    std::map<long long, int> period_type;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::size_t line = table.line_numbers[r];
        CoreObservation core;
        core.tag = row[static_cast<std::size_t>(c_tag)];
        core.period = parse_int(row[static_cast<std::size_t>(c_period)], source, line, "period");
        if (core.period < 1)
            throw_error(ErrorKind::Validation,
                        cell_context(source, line, "period") + ": must be >= 1");

        const bool has_quality =
            c_quality >= 0 && !row[static_cast<std::size_t>(c_quality)].empty();
        if (has_quality) {
            core.quality =
                parse_real(row[static_cast<std::size_t>(c_quality)], source, line, "quality");
            if (!(core.quality >= 0.0 && core.quality <= 1.0))
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "quality") + ": must lie in [0, 1]");
        } else {
            if (c_leak < 0 || row[static_cast<std::size_t>(c_leak)].empty())
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "quality") +
                                ": missing and no leak_rate to derive it from");
            double leak =
                parse_real(row[static_cast<std::size_t>(c_leak)], source, line, "leak_rate");
            if (leak < 0.0)
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "leak_rate") + ": must be >= 0");
            core.quality = std::max(0.0, 1.0 - leak / options.leak_rate_max);
            result.quality_derived = true;
        }

        if (c_cost >= 0 && !row[static_cast<std::size_t>(c_cost)].empty()) {
            double v = parse_real(row[static_cast<std::size_t>(c_cost)], source, line,
                                  "observed_cost");
            if (v < 0.0)
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "observed_cost") + ": must be >= 0");
            core.observed_cost = v;
        }

        for (int col : feature_cols)
            core.features.emplace_back(table.header[static_cast<std::size_t>(col)],
                                       row[static_cast<std::size_t>(col)]);

        if (c_type >= 0 && !row[static_cast<std::size_t>(c_type)].empty()) {
            long long tv = parse_int(row[static_cast<std::size_t>(c_type)], source, line,
                                     "batch_type");
            if (tv != 0 && tv != 1)
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "batch_type") + ": must be 0 or 1");
            auto [it, inserted] = period_type.try_emplace(core.period, static_cast<int>(tv));
            if (!inserted && it->second != static_cast<int>(tv))
                throw_error(ErrorKind::Validation,
                            cell_context(source, line, "batch_type") +
                                ": inconsistent within period " + std::to_string(core.period));
        }

        by_period[core.period].push_back(result.cores.size());
        result.cores.push_back(std::move(core));
    }

    for (const auto& [period, idxs] : by_period) {
        BatchObservation b;
        b.period = period;
        b.size = static_cast<long long>(idxs.size());
        std::vector<double> qs;
        qs.reserve(idxs.size());
        bool all_costs = true;
        double cost_sum = 0.0;
        for (std::size_t i : idxs) {
            qs.push_back(result.cores[i].quality);
            if (result.cores[i].observed_cost)
                cost_sum += *result.cores[i].observed_cost;
            else
                all_costs = false;
        }
        b.mean_quality = math::mean(qs);
        if (all_costs) b.observed_cost = cost_sum;

        if (auto it = period_type.find(period); it != period_type.end())
            b.label = it->second == 1 ? RegimeLabel::extreme : RegimeLabel::normal;
        else if (options.threshold)
            b.label = static_cast<double>(b.size) >= *options.threshold ? RegimeLabel::extreme
                                                                        : RegimeLabel::normal;
        result.batches.push_back(b);
    }
    return result;
}

} // namespace scorm
