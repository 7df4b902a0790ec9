#include "scorm/csv.hpp"

#include <fstream>
#include <sstream>

#include "scorm/error.hpp"

namespace scorm::csv {

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

// Splits one physical line; the caller guarantees quotes are balanced
// within the line (multi-line fields are not supported).
std::vector<std::string> split_line(const std::string& line, const std::string& source,
                                    std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted)
        throw_error(ErrorKind::Schema,
                    source + ":" + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

Table parse(std::istream& in, const std::string& source_name) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header) {
            if (line.empty())
                throw_error(ErrorKind::Schema, source_name + ": missing header row");
            table.header = split_line(line, source_name, line_no);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_line(line, source_name, line_no);
        if (fields.size() != table.header.size())
            throw_error(ErrorKind::Schema,
                        source_name + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header)
        throw_error(ErrorKind::Schema, source_name + ": empty file (header row required)");
    return table;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw_error(ErrorKind::Schema, path + ": cannot open file");
    return parse(in, path);
}

std::string escape(const std::string& field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

} // namespace scorm::csv
