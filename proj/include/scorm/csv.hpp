#pragma once

// Minimal CSV support: comma-separated, header row required, UTF-8,
// '.' decimal separator. Quoted fields with doubled-quote escapes are
// accepted on input and produced on output only when needed.

#include <iosfwd>
#include <string>
#include <vector>

namespace scorm::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row

    // Index of a header column, or -1.
    int column(const std::string& name) const;
};

Table parse(std::istream& in, const std::string& source_name = "<stream>");
Table read_file(const std::string& path);

std::string escape(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace scorm::csv
