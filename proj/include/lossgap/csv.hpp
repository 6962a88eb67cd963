#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lossgap {

// Shortest round-trip decimal representation (std::to_chars), so CSV output is
// platform-stable and byte-identical across runs.
std::string format_double(double v);
std::string format_long(long v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // index of a named column, or -1
    int column(const std::string& name) const;
};

// Minimal reader for the library's own comma-separated output (no quoting).
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace lossgap
