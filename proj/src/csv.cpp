#include "dwell/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace dwell {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
    if (!f_)
        throw std::runtime_error("CsvWriter: cannot open " + path);
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::comment(const std::string& line) {
    std::fprintf(f_, "# %s\n", line.c_str());
}

void CsvWriter::header(const std::vector<std::string>& column_names) {
    std::string line = "# columns:";
    for (const auto& c : column_names) line += " " + c;
    std::fprintf(f_, "%s\n", line.c_str());
}

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    line += '\n';
    std::fputs(line.c_str(), f_);
}

} // namespace dwell
