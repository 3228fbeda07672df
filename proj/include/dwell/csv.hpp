#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace dwell {

// '%.17g' round-trips doubles exactly.
std::string format_double(double v);

// Comma-separated output with '#'-prefixed header lines. Writers are
// deterministic: identical data produces byte-identical files.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void comment(const std::string& line);
    void header(const std::vector<std::string>& column_names);
    void row(const std::vector<double>& values);

  private:
    std::FILE* f_ = nullptr;
};

} // namespace dwell
