#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace stringmass {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Minimal CSV writer with round-trip numeric formatting.
///
/// Comment lines start with '#'. Opening failure throws ConfigError.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(std::string_view text);
    void header(const std::vector<std::string>& columns);

    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
    CsvWriter& field(std::string_view text);
    void end_row();

private:
    void separator();

    std::ofstream out_;
    std::string path_;
    bool row_started_ = false;
};

} // namespace stringmass
