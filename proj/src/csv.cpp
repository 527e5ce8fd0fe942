#include "stringmass/csv.hpp"

#include <charconv>
#include <cmath>

#include "stringmass/error.hpp"

namespace stringmass {

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path)
{
    if (!out_)
        throw ConfigError("cannot open output file '" + path + "' for writing");
}

void CsvWriter::comment(std::string_view text)
{
    out_ << "# " << text << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns)
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::separator()
{
    if (row_started_) out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::field(double v)
{
    separator();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(long long v)
{
    separator();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(std::string_view text)
{
    separator();
    out_ << text;
    return *this;
}

void CsvWriter::end_row()
{
    out_ << '\n';
    row_started_ = false;
    if (!out_)
        throw ConfigError("write failed for '" + path_ + "'");
}

} // namespace stringmass
