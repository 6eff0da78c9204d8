#include "echolab/cli/csv.hpp"

#include <charconv>
#include <cmath>

namespace echolab::cli {

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string series_header(const FidelitySeries& s)
{
    std::string h = "t";
    if (s.has_exact())
        h += ",M,M_err";
    if (s.has_semiclassical())
        h += ",Ma,Msc,Mf,Msc_err,Mf_err";
    return h;
}

void write_series_csv(std::ostream& os, const FidelitySeries& s)
{
    os << series_header(s) << '\n';
    for (std::size_t t = 0; t < s.steps(); ++t) {
        os << t;
        if (s.has_exact())
            os << ',' << format_double(s.M[t]) << ',' << format_double(s.M_err[t]);
        if (s.has_semiclassical())
            os << ',' << format_double(s.Ma[t]) << ',' << format_double(s.Msc[t]) << ',' << format_double(s.Mf[t])
               << ',' << format_double(s.Msc_err[t]) << ',' << format_double(s.Mf_err[t]);
        os << '\n';
    }
}

void write_histogram_csv(std::ostream& os, const cmap::ActionHistogram& h)
{
    os << "bin_left,bin_right,density,count\n";
    for (std::size_t i = 0; i < h.bin_count(); ++i)
        os << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << format_double(h.density(i))
           << ',' << h.counts[i] << '\n';
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows)
{
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << '\n';
    }
}

}  // namespace echolab::cli
