#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "echolab/cmap.hpp"
#include "echolab/fidelity_series.hpp"

namespace echolab::cli {

/// Version of the column layouts below; bump when names or order change.
inline constexpr int kCsvSchemaVersion = 1;

/// Header for a series: "t", then "M,M_err" if exact columns are present,
/// then "Ma,Msc,Mf,Msc_err,Mf_err" if semiclassical columns are present.
std::string series_header(const FidelitySeries& series);
void write_series_csv(std::ostream& os, const FidelitySeries& series);

/// bin_left,bin_right,density,count
void write_histogram_csv(std::ostream& os, const cmap::ActionHistogram& hist);

/// Generic table writer used for rate curves; values printed with %.17g.
void write_table_csv(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

/// Shortest round-trip decimal for a double ("nan"/"inf" for non-finite).
std::string format_double(double x);

}  // namespace echolab::cli
