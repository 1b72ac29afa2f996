#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnls/grid.hpp"
#include "cnls/modulation.hpp"
#include "cnls/propagator.hpp"
#include "cnls/transform.hpp"

namespace cnls::csv {

/// Named numeric columns, one row per sample.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table fields_table(const FieldPair& fields);
Table trace_table(const ModulationTrace& trace);
Table diagnostics_table(const DiagnosticsTrace& trace);
/// Coefficients on an (x, t) lattice, x fastest.
Table coefficients_table(const CoefficientSampler& sampler, std::span<const double> xs,
                         std::span<const double> ts);

/// Shortest decimal string that parses back to exactly `v`.
std::string format(double v);

/// Emits `preamble` as "# "-prefixed comment lines, then the header row and
/// the data rows.
void write(std::ostream& os, const Table& table, std::string_view preamble = {});

}  // namespace cnls::csv
