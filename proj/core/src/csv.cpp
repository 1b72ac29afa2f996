#include "cnls/csv.hpp"

#include <charconv>
#include <ostream>

namespace cnls::csv {

Table fields_table(const FieldPair& f) {
  f.check_shape();
  Table t{{"x", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "abs2_psi1", "abs2_psi2"}, {}};
  const auto x = f.grid.x();
  t.rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Complex p1 = f.psi1[i];
    const Complex p2 = f.psi2[i];
    t.rows.push_back({x[i], p1.real(), p1.imag(), p2.real(), p2.imag(), std::norm(p1), std::norm(p2)});
  }
  return t;
}

Table trace_table(const ModulationTrace& trace) {
  Table t{{"t", "chi", "dchi_dt", "a"}, {}};
  t.rows.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    t.rows.push_back({trace.times()[i], trace.chi()[i], trace.dchi_dt()[i], trace.a()[i]});
  }
  return t;
}

Table diagnostics_table(const DiagnosticsTrace& d) {
  Table t{{"t", "norm1", "norm2", "profile_error1", "profile_error2", "peak_pos1"}, {}};
  t.rows.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    t.rows.push_back({d.times[i], d.norm1[i], d.norm2[i], d.profile_error1[i], d.profile_error2[i],
                      d.peak_pos1[i]});
  }
  return t;
}

Table coefficients_table(const CoefficientSampler& sampler, std::span<const double> xs,
                         std::span<const double> ts) {
  Table t{{"x", "t", "v1", "v2", "g11", "g12", "g21", "g22"}, {}};
  t.rows.reserve(xs.size() * ts.size());
  for (const double tt : ts) {
    for (const double x : xs) {
      const Coefficients c = sampler.at(x, tt);
      t.rows.push_back({x, tt, c.v1, c.v2, c.g[0][0], c.g[0][1], c.g[1][0], c.g[1][1]});
    }
  }
  return t;
}

std::string format(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write(std::ostream& os, const Table& table, std::string_view preamble) {
  while (!preamble.empty()) {
    const auto nl = preamble.find('\n');
    os << "# " << preamble.substr(0, nl) << '\n';
    if (nl == std::string_view::npos) break;
    preamble.remove_prefix(nl + 1);
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format(row[c]);
    os << '\n';
  }
}

}  // namespace cnls::csv
