#ifndef MTC_SWEEP_HPP
#define MTC_SWEEP_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mtc/bounds.hpp"

namespace mtc {

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view name);

// A grid over (c, M, tau_x, tau_n). An empty optional axis is optimized
// instead of enumerated.
struct SweepSpec {
  std::vector<BoundKind> bound_kinds;
  std::vector<double> c_values;
  std::optional<std::vector<double>> tau_x;
  std::optional<std::vector<double>> tau_n;
  std::vector<std::int64_t> M_values{1};
  OutputFormat output_format = OutputFormat::csv;
  int threads = 0;

  void validate() const;
};

// Empty cells are monostate (blank in CSV, null in JSON).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  // Index of a named column; throws DomainError if absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

// One row per grid point in lexicographic input order. Columns: c_s, M,
// tau_x_s, tau_n_s, then <kind>_bits_per_s, <kind>_argmax_tau_x_s,
// <kind>_argmax_tau_n_s for each kind, then diagnostics.
SweepTable run_sweep(const SweepSpec& spec);

void write_csv(const SweepTable& table, std::ostream& os);
void write_json(const SweepTable& table, std::ostream& os);
void write_table(const SweepTable& table, OutputFormat format, std::ostream& os);

// Flat key=value text; '#' starts a comment.
std::map<std::string, std::string> parse_key_value(std::istream& is);

// Keys: kinds, c, tau_x, tau_n, M, format. tau_x / tau_n take a comma list or
// "optimize"; M defaults to 1.
SweepSpec sweep_spec_from_config(const std::map<std::string, std::string>& kv);

std::vector<double> table1_c_values();

// Joint single-particle optima per c: c, tau_x_lb_s, tau_n_lb_s, tau_x_ub_s, tau_n_ub_s.
SweepTable run_table1(int threads = 0);

// Baked-in grids for figures 4 to 12.
SweepSpec figure_spec(int id);

// n points from lo to hi, evenly spaced in log10.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace mtc

#endif
