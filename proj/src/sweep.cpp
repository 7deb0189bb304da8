#include "mtc/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mtc/error.hpp"
#include "mtc/optimize.hpp"
#include "mtc/parallel.hpp"

namespace mtc {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  if (std::holds_alternative<std::int64_t>(cell)) {
    return std::to_string(std::get<std::int64_t>(cell));
  }
  if (std::holds_alternative<std::string>(cell)) {
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return "";
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DomainError("sweep spec: '" + key + "' has non-numeric value '" + text + "'");
  }
  return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct GridPoint {
  double c;
  std::int64_t M;
  std::optional<double> tau_x;
  std::optional<double> tau_n;
};

BoundResult evaluate_point(BoundKind kind, const GridPoint& p) {
  if (p.tau_x && p.tau_n) return evaluate_bound(kind, ChannelParams{p.c, *p.tau_x, *p.tau_n, p.M});
  if (p.tau_n) return optimize_tau_x(kind, ChannelParams{p.c, 0.0, *p.tau_n, p.M});
  if (p.tau_x) return optimize_tau_n(kind, ChannelParams{p.c, *p.tau_x, 1.0, p.M});
  return optimize_joint(kind, p.c, p.M);
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (bound_kinds.empty()) throw DomainError("sweep spec: no bound kinds");
  if (c_values.empty()) throw DomainError("sweep spec: no c values");
  if (M_values.empty()) throw DomainError("sweep spec: no M values");
  for (double c : c_values) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("sweep spec: c must be positive");
  }
  for (auto M : M_values) {
    if (M < 1) throw DomainError("sweep spec: M must be >= 1");
  }
  if (tau_x) {
    if (tau_x->empty()) throw DomainError("sweep spec: empty tau_x list");
    for (double v : *tau_x) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("sweep spec: tau_x must be >= 0");
    }
  }
  if (tau_n) {
    if (tau_n->empty()) throw DomainError("sweep spec: empty tau_n list");
    for (double v : *tau_n) {
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("sweep spec: tau_n must be > 0");
    }
  }
}

std::size_t SweepTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DomainError("no column named '" + std::string(name) + "'");
}

double SweepTable::number(std::size_t row, std::string_view name) const {
  const Cell& cell = rows.at(row).at(column(name));
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  if (std::holds_alternative<std::int64_t>(cell)) {
    return static_cast<double>(std::get<std::int64_t>(cell));
  }
  return std::nan("");
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<GridPoint> points;
  auto cs = sorted_unique(spec.c_values);
  auto Ms = spec.M_values;
  std::sort(Ms.begin(), Ms.end());
  Ms.erase(std::unique(Ms.begin(), Ms.end()), Ms.end());
  std::vector<std::optional<double>> xs{std::nullopt}, ns{std::nullopt};
  if (spec.tau_x) {
    xs.clear();
    for (double v : sorted_unique(*spec.tau_x)) xs.emplace_back(v);
  }
  if (spec.tau_n) {
    ns.clear();
    for (double v : sorted_unique(*spec.tau_n)) ns.emplace_back(v);
  }
  for (double c : cs) {
    for (auto M : Ms) {
      for (auto x : xs) {
        for (auto n : ns) points.push_back({c, M, x, n});
      }
    }
  }

  SweepTable table;
  table.header = {"c_s", "M", "tau_x_s", "tau_n_s"};
  for (BoundKind k : spec.bound_kinds) {
    std::string name(to_string(k));
    table.header.push_back(name + "_bits_per_s");
    table.header.push_back(name + "_argmax_tau_x_s");
    table.header.push_back(name + "_argmax_tau_n_s");
  }
  table.header.push_back("diagnostics");

  table.rows.resize(points.size());
  parallel_for(points.size(), resolve_threads(spec.threads), [&](std::size_t i) {
    const GridPoint& p = points[i];
    std::vector<Cell> row;
    row.emplace_back(p.c);
    row.emplace_back(p.M);
    row.push_back(p.tau_x ? Cell(*p.tau_x) : Cell());
    row.push_back(p.tau_n ? Cell(*p.tau_n) : Cell());
    std::string diag;
    auto note = [&](BoundKind k, const std::string& msg) {
      if (!diag.empty()) diag += "; ";
      diag += std::string(to_string(k)) + ": " + msg;
    };
    for (BoundKind k : spec.bound_kinds) {
      try {
        BoundResult r = evaluate_point(k, p);
        row.emplace_back(r.bits_per_sec);
        row.emplace_back(r.argmax_tau_x);
        row.emplace_back(r.argmax_tau_n);
        for (const auto& w : r.warnings) note(k, w);
      } catch (const Error& e) {
        row.insert(row.end(), 3, Cell());
        note(k, e.what());
      }
    }
    row.emplace_back(diag);
    table.rows[i] = std::move(row);
  });
  return table;
}

void write_csv(const SweepTable& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << csv_field(table.header[i]);
  }
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_field(row[i]);
    }
    os << "\r\n";
  }
}

void write_json(const SweepTable& table, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const Cell& cell = row[i];
      auto& slot = obj[table.header[i]];
      if (std::holds_alternative<double>(cell)) {
        double v = std::get<double>(cell);
        if (std::isfinite(v)) slot = v;
      } else if (std::holds_alternative<std::int64_t>(cell)) {
        slot = std::get<std::int64_t>(cell);
      } else if (std::holds_alternative<std::string>(cell)) {
        slot = std::get<std::string>(cell);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_table(const SweepTable& table, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::csv) {
    write_csv(table, os);
  } else {
    write_json(table, os);
  }
}

std::map<std::string, std::string> parse_key_value(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    kv[key] = value;
  }
  return kv;
}

SweepSpec sweep_spec_from_config(const std::map<std::string, std::string>& kv) {
  static const char* known[] = {"kinds", "c", "tau_x", "tau_n", "M", "format", "threads"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      throw DomainError("sweep spec: unknown key '" + key + "'");
    }
  }
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  SweepSpec spec;
  if (auto v = get("kinds")) {
    for (const auto& s : split_list(*v)) spec.bound_kinds.push_back(parse_bound_kind(s));
  }
  if (auto v = get("c")) {
    for (const auto& s : split_list(*v)) spec.c_values.push_back(parse_number("c", s));
  }
  auto axis = [&](const char* key) -> std::optional<std::vector<double>> {
    auto v = get(key);
    if (!v || trim(*v) == "optimize") return std::nullopt;
    std::vector<double> out;
    for (const auto& s : split_list(*v)) out.push_back(parse_number(key, s));
    return out;
  };
  spec.tau_x = axis("tau_x");
  spec.tau_n = axis("tau_n");
  if (auto v = get("M")) {
    spec.M_values.clear();
    for (const auto& s : split_list(*v)) {
      double m = parse_number("M", s);
      if (m != std::floor(m)) throw DomainError("sweep spec: M must be an integer");
      spec.M_values.push_back(static_cast<std::int64_t>(m));
    }
  }
  if (auto v = get("format")) spec.output_format = parse_output_format(*v);
  if (auto v = get("threads")) spec.threads = static_cast<int>(parse_number("threads", *v));
  spec.validate();
  return spec;
}

}  // namespace mtc
