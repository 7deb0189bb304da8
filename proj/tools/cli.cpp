#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mtc/bounds.hpp"
#include "mtc/error.hpp"
#include "mtc/optimize.hpp"
#include "mtc/simulate.hpp"
#include "mtc/sweep.hpp"

namespace mtc::cli {

namespace {

using json = nlohmann::ordered_json;

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const BoundResult& r, const ChannelParams& p) {
  json j;
  j["kind"] = std::string(to_string(r.kind));
  j["c"] = p.c;
  j["M"] = p.M;
  j["bits_per_sec"] = r.bits_per_sec;
  j["argmax_tau_x"] = r.argmax_tau_x;
  j["argmax_tau_n"] = r.argmax_tau_n;
  j["optimizer_iterations"] = r.optimizer_iterations;
  j["clamped"] = r.clamped;
  j["boundary_hit"] = r.boundary_hit;
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const McReport& r) {
  json j;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["ks_statistic"] = number_or_null(r.ks_statistic);
  j["ks_exact_law"] = number_or_null(r.ks_exact_law);
  j["empirical_mean"] = number_or_null(r.empirical_mean);
  j["empirical_var"] = number_or_null(r.empirical_var);
  j["reference_var"] = number_or_null(r.reference_var);
  j["arrival_fraction"] = r.arrival_fraction;
  j["target_arrival_probability"] = number_or_null(r.target_arrival_probability);
  j["dropped"] = r.dropped;
  j["notes"] = r.notes;
  return j;
}

json to_json(const MiEstimate& e) {
  json j;
  j["bits_per_channel_use"] = e.bits_per_channel_use;
  j["bits_per_sec"] = e.bits_per_sec;
  j["n_samples"] = e.n_samples;
  j["n_arrived"] = e.n_arrived;
  j["bins"] = e.bins;
  j["arrival_fraction"] = e.arrival_fraction;
  j["seed"] = e.seed;
  j["input_law"] = e.input_law;
  return j;
}

// Writes to the --out path, or to `out` when none was given.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& w) {
  if (path.empty()) {
    w(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  w(f);
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

struct Options {
  double c = 1.0;
  std::optional<double> tau_x;
  std::optional<double> tau_n;
  std::int64_t M = 1;
  std::vector<std::string> kinds;
  std::string optimize = "none";
  int figure_id = 0;
  std::string suite;
  std::int64_t n = 0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "csv";
  std::string spec_path;
  int verbosity = 0;
};

int cmd_bounds(const Options& o, std::ostream& out) {
  std::vector<BoundKind> kinds;
  for (const auto& k : o.kinds) kinds.push_back(parse_bound_kind(k));
  if (kinds.empty()) kinds.push_back(BoundKind::single_lb);
  bool opt_x = o.optimize == "tau_x" || o.optimize == "both";
  bool opt_n = o.optimize == "tau_n" || o.optimize == "both";
  if (!opt_x && !o.tau_x) throw CLI::RequiredError("--tau-x");
  if (!opt_n && !o.tau_n) throw CLI::RequiredError("--tau-n");
  ChannelParams p{o.c, o.tau_x.value_or(0.0), o.tau_n.value_or(1.0), o.M};
  json results = json::array();
  for (BoundKind k : kinds) {
    BoundResult r;
    if (opt_x && opt_n) {
      r = optimize_joint(k, o.c, o.M);
    } else if (opt_x) {
      r = optimize_tau_x(k, p);
    } else if (opt_n) {
      r = optimize_tau_n(k, p);
    } else {
      r = evaluate_bound(k, p);
    }
    results.push_back(to_json(r, p));
  }
  out << (results.size() == 1 ? results[0] : results).dump(2) << '\n';
  return ExitCode::ok;
}

int cmd_table1(const Options& o, std::ostream& out) {
  SweepTable t = run_table1(o.threads);
  emit(o.out, out, [&](std::ostream& os) { write_table(t, parse_output_format(o.format), os); });
  return ExitCode::ok;
}

int cmd_figure(const Options& o, std::ostream& out) {
  SweepSpec spec = figure_spec(o.figure_id);
  spec.threads = o.threads;
  SweepTable t = run_sweep(spec);
  emit(o.out, out, [&](std::ostream& os) { write_table(t, parse_output_format(o.format), os); });
  return ExitCode::ok;
}

int cmd_sweep(const Options& o, std::ostream& out, bool format_given) {
  std::ifstream f(o.spec_path);
  if (!f) throw IoError("cannot read sweep spec '" + o.spec_path + "'");
  SweepSpec spec = sweep_spec_from_config(parse_key_value(f));
  if (o.threads > 0) spec.threads = o.threads;
  if (format_given) spec.output_format = parse_output_format(o.format);
  SweepTable t = run_sweep(spec);
  emit(o.out, out, [&](std::ostream& os) { write_table(t, spec.output_format, os); });
  return ExitCode::ok;
}

int cmd_validate(const Options& o, std::ostream& out, bool c_given) {
  json report;
  bool passed = true;
  json thresholds;
  if (o.n < 1000) throw DomainError("--n must be >= 1000");
  if (o.suite == "levy") {
    McReport r = levy_validate(o.c, o.n, o.seed, o.threads);
    double sigma = std::sqrt(r.target_arrival_probability * (1 - r.target_arrival_probability) / o.n);
    bool band = std::fabs(r.arrival_fraction - r.target_arrival_probability) <= 3.0 * sigma;
    thresholds["ks_max"] = 0.002;
    thresholds["arrival_band_sigma"] = 3.0;
    passed = r.ks_statistic < 0.002 && band;
    report = to_json(r);
  } else if (o.suite == "gumbel") {
    McReport r = first_arrival_validate(o.c, o.tau_n.value_or(1.0), o.M, o.n, o.seed, o.threads);
    thresholds["ks_max"] = 0.01;
    passed = r.ks_statistic < 0.01;
    report = to_json(r);
  } else if (o.suite == "avg") {
    McReport r =
        average_receiver_validate(o.c, o.tau_n.value_or(0.5), o.M, o.n, o.seed, o.threads);
    double ratio = r.empirical_var / r.reference_var;
    thresholds["ks_max"] = 0.01;
    thresholds["var_ratio_tol"] = 0.03;
    passed = r.ks_statistic < 0.01 && std::fabs(ratio - 1.0) <= 0.03;
    report = to_json(r);
    report["var_ratio"] = ratio;
  } else if (o.suite == "mi") {
    double c = c_given ? o.c : 0.1;
    double tx, tn;
    if (o.tau_x && o.tau_n) {
      tx = *o.tau_x;
      tn = *o.tau_n;
    } else {
      BoundResult opt = optimize_joint(BoundKind::single_lb, c, 1);
      tx = o.tau_x.value_or(opt.argmax_tau_x);
      tn = o.tau_n.value_or(opt.argmax_tau_n);
    }
    ChannelParams p{c, tx, tn, 1};
    double lb = single_lb_at(p), ub = single_ub_at(p);
    MiEstimate est = estimate_mi_single(p, o.n, 0, o.seed, o.threads);
    MiEstimate ctl =
        estimate_mi_single(p, o.n, 0, o.seed + 1, o.threads, MiChannel::independent);
    thresholds["margin"] = 0.05;
    thresholds["control_max"] = 0.02;
    passed = est.bits_per_sec >= lb - 0.05 && est.bits_per_sec <= ub + 0.05 &&
             ctl.bits_per_sec < 0.02;
    report = to_json(est);
    report["c"] = c;
    report["tau_x"] = tx;
    report["tau_n"] = tn;
    report["lower_bound"] = lb;
    report["upper_bound"] = ub;
    report["control_bits_per_sec"] = ctl.bits_per_sec;
  } else {
    throw DomainError("--suite must be one of levy, gumbel, avg, mi");
  }
  report["suite"] = o.suite;
  report["thresholds"] = thresholds;
  report["passed"] = passed;
  out << report.dump(2) << '\n';
  return passed ? ExitCode::ok : ExitCode::threshold;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds for diffusion-based molecular timing channels"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.add_option("--threads", o.threads, "worker cap (falls back to MTC_THREADS)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "master seed for every stochastic output");
  app.add_flag("-v,--verbose", o.verbosity, "diagnostics on stderr");

  auto positive = CLI::PositiveNumber;
  auto* bounds = app.add_subcommand("bounds", "evaluate or optimize capacity bounds (JSON)");
  bounds->add_option("--c", o.c, "Levy scale c [s]")->required()->check(positive);
  bounds->add_option("--tau-x", o.tau_x, "symbol interval [s]")->check(CLI::NonNegativeNumber);
  bounds->add_option("--tau-n", o.tau_n, "particle lifetime [s]")->check(positive);
  bounds->add_option("--M", o.M, "particles per channel use")->check(CLI::Range(1LL, 1LL << 53));
  bounds->add_option("--kind", o.kinds, "bound kind(s)")
      ->check(CLI::IsMember({"single_lb", "single_ub", "diversity_ub", "fa_lb", "fa_ub",
                             "avg_lb", "avg_ub"}));
  bounds->add_option("--optimize", o.optimize, "maximize over tau_x, tau_n or both")
      ->check(CLI::IsMember({"none", "tau_x", "tau_n", "both"}));

  auto* table1 = app.add_subcommand("table1", "joint single-particle maximizers per c");
  table1->add_option("--out", o.out, "output file (stdout if omitted)");
  table1->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* figure = app.add_subcommand("figure", "figure data as a sweep table");
  figure->add_option("--id", o.figure_id, "figure number")->required()->check(CLI::Range(4, 12));
  figure->add_option("--out", o.out, "output file (stdout if omitted)");
  figure->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "Monte-Carlo validation report (JSON)");
  validate->add_option("--suite", o.suite)->required()->check(
      CLI::IsMember({"levy", "gumbel", "avg", "mi"}));
  auto* n_opt = validate->add_option("--n", o.n, "samples or trials");
  auto* c_opt = validate->add_option("--c", o.c, "Levy scale c [s]")->check(positive);
  auto* m_opt = validate->add_option("--M", o.M, "particles per channel use")
                    ->check(CLI::Range(1LL, 1LL << 53));
  validate->add_option("--tau-x", o.tau_x, "symbol interval [s]")->check(CLI::NonNegativeNumber);
  validate->add_option("--tau-n", o.tau_n, "particle lifetime [s]")->check(positive);

  auto* sweep = app.add_subcommand("sweep", "run a sweep described by a key=value spec file");
  sweep->add_option("--spec", o.spec_path, "sweep spec file")->required();
  sweep->add_option("--out", o.out, "output file (stdout if omitted)");
  auto* fmt_opt = sweep->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  if (o.verbosity > 0) {
    err << "mtc: " << app.get_subcommands().front()->get_name() << ", threads="
        << o.threads << ", seed=" << o.seed << '\n';
  }
  try {
    if (*bounds) return cmd_bounds(o, out);
    if (*table1) return cmd_table1(o, out);
    if (*figure) return cmd_figure(o, out);
    if (*sweep) return cmd_sweep(o, out, fmt_opt->count() > 0);
    if (*validate) {
      if (n_opt->count() == 0) {
        o.n = o.suite == "levy" || o.suite == "mi" ? 1000000 : 100000;
      }
      if (m_opt->count() == 0) {
        if (o.suite == "gumbel") o.M = 1000000;
        if (o.suite == "avg") o.M = 10000;
      }
      return cmd_validate(o, out, c_opt->count() > 0);
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::failure;
  }
  return ExitCode::usage;
}

}  // namespace mtc::cli
