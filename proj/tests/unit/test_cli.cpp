#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "mtc/bounds.hpp"
#include "mtc/optimize.hpp"
#include "mtc/sweep.hpp"

using namespace mtc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mtc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("mtc_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    v.push_back(line);
  }
  return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds optimizes tau_x") {
  Run r = run_cli({"bounds", "--c", "1", "--tau-n", "0.54", "--kind", "single_ub", "--optimize", "tau_x"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["kind"] == "single_ub");
  CHECK(j["argmax_tau_x"].get<double>() == doctest::Approx(0.65).epsilon(0.02));
  BoundResult lib = optimize_tau_x(BoundKind::single_ub, ChannelParams{1.0, 0.0, 0.54, 1});
  CHECK(j["bits_per_sec"].get<double>() == lib.bits_per_sec);
}

TEST_CASE("bounds evaluates at a point") {
  Run z = run_cli({"bounds", "--c", "1", "--tau-x", "0", "--tau-n", "1", "--kind", "single_lb"});
  REQUIRE(z.code == 0);
  CHECK(json::parse(z.out)["bits_per_sec"].get<double>() == 0.0);

  Run r = run_cli({"bounds", "--c", "1", "--M", "1000000", "--tau-x", "0.037", "--tau-n", "0.073",
                   "--kind", "avg_lb", "--kind", "fa_lb"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2u);
  double avg = j[0]["bits_per_sec"], fa = j[1]["bits_per_sec"];
  ChannelParams p{1.0, 0.037, 0.073, 1000000};
  CHECK(avg == avg_lb_at(p));
  CHECK(fa == fa_lb_at(p));
  CHECK(avg > 0.0);
  CHECK(avg > fa);
  CHECK(r.err.empty());
}

TEST_CASE("joint optimization through the cli") {
  Run r = run_cli({"bounds", "--c", "0.1", "--kind", "single_lb", "--optimize", "both"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  BoundResult lib = optimize_joint(BoundKind::single_lb, 0.1, 1);
  CHECK(j["bits_per_sec"].get<double>() == lib.bits_per_sec);
  CHECK(j["argmax_tau_n"].get<double>() == lib.argmax_tau_n);
}

TEST_CASE("usage and domain errors exit 2") {
  Run neg = run_cli({"bounds", "--c", "-1", "--tau-x", "0", "--tau-n", "1"});
  CHECK(neg.code == 2);
  CHECK(neg.err.find("--c") != std::string::npos);
  CHECK(neg.out.empty());
  Run tn = run_cli({"bounds", "--c", "1", "--tau-x", "0.1", "--tau-n", "0"});
  CHECK(tn.code == 2);
  CHECK(tn.err.find("--tau-n") != std::string::npos);
  Run missing = run_cli({"bounds", "--c", "1", "--tau-x", "0.1"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--tau-n") != std::string::npos);
  Run kind = run_cli({"bounds", "--c", "1", "--tau-x", "0.1", "--tau-n", "1", "--kind", "magic"});
  CHECK(kind.code == 2);
  CHECK(kind.err.find("--kind") != std::string::npos);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"figure", "--id", "13"}).code == 2);
  CHECK(run_cli({"validate", "--suite", "levy", "--n", "10"}).code == 2);
  Run fa1 = run_cli({"bounds", "--c", "1", "--tau-x", "0.1", "--tau-n", "1", "--kind", "fa_lb"});
  CHECK(fa1.code == 2);
  CHECK(fa1.err.find("M") != std::string::npos);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("table1 writes six rows") {
  fs::path d = scratch_dir();
  fs::path f = d / "t1.csv";
  Run r = run_cli({"table1", "--out", f.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  auto lines = lines_of(slurp(f));
  REQUIRE(lines.size() == 7u);
  CHECK(lines[0] == "c_s,tau_x_lb_s,tau_n_lb_s,tau_x_ub_s,tau_n_ub_s");
  std::ostringstream direct;
  write_csv(run_table1(), direct);
  CHECK(slurp(f) == direct.str());
  Run j = run_cli({"table1", "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out).size() == 6u);
  fs::remove_all(d);
}

TEST_CASE("figure output") {
  fs::path d = scratch_dir();
  fs::path f = d / "f4.csv";
  REQUIRE(run_cli({"figure", "--id", "4", "--out", f.string(), "--threads", "2"}).code == 0);
  auto lines = lines_of(slurp(f));
  REQUIRE(lines.size() == 1u + 3u * 81u);
  CHECK(lines[0].rfind("c_s,M,tau_x_s,tau_n_s,single_lb_bits_per_s", 0) == 0);
  CHECK(lines[1].rfind("0.1,1,1,0.01,", 0) == 0);
  std::string first = slurp(f);
  REQUIRE(run_cli({"figure", "--id", "4", "--out", f.string(), "--threads", "1"}).code == 0);
  CHECK(slurp(f) == first);

  Run f11 = run_cli({"figure", "--id", "11", "--format", "json"});
  REQUIRE(f11.code == 0);
  json arr = json::parse(f11.out);
  REQUIRE(arr.size() == 13u);
  for (const auto& row : arr) {
    CHECK(row["c_s"] == 0.1);
    CHECK(row.contains("fa_lb_bits_per_s"));
    CHECK(row.contains("avg_ub_bits_per_s"));
  }
  fs::remove_all(d);
}

TEST_CASE("unwritable output exits 3") {
  Run r = run_cli({"table1", "--out", "/nonexistent-dir/t1.csv"});
  CHECK(r.code == 3);
  CHECK(r.err.find("/nonexistent-dir/t1.csv") != std::string::npos);
  CHECK(run_cli({"sweep", "--spec", "/nonexistent-dir/spec.txt"}).code == 3);
}

TEST_CASE("sweep from a spec file") {
  fs::path d = scratch_dir();
  fs::path spec = d / "spec.txt";
  {
    std::ofstream f(spec);
    f << "# small grid\nkinds=single_lb,single_ub\nc=0.1\ntau_x=0.17\ntau_n=0.06,0.1\n";
  }
  Run r = run_cli({"sweep", "--spec", spec.string()});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3u);
  Run j = run_cli({"sweep", "--spec", spec.string(), "--format", "json"});
  REQUIRE(j.code == 0);
  json arr = json::parse(j.out);
  REQUIRE(arr.size() == 2u);
  CHECK(arr[0]["single_lb_bits_per_s"].get<double>() == single_lb_at(ChannelParams{0.1, 0.17, 0.06, 1}));
  {
    std::ofstream f(spec);
    f << "kinds=single_lb\nc=0.1\nwidth=3\n";
  }
  Run bad = run_cli({"sweep", "--spec", spec.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("width") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("config file values yield to flags") {
  fs::path d = scratch_dir();
  fs::path cfg = d / "run.ini";
  {
    std::ofstream f(cfg);
    f << "[bounds]\nc=1\ntau-x=0.5\ntau-n=2\nkind=single_ub\n";
  }
  Run a = run_cli({"--config", cfg.string(), "bounds"});
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["bits_per_sec"].get<double>() == single_ub_at(ChannelParams{1.0, 0.5, 2.0, 1}));
  Run b = run_cli({"--config", cfg.string(), "bounds", "--tau-n", "3"});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["bits_per_sec"].get<double>() == single_ub_at(ChannelParams{1.0, 0.5, 3.0, 1}));
  fs::remove_all(d);
}

TEST_CASE("validate reports and threshold exit") {
  Run ok = run_cli({"validate", "--suite", "levy", "--n", "200000", "--seed", "7", "--c", "1"});
  json j = json::parse(ok.out);
  CHECK(j["suite"] == "levy");
  CHECK(j["seed"] == 7);
  CHECK(j["passed"].get<bool>() == (ok.code == 0));
  Run again = run_cli({"validate", "--suite", "levy", "--n", "200000", "--seed", "7", "--c", "1"});
  CHECK(again.out == ok.out);
  Run other = run_cli({"validate", "--suite", "levy", "--n", "200000", "--seed", "8", "--c", "1"});
  CHECK(other.out != ok.out);

  Run g = run_cli({"validate", "--suite", "gumbel", "--n", "20000", "--M", "10000"});
  CHECK(g.code == 4);
  json gj = json::parse(g.out);
  CHECK_FALSE(gj["passed"].get<bool>());
  CHECK(gj["ks_statistic"].get<double>() > 0.01);

  Run mi = run_cli({"validate", "--suite", "mi", "--c", "0.1", "--n", "200000", "--seed", "3"});
  json mj = json::parse(mi.out);
  CHECK(mj["lower_bound"].get<double>() <= mj["upper_bound"].get<double>());
  CHECK(mj["passed"].get<bool>() == (mi.code == 0));
}

TEST_CASE("verbose diagnostics go to stderr") {
  Run r = run_cli({"-v", "bounds", "--c", "1", "--tau-x", "0.1", "--tau-n", "1"});
  REQUIRE(r.code == 0);
  CHECK_FALSE(r.err.empty());
  CHECK(json::accept(r.out));
}

}  // TEST_SUITE
