// Acceptance suite: one PASS/FAIL line per criterion. Scans run through the
// command-line front end and are judged from the JSON reports they write.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zetalab/cli.hpp"
#include "zetalab/kernels.hpp"
#include "zetalab/multiplicative.hpp"
#include "zetalab/report.hpp"
#include "zetalab/special_fns.hpp"

using namespace zetalab;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kDir = "acceptance_reports";

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Every report written by a criterion, with the command that produced it.
std::vector<std::pair<std::string, std::vector<std::string>>> g_runs;

// Runs the CLI writing kDir/name.json; returns the exit code.
int cli(const std::string& name, std::vector<std::string> args, bool record = true) {
  const std::string path = kDir + "/" + name + ".json";
  args.insert(args.begin(), {"zetalab", "--format", "json", "--out", path});
  if (record) g_runs.emplace_back(path, args);
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code == 2) std::fprintf(stderr, "%s: %s", name.c_str(), err.str().c_str());
  return code;
}

ScanReport scan(const std::string& name) { return scan_report_from_json(slurp(kDir + "/" + name + ".json")); }
Table table(const std::string& name) { return table_from_json(slurp(kDir + "/" + name + ".json")); }

double summary(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.summary) {
    if (k == key) return v;
  }
  return std::nan("");
}

void note_scan(Outcome& o, const std::string& label, const ScanReport& r) {
  o.pass = o.pass && r.summary.n_total > 0 && r.summary.n_holds == r.summary.n_total;
  o.detail += label + " " + std::to_string(r.summary.n_holds) + "/" + std::to_string(r.summary.n_total) +
              " min_margin " + fmt("%.3g", r.summary.min_margin) + "; ";
}

Outcome kernel_suite() {
  Outcome o;
  double norm_err = 0.0, conv_err = 0.0;
  bool dominated = true;
  for (double a : {0.01, 0.1, 1.0}) {
    const auto k = CauchyKernel::with_tail(a, 1e-6);
    const auto s = smoothed_integral(k, [](double) { return 1.0; });
    norm_err = std::max(norm_err, std::abs(s.value + s.tail_mass - 1.0));
    for (int j = 0; j < 50; ++j) {
      const double v = 2.0 * a * std::tan(0.49 * kPi * j / 49.0);
      conv_err = std::max(conv_err, std::abs(kernel_self_convolution(a, v) - cauchy_weight(2.0 * a, v)));
      dominated = dominated && cauchy_weight(2.0 * a, v) <= 2.0 * cauchy_weight(a, v);
    }
  }
  o.pass = norm_err <= 1e-10 && conv_err <= 1e-8 && dominated;
  o.detail = "normalisation err " + fmt("%.2e", norm_err) + ", convolution err " + fmt("%.2e", conv_err) +
             (dominated ? ", w_2a <= 2 w_a" : ", w_2a > 2 w_a somewhere");
  return o;
}

Outcome sieve_suite() {
  Outcome o;
  double worst = 0.0;
  for (double r : {0.18, 0.5, 1.0, 2.0}) {
    const auto t = sieve_divisor(r, 1000);
    const auto ref = oracle::divisor_by_euler_factors(r, 1000);
    for (std::size_t n = 1; n <= 1000; ++n) worst = std::max(worst, std::abs(t[n] - ref[n]));
  }
  const auto d2 = sieve_divisor(2.0, 1000);
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 1000; ++n) mismatches += d2[n] != static_cast<double>(oracle::divisor_count(n));
  o.pass = worst <= 1e-10 && mismatches == 0;
  o.detail = "max |sieve - oracle| " + fmt("%.2e", worst) + ", d_2 mismatches " + std::to_string(mismatches);
  return o;
}

Outcome special_suite() {
  Outcome o;
  const double z2 = std::abs(zeta({2.0, 0.0}).re - kPi * kPi / 6.0);
  const double zh = std::abs(zeta({0.5, 0.0}).re + 1.46035450880958681);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> us(0.0, 1.0), ut(-200.0, 200.0), ur(0.05, 3.0);
  double fe = 0.0, pw = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double s = us(rng), t = ut(rng);
    const auto a = log_xi({s, t}).log, b = log_xi({1.0 - s, -t}).log;
    fe = std::max(fe, std::abs(std::exp(a - b) - 1.0));
  }
  for (int i = 0; i < 100; ++i) {
    const EvalPoint p{0.5 + us(rng), 10.0 + std::abs(ut(rng)) * 5.0};
    const double r = ur(rng);
    const double want = std::pow(zeta(p).abs(), r);
    pw = std::max(pw, std::abs(zeta_pow(p, r).abs() - want) / std::max(1.0, want));
  }
  o.pass = z2 <= 1e-10 && zh <= 1e-8 && fe <= 1e-8 && pw <= 1e-8;
  o.detail = "zeta(2) err " + fmt("%.2e", z2) + ", zeta(1/2) err " + fmt("%.2e", zh) + ", xi residual " +
             fmt("%.2e", fe) + ", |zeta^r| vs |zeta|^r " + fmt("%.2e", pw);
  return o;
}

Outcome lemma4() {
  Outcome o;
  o.pass = cli("lemma4", {"lemma4", "--t-min", "100", "--t-max", "10000", "--n-t", "50", "--sigma-min", "0.5",
                          "--sigma-max", "1.0", "--sigma-step", "0.05"}) != 2;
  note_scan(o, "sigma 0.5..1 x 50 t", scan("lemma4"));
  return o;
}

Outcome lemma5() {
  Outcome o;
  for (const char* r : {"0.5", "1"}) {
    for (const char* s : {"0.55", "0.6"}) {
      const std::string name = std::string("lemma5_r") + r + "_s" + s;
      o.pass = o.pass && cli(name, {"lemma5", "--r", r, "--sigma", s, "--T", "1000", "--samples", "200"}) != 2;
      note_scan(o, std::string("r=") + r + " sigma=" + s, scan(name));
    }
  }
  return o;
}

Outcome prop3() {
  Outcome o;
  o.pass = cli("prop3_a", {"prop3", "--r", "0.5", "--delta", "0.1", "--T", "1000", "--samples", "200"}) != 2;
  note_scan(o, "(0.5, 0.1, 1e3)", scan("prop3_a"));
  o.pass = o.pass && cli("prop3_b", {"prop3", "--r", "0.18", "--delta", "0.05", "--T", "10000", "--samples", "100"}) != 2;
  note_scan(o, "(0.18, 0.05, 1e4)", scan("prop3_b"));
  return o;
}

Outcome lemma9() {
  Outcome o;
  o.pass = cli("lemma9", {"lemma9", "--r", "1", "--T", "1000", "--samples", "100"}) != 2;
  note_scan(o, "r=1 sigma=1/2+2/log T", scan("lemma9"));
  return o;
}

Outcome mean_value() {
  Outcome o;
  const std::vector<std::vector<std::string>> triples = {
      {"--r", "1", "--x", "10", "--y", "3", "--sigma", "0.5", "--T", "1000"},
      {"--r", "0.5", "--x", "14", "--y", "4", "--sigma", "0.5", "--T", "2000"},
      {"--r", "2", "--x", "22", "--y", "5", "--sigma", "0.6", "--T", "5000"},
  };
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const std::string name = "poly_" + std::to_string(i);
    std::vector<std::string> args{"poly"};
    args.insert(args.end(), triples[i].begin(), triples[i].end());
    o.pass = o.pass && cli(name, args) != 2;
    const Table t = table(name);
    const double rel = std::abs(summary(t, "mean_square") / summary(t, "diagonal") - 1.0);
    o.pass = o.pass && rel < 0.05;
    o.detail += "triple " + std::to_string(i + 1) + " |ratio - 1| " + fmt("%.2e", rel) + "; ";
  }
  return o;
}

Outcome trends() {
  Outcome o;
  for (const char* k : {"1", "2", "2.18"}) {
    const std::string name = std::string("thm1_k") + k;
    o.pass = o.pass && cli(name, {"thm1-trend", "--k", k, "--T-list", "500,1000,2000"}) != 2;
    const Table t = table(name);
    o.pass = o.pass && summary(t, "spread") < 10.0;
    o.detail += std::string("k=") + k + " ratios";
    for (const auto& row : t.rows) o.detail += " " + fmt("%.4g", row[3]);
    o.detail += " (spread " + fmt("%.3g", summary(t, "spread")) + "); ";
  }
  for (const char* k : {"1", "2"}) {
    const std::string name = std::string("thm2_k") + k;
    o.pass = o.pass && cli(name, {"thm2-offline", "--k", k, "--T", "1000", "--psi-list", "2,4,6", "--delta", "0.015"}) != 2;
    const Table t = table(name);
    o.pass = o.pass && summary(t, "deviation_decreasing") == 1.0;
    o.detail += std::string("k=") + k + " |ratio-1| over psi";
    for (const auto& row : t.rows) o.detail += " " + fmt("%.3g", std::abs(row[6]));
    o.detail += "; ";
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t same = 0;
  for (const auto& [path, args] : g_runs) {
    const std::string first = slurp(path);
    std::vector<std::string> again = args;
    const std::string rerun = path + ".rerun";
    again[4] = rerun;
    // Re-run on a different worker count.
    again.insert(again.begin() + 1, {"--threads", "3"});
    std::vector<const char*> argv;
    for (const auto& a : again) argv.push_back(a.c_str());
    std::ostringstream out, err;
    cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (!first.empty() && slurp(rerun) == first) ++same;
    else o.detail += "differs: " + path + "; ";
  }
  o.pass = !g_runs.empty() && same == g_runs.size();
  o.detail += std::to_string(same) + "/" + std::to_string(g_runs.size()) + " reports byte-identical";
  return o;
}

}  // namespace

int main() {
  std::filesystem::create_directories(kDir);
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "kernel suite", 5.0, kernel_suite},
      {2, "sieve oracle equivalence", 5.0, sieve_suite},
      {3, "special functions", 30.0, special_suite},
      {4, "xi monotonicity scan", 120.0, lemma4},
      {5, "smoothed polynomial residual", 600.0, lemma5},
      {6, "smoothed polynomial bound for |zeta|^2r", 1200.0, prop3},
      {7, "smoothed |zeta|^2r bound", 300.0, lemma9},
      {8, "mean value of the polynomial", 300.0, mean_value},
      {9, "moment trend logs", 1800.0, trends},
      {10, "determinism", 3600.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s [%d] %s (%.2fs of %.0fs%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                in_time ? "" : ", over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
