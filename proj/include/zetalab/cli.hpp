#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zetalab/config.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/report.hpp"

namespace zetalab::cli {

// One field per flag; `command` is one of zeta, xi, sieve, window, poly,
// moment, twisted, lemma4, lemma5, lemma6, lemma9, prop3, thm1-trend, cor2,
// thm2-offline.
struct RunConfig {
  std::string command;

  double r = 1.0;
  double k = 1.0;
  double sigma = std::numeric_limits<double>::quiet_NaN();  // NaN: per-command default
  double T = 1000.0;
  double delta = 0.1;
  double x = 0.0;  // 0: derived from T where the command has a rule
  double y = 0.0;
  double t = 14.134725141734693;
  double step = 0.1;
  std::size_t count = 1;
  std::size_t samples = 0;  // 0: per-command default
  std::size_t x_max = 100;
  double t_min = 100.0;
  double t_max = 1e4;
  std::size_t n_t = 50;
  double sigma_min = 0.5;
  double sigma_max = 1.0;
  double sigma_step = 0.05;
  std::vector<double> T_list{500.0, 1000.0, 2000.0};
  std::vector<double> psi_list{2.0, 4.0, 6.0};
  Scheme scheme = Scheme::gauss_panels;
  bool random = false;  // random t grid from seed instead of midpoints

  std::string out_path;  // empty: stdout
  Format format = Format::csv;
  unsigned threads = 0;  // 0: ZETALAB_THREADS or hardware concurrency
  unsigned long long seed = 1;
  Defaults defaults;
};

// Parses the command line. Returns the config, or an exit code when parsing
// ended early (--help: 0, usage error: 2). Messages go to out / err.
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = 0;
};
ParseResult parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Throws InvalidArgument naming the first violated constraint.
void validate(const RunConfig& cfg);

// Runs the command and writes its report. Exit code 0 when everything holds
// (or for pure evaluations), 1 when some row fails, 2 on errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse + validate + run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli
