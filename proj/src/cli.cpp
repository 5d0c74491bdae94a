#include "zetalab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "zetalab/dirichlet_poly.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/multiplicative.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/special_fns.hpp"
#include "zetalab/verifier.hpp"

namespace zetalab::cli {

namespace {

// Registers the flag `--name` on a subcommand, bound to its RunConfig field.
void add(CLI::App* sub, RunConfig& c, const std::string& name) {
  const std::string flag = "--" + name;
  if (name == "r") sub->add_option(flag, c.r, "exponent r")->capture_default_str();
  else if (name == "k") sub->add_option(flag, c.k, "moment exponent k")->capture_default_str();
  else if (name == "sigma") sub->add_option(flag, c.sigma, "real part");
  else if (name == "T") sub->add_option(flag, c.T, "height; the window is [T, 2T]")->capture_default_str();
  else if (name == "delta") sub->add_option(flag, c.delta, "delta")->capture_default_str();
  else if (name == "x") sub->add_option(flag, c.x, "polynomial length x");
  else if (name == "y") sub->add_option(flag, c.y, "window knee y");
  else if (name == "t") sub->add_option(flag, c.t, "imaginary part")->capture_default_str();
  else if (name == "step") sub->add_option(flag, c.step, "spacing between consecutive t")->capture_default_str();
  else if (name == "count") sub->add_option(flag, c.count, "number of points")->capture_default_str();
  else if (name == "samples") sub->add_option(flag, c.samples, "sample or quadrature node count");
  else if (name == "x-max") sub->add_option(flag, c.x_max, "sieve length")->capture_default_str();
  else if (name == "t-min") sub->add_option(flag, c.t_min, "smallest t")->capture_default_str();
  else if (name == "t-max") sub->add_option(flag, c.t_max, "largest t")->capture_default_str();
  else if (name == "n-t") sub->add_option(flag, c.n_t, "number of log-spaced t values")->capture_default_str();
  else if (name == "sigma-min") sub->add_option(flag, c.sigma_min, "smallest sigma")->capture_default_str();
  else if (name == "sigma-max") sub->add_option(flag, c.sigma_max, "largest sigma")->capture_default_str();
  else if (name == "sigma-step") sub->add_option(flag, c.sigma_step, "sigma spacing")->capture_default_str();
  else if (name == "T-list") sub->add_option(flag, c.T_list, "comma-separated heights")->delimiter(',');
  else if (name == "psi-list") sub->add_option(flag, c.psi_list, "comma-separated psi values")->delimiter(',');
  else if (name == "scheme") {
    const std::map<std::string, Scheme> m{{"gauss", Scheme::gauss_panels}, {"trapezoid", Scheme::trapezoid}};
    sub->add_option(flag, c.scheme, "gauss or trapezoid")->transform(CLI::CheckedTransformer(m));
  } else if (name == "random") {
    sub->add_flag(flag, c.random, "random t grid drawn from --seed");
  }
}

double sigma_or(const RunConfig& c, double fallback) { return std::isnan(c.sigma) ? fallback : c.sigma; }

std::size_t samples_or(const RunConfig& c, std::size_t fallback) { return c.samples == 0 ? fallback : c.samples; }

std::vector<double> window_grid(const RunConfig& c, std::size_t n) {
  return c.random ? random_grid(c.T, n, c.seed) : midpoint_grid(c.T, n);
}

// Log-spaced (or log-uniform random) t values in [t_min, t_max].
std::vector<double> log_grid(const RunConfig& c) {
  std::vector<double> g(c.n_t);
  const double span = std::log(c.t_max / c.t_min);
  if (c.random) {
    std::mt19937_64 rng(c.seed);
    for (auto& t : g) t = c.t_min * std::exp(span * (static_cast<double>(rng() >> 11) * 0x1.0p-53));
    std::sort(g.begin(), g.end());
  } else {
    for (std::size_t j = 0; j < c.n_t; ++j) {
      const double f = c.n_t == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(c.n_t - 1);
      g[j] = c.t_min * std::exp(span * f);
    }
  }
  return g;
}

std::vector<double> sigma_grid(const RunConfig& c) {
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((c.sigma_max - c.sigma_min) / c.sigma_step + 1e-9));
  for (std::size_t j = 0; j <= n; ++j) g.push_back(c.sigma_min + c.sigma_step * static_cast<double>(j));
  return g;
}

double twisted_x(const RunConfig& c) { return c.x > 0.0 ? c.x : std::pow(c.T, c.r / 2.0 + 2.0 * c.delta); }
double twisted_y(const RunConfig& c) { return c.y > 0.0 ? c.y : std::pow(c.T, c.r / 2.0 + c.delta); }

std::shared_ptr<const DivisorTable> table_for(double r, double x) {
  return std::make_shared<const DivisorTable>(sieve_divisor(r, static_cast<std::size_t>(std::floor(x)) + 1));
}

struct Output {
  std::optional<ScanReport> scan;
  std::optional<Table> table;
};

Table moment_table(const std::string& kind, ParamList params, double T, const MomentEstimate& m) {
  Table tab;
  tab.kind = kind;
  tab.params = std::move(params);
  tab.columns = {"T", "value", "quad_err"};
  tab.rows = {{T, m.value, m.quad_err}};
  tab.summary = {{"n_evals", static_cast<double>(m.n_evals)}};
  return tab;
}

Output execute(const RunConfig& c) {
  const Defaults& d = c.defaults;
  const std::string& cmd = c.command;
  if (cmd == "zeta" || cmd == "xi") {
    const double s = sigma_or(c, 0.5);
    Table tab;
    tab.kind = cmd;
    tab.params = {{"sigma", s}, {"t", c.t}, {"step", c.step}, {"count", static_cast<double>(c.count)}};
    if (cmd == "zeta") tab.columns = {"sigma", "t", "re", "im", "abs_err"};
    else tab.columns = {"sigma", "t", "log_abs", "arg", "rel_err"};
    tab.rows.resize(c.count);
    parallel_for(c.count, [&](std::size_t i) {
      const double t = c.t + c.step * static_cast<double>(i);
      if (cmd == "zeta") {
        const ComplexValue z = zeta({s, t}, d.zeta_target_err);
        tab.rows[i] = {s, t, z.re, z.im, z.abs_err};
      } else {
        const LogValue l = log_xi({s, t}, d.zeta_target_err);
        tab.rows[i] = {s, t, l.log.real(), l.log.imag(), l.rel_err};
      }
    });
    return {std::nullopt, tab};
  }
  if (cmd == "sieve") {
    const DivisorTable dt = sieve_divisor(c.r, c.x_max);
    Table tab{"sieve", {{"r", c.r}, {"x_max", static_cast<double>(c.x_max)}}, {"n", "value"}, {}, {}};
    for (std::size_t n = 1; n <= c.x_max; ++n) tab.rows.push_back({static_cast<double>(n), dt[n]});
    return {std::nullopt, tab};
  }
  if (cmd == "window") {
    const SmoothingWindow w(c.x, c.y);
    Table tab{"window", {{"x", c.x}, {"y", c.y}}, {"n", "value"}, {}, {}};
    const auto last = static_cast<std::size_t>(std::floor(c.x)) + 1;
    for (std::size_t n = 1; n <= last; ++n) tab.rows.push_back({static_cast<double>(n), w(static_cast<double>(n))});
    return {std::nullopt, tab};
  }
  if (cmd == "poly") {
    const double s = sigma_or(c, 0.5);
    const double y = c.y > 0.0 ? c.y : c.x / 2.0;
    const PolySpec poly(table_for(c.r, c.x), SmoothingWindow(c.x, y), s);
    const GridResult g = eval_poly(poly, window_grid(c, samples_or(c, 64)));
    Table tab{"poly", {{"r", c.r}, {"x", c.x}, {"y", y}, {"sigma", s}, {"T", c.T}}, {"t", "re", "im", "abs_err"}, {}, {}};
    for (std::size_t i = 0; i < g.t_values.size(); ++i) {
      tab.rows.push_back({g.t_values[i], g.values[i].re, g.values[i].im, g.values[i].abs_err});
    }
    const MomentEstimate ms = mean_square_quadrature(poly, c.T, default_samples(c.T, d.nodes_per_wavelength));
    tab.summary = {{"mean_square", ms.value}, {"quad_err", ms.quad_err}, {"diagonal", mean_square_diagonal(poly, c.T)}};
    return {std::nullopt, tab};
  }
  if (cmd == "moment") {
    const double s = sigma_or(c, 0.5);
    const MomentEstimate m =
        moment({c.k, c.T, s, samples_or(c, default_samples(c.T, d.nodes_per_wavelength)), c.scheme});
    return {std::nullopt, moment_table("moment", {{"k", c.k}, {"sigma", s}}, c.T, m)};
  }
  if (cmd == "twisted") {
    const double x = twisted_x(c), y = twisted_y(c);
    const PolySpec poly(table_for(c.r, x), SmoothingWindow(x, y), 0.5);
    const MomentEstimate m = twisted_fourth_moment(poly, c.T, samples_or(c, default_samples(c.T, d.nodes_per_wavelength)));
    return {std::nullopt, moment_table("twisted", {{"r", c.r}, {"x", x}, {"y", y}}, c.T, m)};
  }
  if (cmd == "lemma4") return {lemma4_scan(log_grid(c), sigma_grid(c), d), std::nullopt};
  if (cmd == "lemma5") {
    const Lemma5ScanParams p{c.r, sigma_or(c, 0.6), c.T, c.x, c.y};
    return {lemma5_scan(p, window_grid(c, samples_or(c, 200)), d), std::nullopt};
  }
  if (cmd == "lemma6") return {lemma6_check(c.r, sigma_or(c, 0.55), c.T, c.samples, d), std::nullopt};
  if (cmd == "lemma9") {
    const double s = sigma_or(c, 0.5 + 2.0 / std::log(c.T));
    return {lemma9_scan(c.r, s, window_grid(c, samples_or(c, 100)), c.T, d), std::nullopt};
  }
  if (cmd == "prop3") return {prop3_scan({c.r, c.delta, c.T}, window_grid(c, samples_or(c, 200)), d), std::nullopt};
  if (cmd == "thm1-trend") return {std::nullopt, theorem1_trend(c.k, c.T_list, d)};
  if (cmd == "cor2") return {std::nullopt, cor2_comparison(c.r, c.delta, c.T_list, c.samples)};
  if (cmd == "thm2-offline") return {std::nullopt, thm2_offline(c.k, c.T, c.psi_list, c.delta, c.samples)};
  throw InvalidArgument("unknown command " + cmd);
}

std::string summary_line(const std::string& cmd, const Output& o) {
  std::ostringstream os;
  os << cmd << ": ";
  if (o.scan) {
    os << o.scan->summary.n_holds << "/" << o.scan->summary.n_total << " hold, min_margin "
       << format_real(o.scan->summary.min_margin);
  } else if (o.table->columns == std::vector<std::string>{"T", "value", "quad_err"}) {
    os << format_real(o.table->rows[0][1]) << " +- " << format_real(o.table->rows[0][2]);
  } else {
    os << o.table->rows.size() << " rows";
    for (const auto& [k, v] : o.table->summary) os << ", " << k << " " << format_real(v);
  }
  return os.str();
}

}  // namespace

ParseResult parse(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Numerical checks around high moments of the Riemann zeta function"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  app.add_option("--out", c.out_path, "report file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (default: ZETALAB_THREADS or all cores)");
  app.add_option("--seed", c.seed, "seed for random t grids")->capture_default_str();
  Defaults& d = c.defaults;
  app.add_option("--tol-ot-factor", d.tol_ot_factor, "O(1/T) allowance is this / T")->capture_default_str();
  app.add_option("--slack-eps", d.slack_epsilon, "epsilon in the c T^{1-eps} slack")->capture_default_str();
  app.add_option("--slack-c", d.slack_c, "c in the c T^{1-eps} slack")->capture_default_str();
  app.add_option("--tail-tol", d.tail_tol, "kernel tail mass, closed-form integrands")->capture_default_str();
  app.add_option("--scan-tail-tol", d.scan_tail_tol, "kernel tail mass, sampled zeta integrands")
      ->capture_default_str();
  app.add_option("--sample-step", d.sample_step, "grid step of sampled zeta lines")->capture_default_str();
  app.add_option("--t0", d.t0, "smallest T treated as large")->capture_default_str();
  app.add_option("--zeta-target", d.zeta_target_err, "zeta absolute error target")->capture_default_str();
  app.add_option("--nodes-per-wavelength", d.nodes_per_wavelength, "moment quadrature density")
      ->capture_default_str();
  app.add_option("--trend-factor", d.trend_factor, "allowed max/min spread of trend ratios")->capture_default_str();

  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"zeta", {"sigma", "t", "step", "count"}},
      {"xi", {"sigma", "t", "step", "count"}},
      {"sieve", {"r", "x-max"}},
      {"window", {"x", "y"}},
      {"poly", {"r", "x", "y", "sigma", "T", "samples", "random"}},
      {"moment", {"k", "T", "sigma", "samples", "scheme"}},
      {"twisted", {"r", "delta", "T", "x", "y", "samples"}},
      {"lemma4", {"t-min", "t-max", "n-t", "sigma-min", "sigma-max", "sigma-step", "random"}},
      {"lemma5", {"r", "sigma", "T", "x", "y", "samples", "random"}},
      {"lemma6", {"r", "sigma", "T", "samples"}},
      {"lemma9", {"r", "sigma", "T", "samples", "random"}},
      {"prop3", {"r", "delta", "T", "samples", "random"}},
      {"thm1-trend", {"k", "T-list"}},
      {"cor2", {"r", "delta", "T-list", "samples"}},
      {"thm2-offline", {"k", "T", "psi-list", "delta", "samples"}},
  };
  for (const auto& [name, opts] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    for (const auto& o : opts) add(sub, c, o);
    sub->callback([&c, n = name] { c.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? 0 : 2};
  }
  c.format = format == "json" ? Format::json : Format::csv;
  return {c, 0};
}

void validate(const RunConfig& c) {
  const std::string& cmd = c.command;
  const Defaults& d = c.defaults;
  require(d.tol_ot_factor >= 0.0, "tol-ot-factor >= 0");
  require(d.slack_epsilon > 0.0 && d.slack_epsilon < 1.0, "0 < slack-eps < 1");
  require(d.slack_c >= 0.0, "slack-c >= 0");
  require(d.tail_tol > 0.0 && d.tail_tol < 1.0, "0 < tail-tol < 1");
  require(d.scan_tail_tol > 0.0 && d.scan_tail_tol < 1.0, "0 < scan-tail-tol < 1");
  require(d.sample_step > 0.0, "sample-step > 0");
  require(d.zeta_target_err > 0.0, "zeta-target > 0");
  require(d.nodes_per_wavelength > 0.0, "nodes-per-wavelength > 0");
  require(d.trend_factor > 1.0, "trend-factor > 1");

  const bool windowed = cmd == "poly" || cmd == "moment" || cmd == "twisted" || cmd == "lemma5" ||
                        cmd == "lemma6" || cmd == "lemma9" || cmd == "prop3" || cmd == "thm2-offline";
  if (windowed) require(c.T > 1.0 && c.T <= kMomentTCap, "1 < T <= 1e5");
  if (c.samples != 0 && cmd != "poly" && cmd != "lemma5" && cmd != "lemma9" && cmd != "prop3") {
    require(c.samples >= kMinMomentSamples, "samples >= 64");
  }

  if (cmd == "zeta" || cmd == "xi") {
    require(c.count >= 1, "count >= 1");
    if (cmd == "zeta") require(sigma_or(c, 0.5) >= kStripMin, "sigma >= 0.4");
  } else if (cmd == "sieve") {
    require(c.r > 0.0, "r > 0");
    require(c.x_max >= 1 && c.x_max <= d.x_max_cap, "1 <= x-max <= 1e8");
  } else if (cmd == "window") {
    require(c.y >= 1.0 && c.x > c.y, "1 <= y < x");
  } else if (cmd == "poly") {
    require(c.r > 0.0, "r > 0");
    const double y = c.y > 0.0 ? c.y : c.x / 2.0;
    require(y >= 1.0 && c.x > y, "1 <= y < x");
    require(sigma_or(c, 0.5) >= 0.5, "sigma >= 1/2");
  } else if (cmd == "moment") {
    require(c.k >= 0.0 && c.k <= kMomentKCap, "0 <= k <= 4");
    require(sigma_or(c, 0.5) >= 0.5, "sigma >= 1/2");
  } else if (cmd == "twisted") {
    require(c.r > 0.0, "r > 0");
    require(twisted_x(c) < c.T, "x = T^{r/2 + 2 delta} < T");
    require(twisted_y(c) >= 1.0 && twisted_x(c) > twisted_y(c), "1 <= y < x");
  } else if (cmd == "lemma4") {
    require(c.t_min > 2.0 && c.t_max >= c.t_min, "2 < t-min <= t-max");
    require(c.n_t >= 1, "n-t >= 1");
    require(c.sigma_min >= 0.5 && c.sigma_max > c.sigma_min, "1/2 <= sigma-min < sigma-max");
    require(c.sigma_step > 0.0, "sigma-step > 0");
  } else if (cmd == "lemma5") {
    require(c.r > 0.0, "r > 0");
    const double s = sigma_or(c, 0.6);
    require(s > 0.5 && s <= 1.0, "1/2 < sigma <= 1");
    const double x = c.x > 0.0 ? c.x : std::pow(c.T, 0.8), y = c.y > 0.0 ? c.y : std::pow(c.T, 0.5);
    require(y >= 1.0 && y <= x / 2.0, "1 <= y <= x/2");
    require(x < c.T, "x < T");
  } else if (cmd == "lemma6") {
    require(c.r >= 0.0, "r >= 0");
    const double s = sigma_or(c, 0.55);
    require(s > 0.5 && s <= 1.0, "1/2 < sigma <= 1");
    require(2.0 + c.r <= kMomentKCap, "2 + r <= 4");
  } else if (cmd == "lemma9") {
    require(c.r > 0.0, "r > 0");
    require(sigma_or(c, 1.0) >= 0.5 + 1.0 / std::log(c.T) - 1e-12, "sigma >= 1/2 + 1/log T");
  } else if (cmd == "prop3") {
    Prop3Params{c.r, c.delta, c.T}.validate();
  } else if (cmd == "thm1-trend") {
    require(c.k > 0.0 && c.k < 2.0 + 2.0 / 11.0, "0 < k < 2 + 2/11");
    require(!c.T_list.empty(), "non-empty T list");
    for (std::size_t i = 0; i < c.T_list.size(); ++i) {
      require(c.T_list[i] > 1.0 && c.T_list[i] <= kMomentTCap, "1 < T <= 1e5");
      if (i > 0) require(c.T_list[i] > c.T_list[i - 1], "T list increasing");
    }
  } else if (cmd == "cor2") {
    require(c.r > 0.0 && c.r < 1.0, "0 < r < 1");
    require(c.delta > 0.0, "delta > 0");
    for (double T : c.T_list) {
      require(T > 1.0 && T <= kMomentTCap, "1 < T <= 1e5");
      require(std::pow(T, c.r / 2.0 + 2.0 * c.delta) < T, "x = T^{r/2 + 2 delta} < T");
    }
  } else if (cmd == "thm2-offline") {
    require(c.k >= 0.0 && c.k < 2.0 + 2.0 / 11.0, "0 <= k < 2 + 2/11");
    require(c.delta > 0.0 && c.delta < 0.5, "0 < delta < 1/2");
    require(!c.psi_list.empty(), "non-empty psi list");
    for (double psi : c.psi_list) require(psi > 0.0, "psi > 0");
  } else {
    throw InvalidArgument("unknown command " + cmd);
  }
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.threads > 0) set_thread_count(c.threads);
    if (c.command == "prop3" && c.T < c.defaults.t0) {
      err << "warning: T = " << format_real(c.T) << " is below t0 = " << format_real(c.defaults.t0) << "\n";
    }
    const Output o = execute(c);
    if (c.out_path.empty()) {
      if (o.scan) {
        if (c.format == Format::csv) write_csv(out, *o.scan);
        else out << to_json(*o.scan) << "\n";
      } else {
        if (c.format == Format::csv) write_csv(out, *o.table);
        else out << to_json(*o.table) << "\n";
      }
    } else if (o.scan) {
      emit_report(*o.scan, c.out_path, c.format);
    } else {
      emit_report(*o.table, c.out_path, c.format);
    }
    (c.out_path.empty() ? err : out) << summary_line(c.command, o) << "\n";

    if (o.scan) return o.scan->all_hold() ? 0 : 1;
    for (const auto& [k, v] : o.table->summary) {
      if (k == "holds" && v == 0.0) return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << c.command << ": " << e.what() << "\n";
    return 2;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ParseResult p = parse(argc, argv, out, err);
  if (!p.config) return p.exit_code;
  return run(*p.config, out, err);
}

}  // namespace zetalab::cli
