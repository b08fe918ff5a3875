// tomobell: sweeps, thresholds, single-state evaluation and plots for Bell
// functionals over tomographic probabilities.
//
// Exit codes: 0 success (no violation), 2 usage or input error, 3 violation
// found (eval), 4 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tomobell/bell.hpp"
#include "tomobell/optimizer.hpp"
#include "tomobell/states.hpp"
#include "tomobell/sweep.hpp"

namespace {

using namespace tomobell;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitIo = 4;
constexpr double kViolationMargin = 1e-6;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::size_t threads_from_env() {
  const char* env = std::getenv("TOMOBELL_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n <= 0) throw std::invalid_argument("TOMOBELL_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void print_settings(const BellEvaluation& e) {
  const auto a = e.settings.angles();
  static const char* names[] = {"theta_a", "phi_a", "theta_b", "phi_b", "theta_c", "phi_c", "theta_d", "phi_d"};
  for (std::size_t k = 0; k < a.size(); ++k) std::cout << names[k] << " = " << fmt(a[k]) << '\n';
  if (e.partitions) {
    std::cout << "partition_1 = " << e.partitions->first.encode() << '\n';
    std::cout << "partition_2 = " << e.partitions->second.encode() << '\n';
  }
}

struct Options {
  std::string family = "isotropic";
  std::size_t dim = 2;
  std::string functional = "chsh";
  std::optional<double> param_min;
  std::optional<double> param_max;
  std::size_t steps = 11;
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::uint64_t seed = OptimizerConfig{}.seed;
  double tol = 1e-4;
  std::string state_file;
  std::string out;
  std::string plot;
  std::string csv_in;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.threads = threads_from_env();
    return cfg;
  }
};

void write_plot(const SweepTable& table, const std::string& path) {
  std::ofstream out = open_output(path);
  write_sweep_svg(out, table);
  finish_output(out, path);
}

int run_sweep_command(const Options& o) {
  SweepConfig cfg;
  cfg.family = parse_family(o.family);
  cfg.dim = o.dim;
  cfg.functional = parse_functional(o.functional);
  const auto [lo, hi] = family_domain(cfg.family);
  cfg.param_min = o.param_min.value_or(lo);
  cfg.param_max = o.param_max.value_or(hi);
  cfg.steps = o.steps;
  cfg.optimizer = o.optimizer();
  cfg.out_path = o.out;
  if (!o.plot.empty()) cfg.plot_path = o.plot;
  cfg.validate();

  const auto records = run_sweep(cfg);
  const SweepMetadata meta = sweep_metadata(cfg);
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    write_sweep_csv(std::cout, meta, records);
  } else {
    std::ofstream out = open_output(cfg.out_path);
    write_sweep_csv(out, meta, records);
    finish_output(out, cfg.out_path);
  }
  if (cfg.plot_path) write_plot(SweepTable{meta, records}, *cfg.plot_path);
  return kExitOk;
}

int run_threshold_command(const Options& o) {
  const StateFamily family = parse_family(o.family);
  const BellFunctional functional = parse_functional(o.functional);
  if (functional == BellFunctional::i3 && o.dim != 3) throw std::invalid_argument("threshold: i3 requires --dim 3");
  // Default bracket: from the separability boundary to the most entangled member.
  const double sep = separability_threshold(family, o.dim);
  const double lo = o.param_min.value_or(family == StateFamily::werner ? -1.0 : sep);
  const double hi = o.param_max.value_or(family == StateFamily::werner ? sep : 1.0);
  const ThresholdResult t = find_threshold(family, o.dim, functional, o.optimizer(), {lo, hi}, o.tol);

  const std::string symbol = family == StateFamily::werner ? "phi" : "p";
  std::ostringstream report;
  report << symbol << " = " << fmt(t.param) << '\n';
  report << "bracket = [" << fmt(t.lo) << ", " << fmt(t.hi) << "]\n";
  const bool has_q = family == StateFamily::isotropic && o.dim == 3;
  if (has_q) report << "q = " << fmt(isotropic_param_to_singlet_fraction(t.param)) << '\n';
  std::cout << report.str();

  if (!o.out.empty()) {
    std::ofstream out = open_output(o.out);
    out << "family,dim,functional,param" << (has_q ? ",singlet_fraction" : "") << '\n';
    out << family_name(family) << ',' << o.dim << ',' << functional_name(functional) << ',' << fmt(t.param, 17);
    if (has_q) out << ',' << fmt(isotropic_param_to_singlet_fraction(t.param), 17);
    out << '\n';
    finish_output(out, o.out);
  }
  return kExitOk;
}

int run_eval_command(const Options& o) {
  if (o.state_file.empty()) throw std::invalid_argument("eval: --state-file is required");
  const BellFunctional functional = parse_functional(o.functional);
  std::ifstream in(o.state_file);
  if (!in) throw IoError("cannot open state file '" + o.state_file + "'");
  const StateFile sf = read_state(in);
  if (sf.dims.d1 < 2 || sf.dims.d2 < 2) throw std::invalid_argument("eval: subsystem dimensions must be at least 2");
  const BellMaximum m = maximize(functional, sf.rho, sf.dims, o.optimizer());

  std::cout << "functional = " << functional_name(functional) << '\n';
  std::cout << "value = " << fmt(m.best.value) << '\n';
  std::cout << "classical_bound = " << fmt(kClassicalBound) << '\n';
  print_settings(m.best);
  for (const auto& d : m.diagnostics) std::cerr << "warning: " << d << '\n';
  const bool violated = m.best.value > kClassicalBound + kViolationMargin;
  std::cout << "violation = " << (violated ? "yes" : "no") << '\n';
  return violated ? kExitViolation : kExitOk;
}

int run_plot_command(const Options& o) {
  if (o.plot.empty()) throw std::invalid_argument("plot: --plot is required");
  std::ifstream in(o.csv_in);
  if (!in) throw IoError("cannot open CSV '" + o.csv_in + "'");
  const SweepTable table = read_sweep_csv(in);
  write_plot(table, o.plot);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell functionals over tomographic probabilities of qudit states"};
  app.require_subcommand(1);
  Options o;

  auto add_state_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", o.family, "State family: werner or isotropic")->capture_default_str();
    cmd->add_option("--dim", o.dim, "Subsystem dimension d")->capture_default_str();
  };
  auto add_optimizer_flags = [&](CLI::App* cmd) {
    cmd->add_option("--functional", o.functional, "chsh or i3")->capture_default_str();
    cmd->add_option("--restarts", o.restarts, "Nelder-Mead restarts per partition pair")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed for random restart points")->capture_default_str();
  };

  CLI::App* sweep = app.add_subcommand("sweep", "Maximize a functional over a parameter sweep, write CSV");
  add_state_flags(sweep);
  add_optimizer_flags(sweep);
  sweep->add_option("--param-min", o.param_min, "First parameter value (default: family domain)");
  sweep->add_option("--param-max", o.param_max, "Last parameter value (default: family domain)");
  sweep->add_option("--steps", o.steps, "Number of equally spaced points")->capture_default_str();
  sweep->add_option("--out", o.out, "CSV output path ('-' or empty for stdout)");
  sweep->add_option("--plot", o.plot, "Optional SVG output path");

  CLI::App* threshold = app.add_subcommand("threshold", "Locate the violation threshold by bisection");
  add_state_flags(threshold);
  add_optimizer_flags(threshold);
  threshold->add_option("--param-min", o.param_min, "Bracket lower end");
  threshold->add_option("--param-max", o.param_max, "Bracket upper end");
  threshold->add_option("--tol", o.tol, "Parameter tolerance")->capture_default_str();
  threshold->add_option("--out", o.out, "Optional result file");

  CLI::App* eval = app.add_subcommand("eval", "Maximize a functional for a state read from file");
  add_optimizer_flags(eval);
  eval->add_option("--state-file", o.state_file, "Density matrix file")->required();

  CLI::App* plot = app.add_subcommand("plot", "Render a sweep CSV as a two-panel SVG");
  plot->add_option("csv", o.csv_in, "Sweep CSV")->required();
  plot->add_option("--plot", o.plot, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(o);
    if (threshold->parsed()) return run_threshold_command(o);
    if (eval->parsed()) return run_eval_command(o);
    if (plot->parsed()) return run_plot_command(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
