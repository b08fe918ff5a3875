#include "tomobell/optimizer.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

namespace tomobell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSignMargin = 1e-6;
constexpr std::size_t kRefineFactor = 4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from draw `k` of stream `stream`.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t k) {
  const std::uint64_t bits = splitmix64(splitmix64(seed ^ splitmix64(stream)) + k);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct RestartOutcome {
  bool ok = false;
  double value = -std::numeric_limits<double>::infinity();
  AngleVector angles{};
  std::size_t evaluations = 0;
  std::string diagnostic;
};

// Higher value wins; exact ties go to the lexicographically smaller angles.
bool better(const RestartOutcome& a, const RestartOutcome& b) {
  if (!a.ok) return false;
  if (!b.ok) return true;
  if (a.value != b.value) return a.value > b.value;
  return a.angles < b.angles;
}

struct PartitionPair {
  std::optional<Partition> p1;
  std::optional<Partition> p2;
};

BellMaximum run_multistart(BellFunctional functional, const DensityMatrix& rho, LocalSpins spins,
                           const std::vector<PartitionPair>& pairs, const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t restarts = cfg.restarts;
  const std::size_t jobs = pairs.size() * restarts;
  std::vector<RestartOutcome> outcomes(jobs);
  const ComplexMatrix& m = rho.matrix();

  detail::parallel_for(jobs, detail::worker_count(cfg.threads, jobs), [&](std::size_t job) {
    const PartitionPair& pair = pairs[job / restarts];
    const AngleVector x0 = restart_start_point(job % restarts, cfg, functional);
    std::size_t calls = 0;
    const Objective objective = [&](std::span<const double> x) {
      ++calls;
      const BellSettings s = BellSettings::from_angles(std::span<const double, kSettingAngles>(x.data(), kSettingAngles));
      const detail::SettingRotations r(spins, s, functional);
      return functional == BellFunctional::chsh ? detail::chsh_value_fast(m, r, *pair.p1, *pair.p2)
                                                : detail::i3_value_fast(m, r);
    };
    RestartOutcome& out = outcomes[job];
    try {
      const NelderMeadResult nm = nelder_mead(objective, x0, cfg, wrap_angle_pairs);
      out.ok = true;
      out.value = nm.value;
      std::copy(nm.x.begin(), nm.x.end(), out.angles.begin());
    } catch (const NonFiniteObjective& e) {
      std::ostringstream os;
      os << "restart " << job % restarts << " (partition pair " << job / restarts << ") aborted: " << e.what();
      out.diagnostic = os.str();
    }
    out.evaluations = calls;
  });

  BellMaximum result;
  result.best.functional = functional;
  result.per_restart_values.reserve(jobs);
  std::size_t best_job = jobs;
  for (std::size_t job = 0; job < jobs; ++job) {
    const RestartOutcome& o = outcomes[job];
    result.evaluations_used += o.evaluations;
    result.per_restart_values.push_back(o.value);
    if (!o.diagnostic.empty()) result.diagnostics.push_back(o.diagnostic);
    if (best_job == jobs ? o.ok : better(o, outcomes[best_job])) best_job = job;
  }
  if (best_job == jobs) throw std::runtime_error("maximization failed: every restart produced a non-finite value");

  const RestartOutcome& winner = outcomes[best_job];
  result.best.value = winner.value;
  result.best.settings = BellSettings::from_angles(winner.angles);
  const PartitionPair& pair = pairs[best_job / restarts];
  if (pair.p1 && pair.p2) result.best.partitions.emplace(*pair.p1, *pair.p2);
  return result;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts == 0) throw std::invalid_argument("optimizer: restarts must be positive");
  if (!(simplex_tolerance > 0.0)) throw std::invalid_argument("optimizer: simplex tolerance must be positive");
  if (max_iterations == 0) throw std::invalid_argument("optimizer: max_iterations must be positive");
  if (coarse_grid_per_angle == 0) throw std::invalid_argument("optimizer: coarse grid size must be positive");
  if (!(initial_step > 0.0)) throw std::invalid_argument("optimizer: initial step must be positive");
}

void wrap_angle_pairs(std::span<double> x) {
  for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
    const MeasurementDirection dir(x[i], x[i + 1]);
    x[i] = dir.theta();
    x[i + 1] = dir.phi();
  }
}

NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> x0, const OptimizerConfig& cfg,
                             const Wrap& wrap) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");

  NelderMeadResult result;
  std::vector<double> scratch(n);
  // Internally minimizes the negated objective.
  auto cost = [&](const std::vector<double>& x) {
    std::copy(x.begin(), x.end(), scratch.begin());
    if (wrap) wrap(scratch);
    ++result.evaluations;
    const double v = objective(scratch);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective returned " << v << " at evaluation " << result.evaluations;
      throw NonFiniteObjective(os.str());
    }
    return -v;
  };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += cfg.initial_step;
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = cost(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> xr(n);
  std::vector<double> xe(n);
  std::vector<double> xc(n);

  auto along = [&](std::vector<double>& out, const std::vector<double>& from, double t) {
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (from[k] - centroid[k]);
  };

  for (; result.iterations < cfg.max_iterations; ++result.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];
    if (f[worst] - f[best] < cfg.simplex_tolerance) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[order[i]][k];
    for (double& c : centroid) c /= static_cast<double>(n);

    along(xr, simplex[worst], -kReflect);
    const double fr = cost(xr);
    if (fr < f[best]) {
      along(xe, simplex[worst], -kExpand);
      const double fe = cost(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        f[worst] = fe;
      } else {
        simplex[worst] = xr;
        f[worst] = fr;
      }
      continue;
    }
    if (fr < f[second_worst]) {
      simplex[worst] = xr;
      f[worst] = fr;
      continue;
    }
    if (fr < f[worst]) {
      along(xc, xr, kContract);
      const double fc = cost(xc);
      if (fc <= fr) {
        simplex[worst] = xc;
        f[worst] = fc;
        continue;
      }
    } else {
      along(xc, simplex[worst], kContract);
      const double fc = cost(xc);
      if (fc < f[worst]) {
        simplex[worst] = xc;
        f[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + kShrink * (simplex[i][k] - simplex[best][k]);
      f[i] = cost(simplex[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  result.x = simplex[best];
  if (wrap) wrap(result.x);
  result.value = -f[best];
  return result;
}

AngleVector restart_start_point(std::size_t index, const OptimizerConfig& cfg, BellFunctional functional) {
  const std::size_t g = cfg.coarse_grid_per_angle;
  AngleVector x{};
  if (index < g * g) {
    // Lattice over the polar angles of a (side 1) and b (side 2), partners a
    // quarter turn away, azimuths zero.
    const double theta1 = kPi * static_cast<double>(index / g) / static_cast<double>(g);
    const double theta2 = kPi * (static_cast<double>(index % g) + 0.5) / static_cast<double>(g);
    const double partner1 = theta1 + 0.5 * kPi;
    const double partner2 = theta2 - 0.5 * kPi;
    x[0] = theta1;
    x[2] = theta2;
    if (functional == BellFunctional::chsh) {
      x[4] = partner2;  // c on side 2
      x[6] = partner1;  // d on side 1
    } else {
      x[4] = partner1;  // c on side 1
      x[6] = partner2;  // d on side 2
    }
    return x;
  }
  for (std::size_t k = 0; k < kSettingAngles; k += 2) {
    x[k] = kPi * counter_uniform(cfg.seed, index, k);
    x[k + 1] = 2.0 * kPi * counter_uniform(cfg.seed, index, k + 1);
  }
  return x;
}

BellMaximum maximize_chsh(const DensityMatrix& rho, BipartiteDims dims, const OptimizerConfig& cfg) {
  if (dims.total() != rho.dim()) throw std::invalid_argument("maximize_chsh: dims do not match the state");
  const LocalSpins spins = LocalSpins::from_dims(dims);
  std::vector<PartitionPair> pairs;
  for (const auto& p1 : enumerate_bipartitions(dims.d1))
    for (const auto& p2 : enumerate_bipartitions(dims.d2)) pairs.push_back({p1, p2});
  return run_multistart(BellFunctional::chsh, rho, spins, pairs, cfg);
}

BellMaximum maximize_i3(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  if (rho.dim() != 9) throw std::invalid_argument("maximize_i3: state must be two-qutrit (9x9)");
  return run_multistart(BellFunctional::i3, rho, LocalSpins{SpinJ(2), SpinJ(2)}, {PartitionPair{}}, cfg);
}

BellMaximum maximize(BellFunctional functional, const DensityMatrix& rho, BipartiteDims dims,
                     const OptimizerConfig& cfg) {
  if (functional == BellFunctional::i3) {
    if (dims.d1 != 3 || dims.d2 != 3) throw std::invalid_argument("i3 requires two qutrits (dim 3)");
    return maximize_i3(rho, cfg);
  }
  return maximize_chsh(rho, dims, cfg);
}

namespace {

std::string bracket_message(double lo, double hi, double vlo, double vhi) {
  std::ostringstream os;
  os.precision(10);
  os << "bracket [" << lo << ", " << hi << "] does not straddle the classical bound " << kClassicalBound
     << ": maximum at " << lo << " is " << vlo << ", maximum at " << hi << " is " << vhi;
  return os.str();
}

}  // namespace

BracketError::BracketError(double lo, double hi, double value_lo, double value_hi)
    : std::invalid_argument(bracket_message(lo, hi, value_lo, value_hi)), value_lo_(value_lo), value_hi_(value_hi) {}

ThresholdResult find_threshold(StateFamily family, std::size_t d, BellFunctional functional,
                               const OptimizerConfig& cfg, std::pair<double, double> bracket, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_threshold: tolerance must be positive");
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw std::invalid_argument("find_threshold: bracket must satisfy lo < hi");
  const BipartiteDims dims{d, d};

  struct Probe {
    bool violated;
    double value;
  };
  auto probe = [&](double param) {
    const DensityMatrix rho = family_state(family, d, param);
    double value = maximize(functional, rho, dims, cfg).best.value;
    if (std::abs(value - kClassicalBound) <= kSignMargin) {
      OptimizerConfig refined = cfg;
      refined.restarts *= kRefineFactor;
      value = maximize(functional, rho, dims, refined).best.value;
    }
    return Probe{value > kClassicalBound, value};
  };

  const Probe at_lo = probe(lo);
  const Probe at_hi = probe(hi);
  if (at_lo.violated == at_hi.violated) throw BracketError(lo, hi, at_lo.value, at_hi.value);

  ThresholdResult result;
  const bool lo_violated = at_lo.violated;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid).violated == lo_violated) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++result.steps;
  }
  result.lo = lo;
  result.hi = hi;
  result.param = 0.5 * (lo + hi);
  return result;
}

}  // namespace tomobell
