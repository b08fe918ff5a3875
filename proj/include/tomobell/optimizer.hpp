#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tomobell/bell.hpp"
#include "tomobell/states.hpp"

namespace tomobell {

struct OptimizerConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 1;
  double simplex_tolerance = 1e-8;
  std::size_t max_iterations = 2000;
  std::size_t coarse_grid_per_angle = 4;
  /// Edge length of the initial simplex, radians.
  double initial_step = 0.5;
  /// Worker threads for independent restarts; 0 means hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

/// Thrown out of an objective call that produced NaN or infinity.
class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NelderMeadResult {
  std::vector<double> x;  // wrapped
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;
using Wrap = std::function<void(std::span<double>)>;

/// Local maximization of `objective` from `x0` (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Stops once the spread of simplex values drops
/// below cfg.simplex_tolerance or after cfg.max_iterations iterations. `wrap`,
/// if set, is applied to a copy of every point before it is evaluated; the
/// simplex itself stays in unwrapped coordinates.
NelderMeadResult nelder_mead(const Objective& objective, std::span<const double> x0, const OptimizerConfig& cfg,
                             const Wrap& wrap = {});

/// Brings (theta, phi) pairs onto theta in [0, pi], phi in [0, 2 pi).
void wrap_angle_pairs(std::span<double> x);

struct BellMaximum {
  BellEvaluation best;
  std::size_t evaluations_used = 0;
  /// One entry per (partition pair, restart), partition-pair major.
  std::vector<double> per_restart_values;
  std::vector<std::string> diagnostics;
};

/// Deterministic initial point for restart `index`: a coarse angle lattice
/// first, then counter-seeded pseudo-random points.
AngleVector restart_start_point(std::size_t index, const OptimizerConfig& cfg, BellFunctional functional);

BellMaximum maximize_chsh(const DensityMatrix& rho, BipartiteDims dims, const OptimizerConfig& cfg);
BellMaximum maximize_i3(const DensityMatrix& rho, const OptimizerConfig& cfg);
BellMaximum maximize(BellFunctional functional, const DensityMatrix& rho, BipartiteDims dims,
                     const OptimizerConfig& cfg);

/// The bracket does not straddle the classical bound.
class BracketError : public std::invalid_argument {
 public:
  BracketError(double lo, double hi, double value_lo, double value_hi);
  double value_lo() const { return value_lo_; }
  double value_hi() const { return value_hi_; }

 private:
  double value_lo_;
  double value_hi_;
};

struct ThresholdResult {
  double param = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
};

/// Bisection on the family parameter for the point where the maximized
/// functional crosses the classical bound. Exactly one bracket endpoint must
/// violate the bound; either orientation is accepted.
ThresholdResult find_threshold(StateFamily family, std::size_t d, BellFunctional functional,
                               const OptimizerConfig& cfg, std::pair<double, double> bracket, double tol = 1e-4);

}  // namespace tomobell
