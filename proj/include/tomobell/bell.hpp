#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "tomobell/portrait.hpp"
#include "tomobell/states.hpp"
#include "tomobell/tomography.hpp"
#include "tomobell/wigner.hpp"

namespace tomobell {

/// Number of free angles in a BellSettings (theta, phi for each of a, b, c, d).
inline constexpr std::size_t kSettingAngles = 8;
using AngleVector = std::array<double, kSettingAngles>;

/// Four measurement directions. For CHSH, a and d belong to side 1 and b, c to
/// side 2. For I3, a and c belong to side 1 and b, d to side 2.
struct BellSettings {
  MeasurementDirection a;
  MeasurementDirection b;
  MeasurementDirection c;
  MeasurementDirection d;

  /// Angle layout (theta_a, phi_a, theta_b, phi_b, theta_c, phi_c, theta_d, phi_d);
  /// gamma is set to zero.
  static BellSettings from_angles(std::span<const double, kSettingAngles> x);
  AngleVector angles() const;
};

struct LocalSpins {
  SpinJ j1;
  SpinJ j2;
  static LocalSpins from_dims(BipartiteDims dims) {
    return {SpinJ::from_dimension(dims.d1), SpinJ::from_dimension(dims.d2)};
  }
};

/// Rows are outcomes (+,+), (+,-), (-,+), (-,-); columns are setting pairs
/// (a,b), (a,c), (d,b), (d,c). Every column is a probability distribution.
class StochasticMatrix4 {
 public:
  using Entries = std::array<std::array<double, 4>, 4>;

  explicit StochasticMatrix4(const Entries& entries);

  double operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }
  const Entries& entries() const { return m_; }

  /// Same matrix with the +/- labels swapped on side 1 and/or side 2.
  StochasticMatrix4 relabeled(bool flip_side1, bool flip_side2) const;

 private:
  Entries m_;
};

/// Sign kernel with rows (1,-1,-1,1) three times and (-1,1,1,-1).
inline constexpr std::array<std::array<int, 4>, 4> kChshKernel{{
    {1, -1, -1, 1},
    {1, -1, -1, 1},
    {1, -1, -1, 1},
    {-1, 1, 1, -1},
}};

enum class BellFunctional { chsh, i3 };

BellFunctional parse_functional(std::string_view name);
std::string_view functional_name(BellFunctional f);

/// Local-realist bound shared by both functionals.
inline constexpr double kClassicalBound = 2.0;

struct BellEvaluation {
  double value = 0.0;
  BellSettings settings;
  std::optional<std::pair<Partition, Partition>> partitions;
  BellFunctional functional = BellFunctional::chsh;
};

StochasticMatrix4 build_stochastic_matrix(const DensityMatrix& rho, LocalSpins spins, const BellSettings& s,
                                          const Partition& part1, const Partition& part2);

/// B = |tr(I M)|.
double chsh_value(const StochasticMatrix4& m);

/// |C(a,b) + C(a,c) + C(d,b) - C(d,c)| from portrait correlations.
double chsh_from_correlations(const DensityMatrix& rho, LocalSpins spins, const BellSettings& s,
                              const Partition& part1, const Partition& part2);

/// P[A = B + k] = sum_j omega((j + k) mod 3, j) on a 3x3 joint tomogram.
double equality_probability(const JointTomogram& jt, int k);

/// Two-qutrit I3 combination over spin-1 rotations at setting pairs
/// (a,b), (c,b), (c,d), (a,d).
double i3_value(const DensityMatrix& rho, const BellSettings& s);

namespace detail {
/// Rotation matrices for the four directions, reused across evaluations.
struct SettingRotations {
  ComplexMatrix a, b, c, d;
  SettingRotations(LocalSpins spins, const BellSettings& s, BellFunctional f);
};
double chsh_value_fast(const ComplexMatrix& rho, const SettingRotations& r, const Partition& part1,
                       const Partition& part2);
double i3_value_fast(const ComplexMatrix& rho, const SettingRotations& r);
}  // namespace detail

}  // namespace tomobell
