#include "tomobell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tomobell {

namespace {

constexpr std::size_t kQutrit = 3;

void require_partitions(LocalSpins spins, const Partition& part1, const Partition& part2) {
  if (part1.dimension() != spins.j1.dimension() || part2.dimension() != spins.j2.dimension()) {
    throw std::invalid_argument("partition dimensions do not match the subsystem dimensions");
  }
}

void require_state(const DensityMatrix& rho, LocalSpins spins) {
  if (rho.dim() != spins.j1.dimension() * spins.j2.dimension()) {
    throw std::invalid_argument("state dimension " + std::to_string(rho.dim()) +
                                " does not match the product of subsystem dimensions");
  }
}

// One column of M: 2x2 portrait of the joint tomogram at (u1, u2), flattened.
std::array<double, 4> portrait_column(const ComplexMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2,
                                      const Partition& part1, const Partition& part2) {
  const auto probs = detail::rotated_diagonal(rho, u1, u2);
  const std::size_t d2 = u2.rows();
  std::array<double, 4> col{};
  for (std::size_t m1 = 0; m1 < u1.rows(); ++m1)
    for (std::size_t m2 = 0; m2 < d2; ++m2)
      col[static_cast<std::size_t>(2 * part1.block_of(m1) + part2.block_of(m2))] += probs[m1 * d2 + m2];
  return col;
}

StochasticMatrix4 stochastic_from_rotations(const ComplexMatrix& rho, const detail::SettingRotations& r,
                                            const Partition& part1, const Partition& part2) {
  const std::array<std::array<double, 4>, 4> columns{
      portrait_column(rho, r.a, r.b, part1, part2),
      portrait_column(rho, r.a, r.c, part1, part2),
      portrait_column(rho, r.d, r.b, part1, part2),
      portrait_column(rho, r.d, r.c, part1, part2),
  };
  StochasticMatrix4::Entries e{};
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col) e[row][col] = columns[col][row];
  return StochasticMatrix4(e);
}

double equality_probability_raw(std::span<const double> probs, int k) {
  const int shift = ((k % 3) + 3) % 3;
  double s = 0.0;
  for (std::size_t j = 0; j < kQutrit; ++j) s += probs[((j + static_cast<std::size_t>(shift)) % kQutrit) * kQutrit + j];
  return s;
}

double i3_from_tomograms(std::span<const double> ab, std::span<const double> cb, std::span<const double> cd,
                         std::span<const double> ad) {
  const double plus = equality_probability_raw(ab, 0) + equality_probability_raw(cb, -1) +
                      equality_probability_raw(cd, 0) + equality_probability_raw(ad, 0);
  const double minus = equality_probability_raw(ab, -1) + equality_probability_raw(cb, 0) +
                       equality_probability_raw(cd, -1) + equality_probability_raw(ad, 1);
  return plus - minus;
}

}  // namespace

BellSettings BellSettings::from_angles(std::span<const double, kSettingAngles> x) {
  return {MeasurementDirection(x[0], x[1]), MeasurementDirection(x[2], x[3]), MeasurementDirection(x[4], x[5]),
          MeasurementDirection(x[6], x[7])};
}

AngleVector BellSettings::angles() const {
  return {a.theta(), a.phi(), b.theta(), b.phi(), c.theta(), c.phi(), d.theta(), d.phi()};
}

StochasticMatrix4::StochasticMatrix4(const Entries& entries) : m_(entries) {
  const auto& tol = kTolerances;
  for (std::size_t col = 0; col < 4; ++col) {
    double sum = 0.0;
    for (std::size_t row = 0; row < 4; ++row) {
      const double x = m_[row][col];
      if (!std::isfinite(x) || x < -tol.probability_clamp) {
        throw std::invalid_argument("StochasticMatrix4: negative or non-finite entry in column " + std::to_string(col));
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol.normalization) {
      throw std::invalid_argument("StochasticMatrix4: column " + std::to_string(col) + " sums to " + std::to_string(sum));
    }
  }
  for (auto& row : m_)
    for (double& x : row) x = std::max(x, 0.0);
}

StochasticMatrix4 StochasticMatrix4::relabeled(bool flip_side1, bool flip_side2) const {
  Entries e{};
  for (std::size_t row = 0; row < 4; ++row) {
    std::size_t s1 = row / 2;
    std::size_t s2 = row % 2;
    if (flip_side1) s1 ^= 1U;
    if (flip_side2) s2 ^= 1U;
    e[2 * s1 + s2] = m_[row];
  }
  return StochasticMatrix4(e);
}

BellFunctional parse_functional(std::string_view name) {
  if (name == "chsh") return BellFunctional::chsh;
  if (name == "i3") return BellFunctional::i3;
  throw std::invalid_argument("unknown functional '" + std::string(name) + "' (expected chsh or i3)");
}

std::string_view functional_name(BellFunctional f) { return f == BellFunctional::chsh ? "chsh" : "i3"; }

namespace detail {

SettingRotations::SettingRotations(LocalSpins spins, const BellSettings& s, BellFunctional f)
    : a(wigner_D(spins.j1, s.a)),
      b(wigner_D(spins.j2, s.b)),
      c(wigner_D(f == BellFunctional::chsh ? spins.j2 : spins.j1, s.c)),
      d(wigner_D(f == BellFunctional::chsh ? spins.j1 : spins.j2, s.d)) {}

double chsh_value_fast(const ComplexMatrix& rho, const SettingRotations& r, const Partition& part1,
                       const Partition& part2) {
  return chsh_value(stochastic_from_rotations(rho, r, part1, part2));
}

double i3_value_fast(const ComplexMatrix& rho, const SettingRotations& r) {
  const auto ab = rotated_diagonal(rho, r.a, r.b);
  const auto cb = rotated_diagonal(rho, r.c, r.b);
  const auto cd = rotated_diagonal(rho, r.c, r.d);
  const auto ad = rotated_diagonal(rho, r.a, r.d);
  return i3_from_tomograms(ab, cb, cd, ad);
}

}  // namespace detail

StochasticMatrix4 build_stochastic_matrix(const DensityMatrix& rho, LocalSpins spins, const BellSettings& s,
                                          const Partition& part1, const Partition& part2) {
  require_state(rho, spins);
  require_partitions(spins, part1, part2);
  const detail::SettingRotations r(spins, s, BellFunctional::chsh);
  return stochastic_from_rotations(rho.matrix(), r, part1, part2);
}

double chsh_value(const StochasticMatrix4& m) {
  // tr(I M) = sum_{i,k} I[i][k] M[k][i]
  double t = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) t += kChshKernel[i][k] * m(k, i);
  return std::abs(t);
}

double chsh_from_correlations(const DensityMatrix& rho, LocalSpins spins, const BellSettings& s,
                              const Partition& part1, const Partition& part2) {
  require_state(rho, spins);
  require_partitions(spins, part1, part2);
  const auto x1 = part1.values();
  const auto x2 = part2.values();
  auto corr = [&](const MeasurementDirection& u, const MeasurementDirection& v) {
    return correlation(local_spin_tomogram(rho, spins.j1, spins.j2, u, v), x1, x2);
  };
  return std::abs(corr(s.a, s.b) + corr(s.a, s.c) + corr(s.d, s.b) - corr(s.d, s.c));
}

double equality_probability(const JointTomogram& jt, int k) {
  if (jt.rows() != kQutrit || jt.cols() != kQutrit) {
    throw std::invalid_argument("equality_probability: joint tomogram must be 3x3");
  }
  return equality_probability_raw(jt.probs(), k);
}

double i3_value(const DensityMatrix& rho, const BellSettings& s) {
  if (rho.dim() != kQutrit * kQutrit) throw std::invalid_argument("i3_value: state must be two-qutrit (9x9)");
  const SpinJ one(2);
  const auto ab = local_spin_tomogram(rho, one, one, s.a, s.b);
  const auto cb = local_spin_tomogram(rho, one, one, s.c, s.b);
  const auto cd = local_spin_tomogram(rho, one, one, s.c, s.d);
  const auto ad = local_spin_tomogram(rho, one, one, s.a, s.d);
  return i3_from_tomograms(ab.probs(), cb.probs(), cd.probs(), ad.probs());
}

}  // namespace tomobell
