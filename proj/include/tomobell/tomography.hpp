#pragma once

#include <span>
#include <vector>

#include "tomobell/matrix.hpp"
#include "tomobell/states.hpp"
#include "tomobell/wigner.hpp"

namespace tomobell {

/// Probability distribution over the d outcomes of one measurement basis.
class Tomogram {
 public:
  /// Validates entries (>= -1e-12, <= 1 + 1e-12, sum 1 within 1e-10) and
  /// clamps roundoff into [0, 1].
  explicit Tomogram(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t m) const { return probs_[m]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Joint distribution over (m1, m2), stored row-major as d1 x d2.
class JointTomogram {
 public:
  JointTomogram(std::size_t d1, std::size_t d2, std::vector<double> probs);

  std::size_t rows() const { return d1_; }
  std::size_t cols() const { return d2_; }
  double operator()(std::size_t m1, std::size_t m2) const { return probs_[m1 * d2_ + m2]; }
  std::span<const double> probs() const { return probs_; }

  Tomogram marginal_first() const;
  Tomogram marginal_second() const;

 private:
  std::size_t d1_;
  std::size_t d2_;
  std::vector<double> probs_;
};

/// Values (+1, -1) assigned to outcome indices 0 and 1.
inline constexpr std::array<double, 2> kDichotomicValues{+1.0, -1.0};

/// omega(m, u) = <m| u^dagger rho u |m>.
Tomogram unitary_tomogram(const DensityMatrix& rho, const ComplexMatrix& u);

/// Spin tomogram with the spin-j rotation of `dir`; independent of dir.gamma().
Tomogram spin_tomogram(const DensityMatrix& rho, SpinJ j, const MeasurementDirection& dir);

/// omega(m1, m2) = <m1 m2| (u1 (x) u2)^dagger rho (u1 (x) u2) |m1 m2>.
JointTomogram local_unitary_tomogram(const DensityMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2);

JointTomogram local_spin_tomogram(const DensityMatrix& rho, SpinJ j1, SpinJ j2, const MeasurementDirection& dir1,
                                  const MeasurementDirection& dir2);

/// sum_m x_m omega(m).
double tomogram_expectation(const Tomogram& t, std::span<const double> values);

/// sum_{m1 m2} x1[m1] x2[m2] omega(m1, m2).
double correlation(const JointTomogram& jt, std::span<const double> x1, std::span<const double> x2);

namespace detail {
/// Diagonal of (u1 (x) u2)^dagger rho (u1 (x) u2) without validation of the
/// unitaries. Shared by the optimizer hot path.
std::vector<double> rotated_diagonal(const ComplexMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2);
}  // namespace detail

}  // namespace tomobell
