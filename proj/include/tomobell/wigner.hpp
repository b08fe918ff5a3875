#pragma once

#include <array>

#include "tomobell/matrix.hpp"

namespace tomobell {

/// Spin quantum number stored as 2j so half-integers stay exact.
class SpinJ {
 public:
  explicit SpinJ(int two_j);
  /// Spin whose multiplet has `dim` states (dim = 2j + 1).
  static SpinJ from_dimension(std::size_t dim);

  int two_j() const { return two_j_; }
  double value() const { return 0.5 * two_j_; }
  std::size_t dimension() const { return static_cast<std::size_t>(two_j_) + 1; }
  /// 2m of the basis state at `index`; index 0 is m = +j.
  int two_m_at(std::size_t index) const { return two_j_ - 2 * static_cast<int>(index); }

  friend bool operator==(SpinJ, SpinJ) = default;

 private:
  int two_j_;
};

/// Euler angles of a rotated measurement basis. On construction theta is
/// brought into [0, pi] (mapping (theta, phi, gamma) to the equivalent
/// rotation (2pi - theta, phi + pi, gamma + pi) when needed) and phi, gamma
/// are wrapped into [0, 2pi).
class MeasurementDirection {
 public:
  MeasurementDirection() = default;
  MeasurementDirection(double theta, double phi, double gamma = 0.0);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double gamma() const { return gamma_; }

  /// Bloch-sphere unit vector (sin t cos p, sin t sin p, cos t).
  std::array<double, 3> unit_vector() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
  double gamma_ = 0.0;
};

/// P_n^{(alpha,beta)}(x) via the three-term recurrence.
double jacobi_polynomial(int n, double alpha, double beta, double x);

/// d^j_{m' m}(theta), with m' = two_m_row/2 and m = two_m_col/2.
double wigner_small_d(SpinJ j, int two_m_row, int two_m_col, double theta);

/// Real (2j+1)x(2j+1) matrix of d^j(theta) in descending-m order.
ComplexMatrix wigner_small_d_matrix(SpinJ j, double theta);

/// <m'|D|m> = exp(-i m' phi) d^j_{m'm}(theta) exp(-i m gamma), descending-m order.
ComplexMatrix wigner_D(SpinJ j, const MeasurementDirection& dir);

/// J_y = (J+ - J-)/(2i) in descending-m order.
ComplexMatrix spin_operator_y(SpinJ j);
/// J_z = diag(j, j-1, ..., -j).
ComplexMatrix spin_operator_z(SpinJ j);

}  // namespace tomobell
