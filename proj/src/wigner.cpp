#include "tomobell/wigner.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tomobell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Closed formula, valid only when m >= |m'| (both exponents nonnegative).
double small_d_direct(int two_j, int two_mp, int two_m, double theta) {
  const int j_plus_m = (two_j + two_m) / 2;
  const int j_minus_m = (two_j - two_m) / 2;
  const int j_plus_mp = (two_j + two_mp) / 2;
  const int j_minus_mp = (two_j - two_mp) / 2;
  const int m_minus_mp = (two_m - two_mp) / 2;
  const int m_plus_mp = (two_m + two_mp) / 2;

  const double prefactor = std::sqrt(factorial(j_plus_m) * factorial(j_minus_m) /
                                     (factorial(j_plus_mp) * factorial(j_minus_mp)));
  const double half = 0.5 * theta;
  return prefactor * std::pow(std::sin(half), m_minus_mp) * std::pow(std::cos(half), m_plus_mp) *
         jacobi_polynomial(j_minus_m, m_minus_mp, m_plus_mp, std::cos(theta));
}

}  // namespace

SpinJ::SpinJ(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw std::invalid_argument("SpinJ: 2j must be nonnegative, got " + std::to_string(two_j));
}

SpinJ SpinJ::from_dimension(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("SpinJ: dimension must be positive");
  return SpinJ(static_cast<int>(dim) - 1);
}

MeasurementDirection::MeasurementDirection(double theta, double phi, double gamma) {
  double t = wrap_two_pi(theta);
  if (t > std::numbers::pi) {
    t = kTwoPi - t;
    phi += std::numbers::pi;
    gamma += std::numbers::pi;
  }
  theta_ = t;
  phi_ = wrap_two_pi(phi);
  gamma_ = wrap_two_pi(gamma);
}

std::array<double, 3> MeasurementDirection::unit_vector() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

double jacobi_polynomial(int n, double alpha, double beta, double x) {
  if (n < 0) throw std::invalid_argument("jacobi_polynomial: degree must be nonnegative");
  double prev = 1.0;
  if (n == 0) return prev;
  double curr = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
  const double ab = alpha + beta;
  for (int k = 2; k <= n; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (two_k_ab - 2.0);
    const double a2 = (two_k_ab - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (two_k_ab - 2.0) * (two_k_ab - 1.0) * two_k_ab;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * two_k_ab;
    const double next = ((a2 + a3 * x) * curr - a4 * prev) / a1;
    prev = curr;
    curr = next;
  }
  return curr;
}

double wigner_small_d(SpinJ j, int two_m_row, int two_m_col, double theta) {
  const int two_j = j.two_j();
  auto valid = [two_j](int two_m) {
    return two_m >= -two_j && two_m <= two_j && ((two_j - two_m) % 2 == 0);
  };
  if (!valid(two_m_row) || !valid(two_m_col)) {
    throw std::invalid_argument("wigner_small_d: m out of range for 2j=" + std::to_string(two_j) +
                                " (2m'=" + std::to_string(two_m_row) +
                                ", 2m=" + std::to_string(two_m_col) + ")");
  }
  const int mp = two_m_row;
  const int m = two_m_col;
  // Reduce to the region m >= |m'| through
  //   d_{m'm} = (-1)^{m-m'} d_{mm'} = d_{-m,-m'}.
  const bool odd = (((m - mp) / 2) % 2) != 0;
  const double sign = odd ? -1.0 : 1.0;
  if (m >= std::abs(mp)) return small_d_direct(two_j, mp, m, theta);
  if (mp >= std::abs(m)) return sign * small_d_direct(two_j, m, mp, theta);
  if (-m >= std::abs(mp)) return sign * small_d_direct(two_j, -mp, -m, theta);
  return small_d_direct(two_j, -m, -mp, theta);
}

ComplexMatrix wigner_small_d_matrix(SpinJ j, double theta) {
  const std::size_t n = j.dimension();
  ComplexMatrix d(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d(r, c) = wigner_small_d(j, j.two_m_at(r), j.two_m_at(c), theta);
  return d;
}

ComplexMatrix wigner_D(SpinJ j, const MeasurementDirection& dir) {
  const std::size_t n = j.dimension();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const double mp = 0.5 * j.two_m_at(r);
    const Complex left = std::polar(1.0, -mp * dir.phi());
    for (std::size_t c = 0; c < n; ++c) {
      const double m = 0.5 * j.two_m_at(c);
      const Complex right = std::polar(1.0, -m * dir.gamma());
      out(r, c) = left * wigner_small_d(j, j.two_m_at(r), j.two_m_at(c), dir.theta()) * right;
    }
  }
  return out;
}

ComplexMatrix spin_operator_y(SpinJ j) {
  const std::size_t n = j.dimension();
  const double jj = j.value();
  ComplexMatrix raise(n, n);
  // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; m+1 sits one row above m.
  for (std::size_t c = 1; c < n; ++c) {
    const double m = 0.5 * j.two_m_at(c);
    raise(c - 1, c) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
  }
  return (raise - adjoint(raise)) * Complex{0.0, -0.5};
}

ComplexMatrix spin_operator_z(SpinJ j) {
  const std::size_t n = j.dimension();
  ComplexMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i) z(i, i) = 0.5 * j.two_m_at(i);
  return z;
}

}  // namespace tomobell
