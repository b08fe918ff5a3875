#pragma once

// Test-only generators and independent oracles.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "tomobell/matrix.hpp"
#include "tomobell/states.hpp"

namespace tomobell::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& x : m.entries()) x = Complex{g(rng), g(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  return (a + adjoint(a)) * Complex{0.5, 0.0};
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix h = random_hermitian(rng, n);
  return exp_antihermitian(h * Complex{0.0, 1.0});
}

/// Full-rank random state A A^dagger / tr.
inline DensityMatrix random_state(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix r = a * adjoint(a);
  const double t = trace(r).real();
  return DensityMatrix(r * Complex{1.0 / t, 0.0});
}

inline DensityMatrix random_pure_state(std::mt19937_64& rng, std::size_t n) {
  ComplexMatrix v = random_matrix(rng, n, 1);
  double norm = 0.0;
  for (const auto& x : v.entries()) norm += std::norm(x);
  return DensityMatrix::pure(v * Complex{1.0 / std::sqrt(norm), 0.0});
}

inline const std::array<ComplexMatrix, 3>& pauli() {
  static const std::array<ComplexMatrix, 3> p{
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  return p;
}

/// Two-qubit CHSH maximum over all spin directions from the correlation
/// tensor T_ij = tr(rho sigma_i (x) sigma_j): 2 sqrt(u1 + u2) with u1, u2 the
/// two largest eigenvalues of T^T T.
inline double horodecki_chsh_max(const DensityMatrix& rho) {
  ComplexMatrix t(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = trace(rho.matrix() * tensor(pauli()[i], pauli()[j])).real();
  ComplexMatrix ttt = adjoint(t) * t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ttt(i, j) = ttt(i, j).real();
  auto u = hermitian_eigenvalues(ttt);
  return 2.0 * std::sqrt(std::max(0.0, u[1] + u[2]));
}

/// Closed-form purity of the Werner state: W = a I + b V with V^2 = I,
/// tr I = d^2, tr V = d, so tr W^2 = (a^2 + b^2) d^2 + 2 a b d.
inline double werner_purity_closed_form(double d, double f) {
  const double n = d * d * d - d;
  const double a = (d - f) / n;
  const double b = (d * f - 1.0) / n;
  return (a * a + b * b) * d * d + 2.0 * a * b * d;
}

/// Closed-form purity of the isotropic state: S = alpha I + beta P with P a
/// rank-one projector, so tr S^2 = alpha^2 d^2 + 2 alpha beta + beta^2.
inline double isotropic_purity_closed_form(double d, double p) {
  const double n = d * d - 1.0;
  const double alpha = (1.0 - p) / n;
  const double beta = (p * d * d - 1.0) / n;
  return alpha * alpha * d * d + 2.0 * alpha * beta + beta * beta;
}

}  // namespace tomobell::testing
