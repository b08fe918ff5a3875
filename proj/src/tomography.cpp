#include "tomobell/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tomobell {

namespace {

void validate_probabilities(std::vector<double>& probs, const char* what) {
  const auto& tol = kTolerances;
  if (probs.empty()) throw std::invalid_argument(std::string(what) + ": empty distribution");
  double sum = 0.0;
  for (double& p : probs) {
    if (!std::isfinite(p) || p < -tol.probability_clamp || p > 1.0 + tol.probability_clamp) {
      throw std::invalid_argument(std::string(what) + ": entry outside [0, 1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.normalization) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(sum));
  }
  for (double& p : probs) p = std::clamp(p, 0.0, 1.0);
}

}  // namespace

Tomogram::Tomogram(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_probabilities(probs_, "Tomogram");
}

JointTomogram::JointTomogram(std::size_t d1, std::size_t d2, std::vector<double> probs)
    : d1_(d1), d2_(d2), probs_(std::move(probs)) {
  if (probs_.size() != d1_ * d2_) throw std::invalid_argument("JointTomogram: size does not match d1 x d2");
  validate_probabilities(probs_, "JointTomogram");
}

Tomogram JointTomogram::marginal_first() const {
  std::vector<double> m(d1_, 0.0);
  for (std::size_t i = 0; i < d1_; ++i)
    for (std::size_t k = 0; k < d2_; ++k) m[i] += (*this)(i, k);
  return Tomogram(std::move(m));
}

Tomogram JointTomogram::marginal_second() const {
  std::vector<double> m(d2_, 0.0);
  for (std::size_t i = 0; i < d1_; ++i)
    for (std::size_t k = 0; k < d2_; ++k) m[k] += (*this)(i, k);
  return Tomogram(std::move(m));
}

namespace detail {

std::vector<double> rotated_diagonal(const ComplexMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2) {
  const ComplexMatrix u = tensor(u1, u2);
  const std::size_t n = u.rows();
  std::vector<double> out(n, 0.0);
  // (u^dagger rho u)_kk = sum_i conj(u_ik) (rho u)_ik
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const Complex ui = u(i, k);
      if (ui == Complex{}) continue;
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) row += rho(i, j) * u(j, k);
      acc += std::conj(ui) * row;
    }
    out[k] = acc.real();
  }
  return out;
}

}  // namespace detail

Tomogram unitary_tomogram(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim()) throw std::invalid_argument("unitary_tomogram: dimension mismatch");
  if (!is_unitary(u)) throw std::invalid_argument("unitary_tomogram: u is not unitary");
  const ComplexMatrix one = ComplexMatrix::identity(1);
  return Tomogram(detail::rotated_diagonal(rho.matrix(), u, one));
}

Tomogram spin_tomogram(const DensityMatrix& rho, SpinJ j, const MeasurementDirection& dir) {
  if (j.dimension() != rho.dim()) {
    throw std::invalid_argument("spin_tomogram: state dimension " + std::to_string(rho.dim()) +
                                " does not match 2j+1 = " + std::to_string(j.dimension()));
  }
  const ComplexMatrix one = ComplexMatrix::identity(1);
  return Tomogram(detail::rotated_diagonal(rho.matrix(), wigner_D(j, dir), one));
}

JointTomogram local_unitary_tomogram(const DensityMatrix& rho, const ComplexMatrix& u1, const ComplexMatrix& u2) {
  if (u1.rows() * u2.rows() != rho.dim()) throw std::invalid_argument("local_unitary_tomogram: dimension mismatch");
  if (!is_unitary(u1) || !is_unitary(u2)) throw std::invalid_argument("local_unitary_tomogram: non-unitary factor");
  return JointTomogram(u1.rows(), u2.rows(), detail::rotated_diagonal(rho.matrix(), u1, u2));
}

JointTomogram local_spin_tomogram(const DensityMatrix& rho, SpinJ j1, SpinJ j2, const MeasurementDirection& dir1,
                                  const MeasurementDirection& dir2) {
  if (j1.dimension() * j2.dimension() != rho.dim()) {
    throw std::invalid_argument("local_spin_tomogram: state dimension " + std::to_string(rho.dim()) +
                                " does not match (2j1+1)(2j2+1)");
  }
  return JointTomogram(j1.dimension(), j2.dimension(),
                       detail::rotated_diagonal(rho.matrix(), wigner_D(j1, dir1), wigner_D(j2, dir2)));
}

double tomogram_expectation(const Tomogram& t, std::span<const double> values) {
  if (values.size() != t.size()) throw std::invalid_argument("tomogram_expectation: length mismatch");
  double s = 0.0;
  for (std::size_t m = 0; m < t.size(); ++m) s += values[m] * t[m];
  return s;
}

double correlation(const JointTomogram& jt, std::span<const double> x1, std::span<const double> x2) {
  if (x1.size() != jt.rows() || x2.size() != jt.cols()) throw std::invalid_argument("correlation: shape mismatch");
  double s = 0.0;
  for (std::size_t a = 0; a < jt.rows(); ++a)
    for (std::size_t b = 0; b < jt.cols(); ++b) s += x1[a] * x2[b] * jt(a, b);
  return s;
}

}  // namespace tomobell
