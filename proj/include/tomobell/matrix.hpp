#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tomobell {

using Complex = std::complex<double>;

/// Numerical tolerances shared by every module.
struct Tolerances {
  double hermitian = 1e-10;     // max |H - H^dagger|
  double unitary = 1e-10;       // max |U^dagger U - I|
  double trace = 1e-10;         // |tr rho - 1|
  double psd = 1e-10;           // smallest admissible eigenvalue is -psd
  double jacobi_offdiag = 1e-13;
  double probability_clamp = 1e-12;
  double normalization = 1e-10;
  double exp_series_term = 1e-16;
};

inline constexpr Tolerances kTolerances{};

/// Dense row-major complex matrix. Sizes here never exceed a few dozen rows.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  /// Column vector with a single 1 at `index`.
  static ComplexMatrix basis_vector(std::size_t n, std::size_t index);
  static ComplexMatrix column(std::span<const Complex> v);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product; the first factor carries the slow (most significant) index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);

/// Largest absolute entry of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& h, double tol = kTolerances.hermitian);
bool is_unitary(const ComplexMatrix& u, double tol = kTolerances.unitary);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, same order as values
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Exponential of an anti-Hermitian matrix by scaling and squaring of the
/// Taylor series. Used as an independent oracle in tests.
ComplexMatrix exp_antihermitian(const ComplexMatrix& a);

}  // namespace tomobell
