#include "tomobell/states.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tomobell {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const auto& tol = kTolerances;
  if (!m_.is_square() || m_.rows() == 0) {
    throw InvariantError("dimension", "matrix must be square and nonempty");
  }
  const double herm = max_abs_diff(m_, adjoint(m_));
  if (herm > tol.hermitian) throw InvariantError("Hermitian", "max |rho - rho^dagger| = " + fmt(herm));
  const Complex t = trace(m_);
  if (std::abs(t - Complex{1.0, 0.0}) > tol.trace) {
    throw InvariantError("unit trace", "trace = " + fmt(t.real()) + (t.imag() != 0.0 ? "+" + fmt(t.imag()) + "i" : ""));
  }
  const double lo = hermitian_eigenvalues(m_).front();
  if (lo < -tol.psd) throw InvariantError("positive semidefinite", "smallest eigenvalue = " + fmt(lo));
}

DensityMatrix DensityMatrix::mixture(const std::vector<double>& weights, const std::vector<DensityMatrix>& states) {
  if (weights.size() != states.size() || states.empty()) {
    throw std::invalid_argument("mixture: weights and states must be nonempty and of equal length");
  }
  ComplexMatrix acc(states.front().dim(), states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] < 0.0) throw std::invalid_argument("mixture: negative weight");
    acc += states[k].matrix() * Complex{weights[k], 0.0};
  }
  return DensityMatrix(std::move(acc));
}

DensityMatrix DensityMatrix::pure(const ComplexMatrix& v) {
  if (v.cols() != 1) throw std::invalid_argument("pure: expected a column vector");
  return DensityMatrix(v * adjoint(v));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim), 0.0});
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, int keep) {
  if (rho.rows() != dims.total() || !rho.is_square()) {
    throw std::invalid_argument("partial_trace: matrix does not match bipartite dimensions");
  }
  if (keep != 1 && keep != 2) throw std::invalid_argument("partial_trace: keep must be 1 or 2");
  const std::size_t d1 = dims.d1;
  const std::size_t d2 = dims.d2;
  if (keep == 1) {
    ComplexMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t k = 0; k < d2; ++k) out(i, j) += rho(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out(d2, d2);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < d1; ++k) out(i, j) += rho(k * d2 + i, k * d2 + j);
  return out;
}

StateFamily parse_family(std::string_view name) {
  if (name == "werner") return StateFamily::werner;
  if (name == "isotropic") return StateFamily::isotropic;
  throw std::invalid_argument("unknown state family '" + std::string(name) + "' (expected werner or isotropic)");
}

std::string_view family_name(StateFamily f) { return f == StateFamily::werner ? "werner" : "isotropic"; }

ComplexMatrix flip_operator(std::size_t d) {
  if (d < 2) throw std::invalid_argument("flip_operator: d must be at least 2");
  ComplexMatrix v(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
  return v;
}

ComplexMatrix max_entangled(std::size_t d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be at least 2");
  ComplexMatrix psi(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) psi(i * d + i, 0) = amp;
  return psi;
}

DensityMatrix werner_state(std::size_t d, double f) {
  if (!(f >= -1.0 && f <= 1.0)) throw std::invalid_argument("werner_state: parameter must lie in [-1, 1], got " + fmt(f));
  const double dd = static_cast<double>(d);
  const double norm = dd * dd * dd - dd;
  ComplexMatrix w = ComplexMatrix::identity(d * d) * Complex{(dd - f) / norm, 0.0};
  w += flip_operator(d) * Complex{(dd * f - 1.0) / norm, 0.0};
  return DensityMatrix(std::move(w));
}

DensityMatrix isotropic_state(std::size_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("isotropic_state: parameter must lie in [0, 1], got " + fmt(p));
  const double dd = static_cast<double>(d);
  const double norm = dd * dd - 1.0;
  const ComplexMatrix psi = max_entangled(d);
  ComplexMatrix s = ComplexMatrix::identity(d * d) * Complex{(1.0 - p) / norm, 0.0};
  s += (psi * adjoint(psi)) * Complex{(p * dd * dd - 1.0) / norm, 0.0};
  return DensityMatrix(std::move(s));
}

DensityMatrix family_state(StateFamily family, std::size_t d, double param) {
  return family == StateFamily::werner ? werner_state(d, param) : isotropic_state(d, param);
}

std::pair<double, double> family_domain(StateFamily family) {
  return family == StateFamily::werner ? std::pair{-1.0, 1.0} : std::pair{0.0, 1.0};
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& x : rho.matrix().entries()) s += std::norm(x);
  return s;
}

double separability_threshold(StateFamily family, std::size_t d) {
  if (d < 2) throw std::invalid_argument("separability_threshold: d must be at least 2");
  return family == StateFamily::werner ? 0.0 : 1.0 / static_cast<double>(d);
}

bool is_separable_parameter(StateFamily family, std::size_t d, double param) {
  const double t = separability_threshold(family, d);
  return family == StateFamily::werner ? param >= t : param <= t;
}

double isotropic_param_to_singlet_fraction(double p) {
  if (p < 1.0 / 9.0 || p > 1.0) {
    throw std::domain_error("isotropic_param_to_singlet_fraction: p must lie in [1/9, 1], got " + fmt(p));
  }
  return (9.0 * p - 1.0) / 8.0;
}

StateFile read_state(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw std::invalid_argument("state file: empty input");
  std::istringstream header(line);
  std::string tag;
  long long d1 = 0;
  long long d2 = 0;
  if (!(header >> tag >> d1 >> d2) || tag != "dim" || d1 <= 0 || d2 <= 0) {
    throw std::invalid_argument("state file line " + std::to_string(line_no) + ": expected 'dim <d1> <d2>'");
  }
  const BipartiteDims dims{static_cast<std::size_t>(d1), static_cast<std::size_t>(d2)};
  const std::size_t n = dims.total();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  while (entries.size() < n * n) {
    if (!next_line()) {
      throw std::invalid_argument("state file: expected " + std::to_string(n * n) + " entries, found " +
                                  std::to_string(entries.size()));
    }
    std::istringstream row(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(row >> re >> im) || (row >> extra)) {
      throw std::invalid_argument("state file line " + std::to_string(line_no) + ": expected '<re> <im>'");
    }
    entries.emplace_back(re, im);
  }
  if (next_line()) throw std::invalid_argument("state file line " + std::to_string(line_no) + ": trailing data");
  return StateFile{dims, DensityMatrix(ComplexMatrix(n, n, std::move(entries)))};
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open state file '" + path + "'");
  return read_state(in);
}

void write_state(std::ostream& out, BipartiteDims dims, const DensityMatrix& rho) {
  if (dims.total() != rho.dim()) throw std::invalid_argument("write_state: dims do not match matrix");
  out << "dim " << dims.d1 << ' ' << dims.d2 << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& x : rho.matrix().entries()) out << x.real() << ' ' << x.imag() << '\n';
}

}  // namespace tomobell
