#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tomobell/matrix.hpp"

namespace tomobell {

/// Raised when a matrix fails one of the density-matrix invariants.
/// `invariant()` is one of "Hermitian", "unit trace", "positive semidefinite",
/// or "dimension".
class InvariantError : public std::invalid_argument {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : std::invalid_argument("density matrix violates " + invariant + " invariant: " + detail),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

struct BipartiteDims {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t total() const { return d1 * d2; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Hermitian, unit-trace, positive-semidefinite matrix. Construction validates
/// all three invariants.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  /// Convex combination sum_k w_k rho_k. Weights must be nonnegative and sum to 1.
  static DensityMatrix mixture(const std::vector<double>& weights, const std::vector<DensityMatrix>& states);
  /// |v><v| for a normalized column vector.
  static DensityMatrix pure(const ComplexMatrix& v);
  static DensityMatrix maximally_mixed(std::size_t dim);

 private:
  ComplexMatrix m_;
};

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

/// Partial trace over subsystem 2 (keep == 1) or subsystem 1 (keep == 2).
ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, int keep);

enum class StateFamily { werner, isotropic };

StateFamily parse_family(std::string_view name);
std::string_view family_name(StateFamily f);

/// Swap V|i>|j> = |j>|i> on C^d (x) C^d.
ComplexMatrix flip_operator(std::size_t d);

/// (1/sqrt d) sum_i |ii> as a d^2 x 1 column.
ComplexMatrix max_entangled(std::size_t d);

/// Werner state (d^3 - d)^{-1} [(d - f) I + (d f - 1) V], f in [-1, 1].
/// tr(W V) = f.
DensityMatrix werner_state(std::size_t d, double f);

/// Isotropic state (d^2 - 1)^{-1} [(1 - p) I + (p d^2 - 1) |psi><psi|], p in [0, 1].
/// <psi|S|psi> = p.
DensityMatrix isotropic_state(std::size_t d, double p);

DensityMatrix family_state(StateFamily family, std::size_t d, double param);
/// Domain of the family parameter: [-1, 1] for Werner, [0, 1] for isotropic.
std::pair<double, double> family_domain(StateFamily family);

double purity(const DensityMatrix& rho);

/// Werner: separable iff f >= 0 (returns 0). Isotropic: separable iff p <= 1/d.
double separability_threshold(StateFamily family, std::size_t d);
bool is_separable_parameter(StateFamily family, std::size_t d, double param);

/// q = (9p - 1)/8 for two-qutrit isotropic states. q is the weight in
/// q|psi><psi| + (1 - q) I/9; note the fidelity <psi|S|psi> equals p, not q.
double isotropic_param_to_singlet_fraction(double p);

/// Text format: "dim <d1> <d2>" then (d1 d2)^2 lines "<re> <im>", row-major.
struct StateFile {
  BipartiteDims dims;
  DensityMatrix rho;
};

StateFile read_state(std::istream& in);
StateFile read_state_file(const std::string& path);
void write_state(std::ostream& out, BipartiteDims dims, const DensityMatrix& rho);

}  // namespace tomobell
