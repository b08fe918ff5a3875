#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/oracles.hpp"
#include "tomobell/states.hpp"

using namespace tomobell;

namespace {

ComplexMatrix singlet_projector() {
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix v = ComplexMatrix::column(std::vector<Complex>{0.0, s, -s, 0.0});
  return v * adjoint(v);
}

}  // namespace

TEST_CASE("flip operator") {
  const ComplexMatrix v = flip_operator(2);
  const ComplexMatrix e01 = tensor(ComplexMatrix::basis_vector(2, 0), ComplexMatrix::basis_vector(2, 1));
  const ComplexMatrix e10 = tensor(ComplexMatrix::basis_vector(2, 1), ComplexMatrix::basis_vector(2, 0));
  CHECK(max_abs_diff(v * e01, e10) == 0.0);
  for (std::size_t d : {2U, 3U, 4U}) {
    const ComplexMatrix f = flip_operator(d);
    CHECK(max_abs_diff(f * f, ComplexMatrix::identity(d * d)) == 0.0);
    CHECK(trace(f).real() == doctest::Approx(static_cast<double>(d)));
  }
  CHECK_THROWS_AS(flip_operator(1), std::invalid_argument);
}

TEST_CASE("maximally entangled vector") {
  const ComplexMatrix psi2 = max_entangled(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(psi2, ComplexMatrix::column(std::vector<Complex>{s, 0.0, 0.0, s})) < 1e-16);
  for (std::size_t d : {2U, 3U, 4U}) {
    const ComplexMatrix psi = max_entangled(d);
    CHECK(std::abs((adjoint(psi) * psi)(0, 0) - 1.0) < 1e-14);
    const ComplexMatrix reduced = partial_trace(psi * adjoint(psi), {d, d}, 1);
    CHECK(max_abs_diff(reduced, ComplexMatrix::identity(d) * Complex{1.0 / d, 0.0}) < 1e-14);
  }
}

TEST_CASE("Werner states") {
  CHECK(max_abs_diff(werner_state(2, -1.0).matrix(), singlet_projector()) < 1e-15);
  for (std::size_t d : {2U, 3U}) {
    const ComplexMatrix v = flip_operator(d);
    for (double f : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const DensityMatrix w = werner_state(d, f);
      CHECK(std::abs(trace(w.matrix()) - 1.0) < 1e-14);
      CHECK(std::abs(trace(w.matrix() * v).real() - f) < 1e-12);
    }
  }
  CHECK_THROWS_AS(werner_state(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(werner_state(3, -1.01), std::invalid_argument);
}

TEST_CASE("two-qubit Werner equals the standard singlet mixture") {
  const ComplexMatrix mixed = ComplexMatrix::identity(4) * Complex{0.25, 0.0};
  for (int k = 0; k <= 20; ++k) {
    const double f = -1.0 + 0.1 * k;
    const double v = (1.0 - 2.0 * f) / 3.0;
    const ComplexMatrix expected = singlet_projector() * Complex{v, 0.0} + mixed * Complex{1.0 - v, 0.0};
    CHECK(max_abs_diff(werner_state(2, f).matrix(), expected) < 1e-12);
  }
}

TEST_CASE("isotropic states") {
  for (std::size_t d : {2U, 3U}) {
    const ComplexMatrix psi = max_entangled(d);
    CHECK(max_abs_diff(isotropic_state(d, 1.0).matrix(), psi * adjoint(psi)) < 1e-15);
    const double dd = static_cast<double>(d * d);
    CHECK(max_abs_diff(isotropic_state(d, 1.0 / dd).matrix(), ComplexMatrix::identity(d * d) * Complex{1.0 / dd, 0.0}) <
          1e-15);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const DensityMatrix s = isotropic_state(d, p);
      CHECK(std::abs((adjoint(psi) * s.matrix() * psi)(0, 0).real() - p) < 1e-12);
    }
  }
  CHECK_THROWS_AS(isotropic_state(3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(isotropic_state(3, 1.1), std::invalid_argument);
}

TEST_CASE("families are affine in their parameter") {
  for (std::size_t d : {2U, 3U}) {
    for (auto [x, y] : {std::pair{-1.0, 0.4}, std::pair{-0.2, 1.0}}) {
      const ComplexMatrix mid = (werner_state(d, x).matrix() + werner_state(d, y).matrix()) * Complex{0.5, 0.0};
      CHECK(max_abs_diff(werner_state(d, 0.5 * (x + y)).matrix(), mid) < 1e-14);
    }
    for (auto [x, y] : {std::pair{0.0, 0.6}, std::pair{0.3, 1.0}}) {
      const ComplexMatrix mid = (isotropic_state(d, x).matrix() + isotropic_state(d, y).matrix()) * Complex{0.5, 0.0};
      CHECK(max_abs_diff(isotropic_state(d, 0.5 * (x + y)).matrix(), mid) < 1e-14);
    }
  }
}

TEST_CASE("purity") {
  CHECK(purity(DensityMatrix::pure(max_entangled(3))) == doctest::Approx(1.0));
  CHECK(purity(DensityMatrix::maximally_mixed(9)) == doctest::Approx(1.0 / 9.0));
  const DensityMatrix w = werner_state(3, -1.0);
  const double direct = trace(w.matrix() * w.matrix()).real();
  CHECK(std::abs(direct - tomobell::testing::werner_purity_closed_form(3.0, -1.0)) < 1e-12);
  CHECK(std::abs(purity(w) - direct) < 1e-12);
  CHECK(purity(w) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("separability thresholds and singlet fraction") {
  CHECK(separability_threshold(StateFamily::werner, 3) == 0.0);
  CHECK(separability_threshold(StateFamily::isotropic, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(separability_threshold(StateFamily::isotropic, 2) == doctest::Approx(0.5));
  CHECK(is_separable_parameter(StateFamily::werner, 3, 0.0));
  CHECK_FALSE(is_separable_parameter(StateFamily::werner, 3, -0.01));
  CHECK(is_separable_parameter(StateFamily::isotropic, 3, 0.3));
  CHECK_FALSE(is_separable_parameter(StateFamily::isotropic, 3, 0.34));
  CHECK_THROWS_AS(parse_family("gisin"), std::invalid_argument);

  CHECK(isotropic_param_to_singlet_fraction(0.7893) == doctest::Approx(0.7630).epsilon(1e-4));
  CHECK(isotropic_param_to_singlet_fraction(1.0) == 1.0);
  CHECK(isotropic_param_to_singlet_fraction(1.0 / 9.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(isotropic_param_to_singlet_fraction(0.1), std::domain_error);

  // q is the weight of |psi><psi| in q|psi><psi| + (1 - q) I/9.
  const double p = 0.8;
  const double q = isotropic_param_to_singlet_fraction(p);
  const ComplexMatrix psi = max_entangled(3);
  const ComplexMatrix mix = psi * adjoint(psi) * Complex{q, 0.0} + ComplexMatrix::identity(9) * Complex{(1.0 - q) / 9.0, 0.0};
  CHECK(max_abs_diff(mix, isotropic_state(3, p).matrix()) < 1e-14);
}

TEST_CASE("density matrix validation names the failed invariant") {
  auto invariant_of = [](const ComplexMatrix& m) -> std::string {
    try {
      DensityMatrix d(m);
    } catch (const InvariantError& e) {
      return e.invariant();
    }
    return "";
  };
  CHECK(invariant_of(ComplexMatrix::identity(2) * Complex{0.45, 0.0}) == "unit trace");
  CHECK(invariant_of(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}) == "Hermitian");
  CHECK(invariant_of(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}) == "positive semidefinite");
  CHECK(invariant_of(ComplexMatrix(2, 3)) == "dimension");
  CHECK(invariant_of(ComplexMatrix::identity(2) * Complex{0.5, 0.0}).empty());
}

TEST_CASE("state file format") {
  std::mt19937_64 rng(21);
  const DensityMatrix rho = tomobell::testing::random_state(rng, 6);
  std::stringstream ss;
  write_state(ss, {2, 3}, rho);
  const StateFile back = read_state(ss);
  CHECK(back.dims == BipartiteDims{2, 3});
  CHECK(max_abs_diff(back.rho.matrix(), rho.matrix()) == 0.0);

  std::istringstream bad_trace("dim 1 2\n0.45 0\n0 0\n0 0\n0.45 0\n");
  try {
    read_state(bad_trace);
    FAIL("expected an invariant error");
  } catch (const InvariantError& e) {
    CHECK(e.invariant() == "unit trace");
    CHECK(std::string(e.what()).find("unit trace") != std::string::npos);
  }

  std::istringstream short_file("dim 2 2\n1 0\n");
  CHECK_THROWS_AS(read_state(short_file), std::invalid_argument);
  std::istringstream bad_header("size 2 2\n");
  CHECK_THROWS_AS(read_state(bad_header), std::invalid_argument);
  std::istringstream bad_entry("dim 1 1\n1 zero\n");
  CHECK_THROWS_AS(read_state(bad_entry), std::invalid_argument);
}

TEST_CASE("random states satisfy the invariants") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = tomobell::testing::random_state(rng, 9);
    CHECK(purity(rho) >= 1.0 / 9.0 - 1e-12);
    CHECK(purity(rho) <= 1.0 + 1e-12);
  }
}
