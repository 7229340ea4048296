#include <doctest.h>

#include <cmath>
#include <random>

#include "phaselab/hardy.hpp"
#include "phaselab/linalg.hpp"
#include "oracles.hpp"

using namespace phaselab;

namespace {

TruncatedOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedOperator m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  m.refresh();
  return m;
}

TruncatedOperator random_general(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedOperator m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  m.refresh();
  return m;
}

double dist_to_identity(const TruncatedOperator& m) {
  return operator_norm(m - TruncatedOperator::identity(m.dim()));
}

}  // namespace

TEST_CASE("matrix algebra basics") {
  const auto n4 = number_operator(4);
  CHECK(n4.hermitian());
  const auto n4_star = adjoint(n4);
  CHECK(max_abs_entry(n4_star - n4) == 0.0);

  const auto phi = phase_operator(6);
  CHECK(max_abs_entry(TruncatedOperator::identity(6) * phi - phi) == 0.0);
  CHECK(max_abs_entry(phi - adjoint(phi)) <= 1e-13);

  const auto doubled = scale(phi, 2.0);
  CHECK(max_abs_entry(doubled - (phi + phi)) == 0.0);
}

TEST_CASE("binary ops reject mismatched dimensions") {
  const auto a = TruncatedOperator::identity(3);
  const auto b = TruncatedOperator::identity(4);
  CHECK_THROWS_AS(add(a, b), std::invalid_argument);
  CHECK_THROWS_AS(subtract(a, b), std::invalid_argument);
  CHECK_THROWS_AS(multiply(a, b), std::invalid_argument);
  CHECK_THROWS_WITH_AS(a * b, doctest::Contains("mismatch"), std::invalid_argument);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(TruncatedOperator(0), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedOperator(kDefaultDimCap + 1), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedOperator(2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedOperator(1, {Complex(std::nan(""), 0.0)}), std::invalid_argument);
}

TEST_CASE("hermitian flag is recomputed") {
  TruncatedOperator m(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
  CHECK(m.hermitian());
  TruncatedOperator skew(2, {0.0, 1.0, -1.0, 0.0});
  CHECK_FALSE(skew.hermitian());
  CHECK((skew * skew).hermitian());  // -I
  CHECK_THROWS_AS(hermitian_eigen(skew), std::invalid_argument);
}

TEST_CASE("eigen of diagonal number operator") {
  const auto eig = hermitian_eigen(number_operator(4));
  REQUIRE(eig.eigenvalues.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(eig.eigenvalues[i] == static_cast<double>(i));
  CHECK(max_abs_entry(eig.vectors - TruncatedOperator::identity(4)) == 0.0);

  // Unsorted real diagonal comes back exactly sorted.
  const std::vector<Complex> diag{3.5, -1.0, 2.0, 0.25};
  const auto ev = hermitian_eigen(TruncatedOperator::diagonal(diag)).eigenvalues;
  CHECK(ev == std::vector<double>{-1.0, 0.25, 2.0, 3.5});
}

TEST_CASE("eigen of Phi_2") {
  // entry(1,0) = <Phi e_0, e_1> = -i, entry(0,1) = i; lambda^2 - 1 = 0.
  const auto phi2 = phase_operator(2);
  CHECK(phi2(1, 0) == Complex(0, -1));
  CHECK(phi2(0, 1) == Complex(0, 1));
  const auto eig = hermitian_eigen(phi2);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(phi2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random Hermitian reconstruction and orthonormality") {
  std::mt19937_64 rng(0x5EED);
  for (std::size_t n : {1u, 2u, 7u, 64u}) {
    const auto m = random_hermitian(n, rng);
    const auto eig = hermitian_eigen(m);
    for (std::size_t i = 1; i < n; ++i) CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);

    const auto gram = adjoint(eig.vectors) * eig.vectors;
    CHECK(max_abs_entry(gram - TruncatedOperator::identity(n)) <= 1e-10);

    std::vector<Complex> lambda(eig.eigenvalues.begin(), eig.eigenvalues.end());
    const auto rebuilt = eig.vectors * TruncatedOperator::diagonal(lambda) * adjoint(eig.vectors);
    CHECK(frobenius_norm(rebuilt - m) <= 1e-9 * frobenius_norm(m));
  }
}

TEST_CASE("eigenvalues agree with brute-force spectral norm") {
  std::mt19937_64 rng(7);
  const auto m = random_general(12, rng);
  oracle::Dense dense(m.data().begin(), m.data().end());
  CHECK(operator_norm(m) == doctest::Approx(oracle::spectral_norm(dense, 12, 5000)).epsilon(1e-9));
}

TEST_CASE("sweep budget exhaustion reports residual") {
  std::mt19937_64 rng(3);
  const auto m = random_hermitian(16, rng);
  EigenOptions opts;
  opts.max_sweeps = 1;
  try {
    (void)hermitian_eigen(m, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > opts.tol);
  }
  opts.tol = 0.0;
  CHECK_THROWS_AS(hermitian_eigen(m, opts), std::invalid_argument);
}

TEST_CASE("unitary exponential") {
  SUBCASE("s = 0 is the identity") {
    CHECK(max_abs_entry(unitary_exp(phase_operator(8), 0.0) - TruncatedOperator::identity(8)) ==
          0.0);
  }
  SUBCASE("diagonal exponential of N") {
    const double t = 0.7;
    const auto u = unitary_exp(number_operator(5), t);
    for (std::size_t n = 0; n < 5; ++n)
      CHECK(std::abs(u(n, n) - std::polar(1.0, t * static_cast<double>(n))) <= 1e-14);
  }
  SUBCASE("Phi_2 at pi/2 has eigenvalues +-i") {
    const auto u = unitary_exp(phase_operator(2), oracle::pi / 2);
    // e^{i theta Phi_2} = cos(theta) I + i sin(theta) Phi_2 since Phi_2^2 = I.
    CHECK(std::abs(u(0, 0)) <= 1e-14);
    CHECK(std::abs(u(0, 1) - Complex(-1.0, 0.0)) <= 1e-14);
    CHECK(std::abs(u(1, 0) - Complex(1.0, 0.0)) <= 1e-14);
    // trace 0, det 1 -> eigenvalues +-i
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    CHECK(std::abs(det - 1.0) <= 1e-14);
  }
  SUBCASE("agrees with Taylor scaling-and-squaring") {
    const double s = 1.3;
    const auto u = unitary_exp(phase_operator(24), s);
    oracle::Dense x = oracle::phase_matrix(24);
    for (auto& v : x) v *= Complex(0.0, s);
    const auto ref = oracle::expm(x, 24);
    double worst = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - u.data()[i]));
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("property: inverse, group law, unitarity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_hermitian(10 + trial, rng);
    const double s = u(rng);
    const double t = u(rng);
    const auto eig = hermitian_eigen(m);
    const auto us = unitary_exp(eig, s);
    const auto ut = unitary_exp(eig, t);
    CHECK(dist_to_identity(us * unitary_exp(eig, -s)) <= 1e-10);
    CHECK(dist_to_identity(adjoint(us) * us) <= 1e-10);
    CHECK(operator_norm(unitary_exp(eig, s + t) - us * ut) <= 1e-9);
  }
}

TEST_CASE("property: operator norm is submultiplicative") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_general(8, rng);
    const auto b = random_general(8, rng);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-9);
  }
  CHECK(operator_norm(TruncatedOperator::identity(5)) == doctest::Approx(1.0));
}

TEST_CASE("operator norm of Phi_128 is below pi") {
  const double nrm = operator_norm(phase_operator(128));
  CHECK(nrm > 0.0);
  CHECK(nrm <= oracle::pi);
}
