#include <doctest.h>

#include <cmath>
#include <random>

#include "phaselab/commutator.hpp"
#include "oracles.hpp"

using namespace phaselab;

namespace {

CoeffVec random_vector(std::mt19937_64& rng, std::size_t max_support) {
  std::uniform_int_distribution<std::size_t> len(1, max_support);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> c(len(rng));
  for (auto& x : c) x = {u(rng), u(rng)};
  return CoeffVec(std::move(c));
}

// r_D by brute force: dense matrices of Phi on a section large enough that
// nothing is truncated for the rows we keep.
double brute_residual(const CoeffVec& f, std::size_t d) {
  const std::size_t big = d + f.size() + 2;
  const auto phi = oracle::phase_matrix(big);
  std::vector<Complex> x = f.dense(big), nx(big);
  for (std::size_t n = 0; n < big; ++n) nx[n] = static_cast<double>(n) * x[n];
  double acc = 0;
  for (std::size_t n = 0; n < d; ++n) {
    Complex phi_nx{}, phi_x{};
    for (std::size_t m = 0; m < big; ++m) {
      phi_nx += phi[n * big + m] * nx[m];
      phi_x += phi[n * big + m] * x[m];
    }
    acc += std::norm(phi_nx - static_cast<double>(n) * phi_x - Complex(0, 1) * x[n]);
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("sesquilinear defect examples") {
  const CoeffVec e0 = CoeffVec::basis(0);
  const CoeffVec e01({1.0, 1.0});
  CHECK(std::abs(sesquilinear_defect(e01, e01)) <= 1e-15);
  CHECK(std::abs(sesquilinear_defect(e0, e0) - Complex(0, -1)) <= 1e-15);
  CHECK(std::abs(sesquilinear_defect(e0, e01)) <= 1e-15);
  CHECK(std::abs(oracle::brute_defect({1.0}, {1.0}) - Complex(0, -1)) <= 1e-15);
}

TEST_CASE("property: defect law against brute force") {
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_vector(rng, 40);
    const auto g = random_vector(rng, 40);
    const Complex d = sesquilinear_defect(f, g);
    const Complex law = Complex(0, -1) * eval_at_minus_one(f) * std::conj(eval_at_minus_one(g));
    CHECK(std::abs(d - law) <= 1e-10);
    const auto fv = f.dense(f.size());
    const auto gv = g.dense(g.size());
    CHECK(std::abs(d - oracle::brute_defect(fv, gv)) <= 1e-10);
    // i[Phi, N] is symmetric
    CHECK(std::abs(d + std::conj(sesquilinear_defect(g, f))) <= 1e-12);
  }
}

TEST_CASE("membership predicate") {
  CHECK(in_commutator_domain(CoeffVec({1.0, 1.0})));
  CHECK_FALSE(in_commutator_domain(CoeffVec::basis(0)));
  CHECK(in_commutator_domain(density_witness(7).vector));
}

TEST_CASE("Heisenberg residuals on Y vanish") {
  const std::vector<std::size_t> dims{8, 16, 64};
  const auto r = heisenberg_residuals(CoeffVec::basis(3) + CoeffVec::basis(4), dims);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) CHECK(row.residual <= 1e-12);

  const std::vector<std::size_t> dims16{16, 40};
  for (const auto& row : heisenberg_residuals(density_witness(4).vector, dims16).rows)
    CHECK(row.residual <= 1e-12);
}

TEST_CASE("Heisenberg failure for e_0: every defect coefficient has modulus 1") {
  const CoeffVec e0 = CoeffVec::basis(0);
  CHECK(brute_residual(e0, 64) == doctest::Approx(8.0).epsilon(1e-12));
  const std::vector<std::size_t> dims{1024, 64, 256};
  const auto r = heisenberg_residuals(e0, dims);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].dim == 64);  // ascending
  for (const auto& row : r.rows) {
    const double d = static_cast<double>(row.dim);
    CHECK(std::abs(row.residual * row.residual - d) <= 1e-10 * d);
  }
  CHECK(r.slope == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.boundary_value == Complex(1.0));
}

TEST_CASE("property: residuals match brute force and are monotone") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_vector(rng, 8);
    const std::vector<std::size_t> dims{12, 24, 48};
    const auto r = heisenberg_residuals(f, dims);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].residual == doctest::Approx(brute_residual(f, r.rows[i].dim)).epsilon(1e-10));
      if (i > 0) CHECK(r.rows[i].residual >= r.rows[i - 1].residual);
    }
  }
}

TEST_CASE("property: failure slope tends to |S|^2") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> target(0.5, 2.0);
  const std::vector<std::size_t> dims{4096};
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_vector(rng, 8);
    Complex s = eval_at_minus_one(f);
    if (std::abs(s) < 1e-3) continue;
    f = (target(rng) / std::abs(s)) * f;
    s = eval_at_minus_one(f);
    const auto r = heisenberg_residuals(f, dims);
    CHECK(r.slope >= 0.8 * std::norm(s));
    CHECK(r.slope <= 1.2 * std::norm(s));
  }
}

TEST_CASE("Heisenberg residual preconditions") {
  const CoeffVec f = CoeffVec::basis(5);
  const std::vector<std::size_t> bad{6};
  CHECK_THROWS_AS(heisenberg_residuals(f, bad), std::invalid_argument);
  CHECK_THROWS_AS(heisenberg_residuals(f, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST_CASE("density witnesses") {
  auto w1 = density_witness(1);
  CHECK(w1.vector == CoeffVec({1.0, 1.0}));
  CHECK(w1.distance_sq == 1.0);

  auto w4 = density_witness(4);
  CHECK(w4.vector.size() == 8);
  for (std::size_t n : {0u, 1u, 3u, 5u, 7u}) CHECK(w4.vector[n] != Complex{});
  for (std::size_t n : {2u, 4u, 6u}) CHECK(w4.vector[n] == Complex{});
  CHECK(w4.distance_sq == 0.25);

  for (std::size_t k : {1u, 4u, 100u, 1000u}) {
    const auto w = density_witness(k);
    CHECK(std::abs(eval_at_minus_one(w.vector)) <= 1e-15);
    const double dist = std::pow((CoeffVec::basis(0) - w.vector).norm(), 2);
    CHECK(std::abs(dist - 1.0 / static_cast<double>(k)) <= 1e-15);
  }
  CHECK_THROWS_AS(density_witness(0), std::invalid_argument);
}

TEST_CASE("graph norm witness diverges linearly") {
  CHECK(graph_norm_witness(1) == 1.0);
  CHECK(graph_norm_witness(10) == 10.0);
  CHECK(graph_norm_witness(1000) == 1000.0);
  std::size_t mismatches = 0;
  for (std::size_t m = 1; m <= 10000; ++m)
    if (graph_norm_witness(m) != static_cast<double>(m)) ++mismatches;
  CHECK(mismatches == 0);
  CHECK_THROWS_AS(graph_norm_witness(0), std::invalid_argument);
}

TEST_CASE("log series cross-check") {
  CHECK(log_series_crosscheck(1) <= 1e-15);
  CHECK(log_series_crosscheck(100) <= 1e-15);
  const auto ref = oracle::minus_i_log_one_plus_z(100);
  const auto phi_one = phi_apply_exact(CoeffVec::basis(0), 101);
  for (std::size_t n = 1; n <= 100; ++n) CHECK(std::abs(phi_one[n] - ref[n]) <= 1e-15);
}

TEST_CASE("cancellation diagnostics") {
  SUBCASE("S = 0 decays") {
    const CoeffVec f({1.0, 1.0});
    const auto r512 = cancellation_report(f, 512);
    CHECK(r512.boundary_value == Complex{});
    CHECK(r512.tail_average <= 1e-3);
    const auto r2048 = cancellation_report(f, 2048);
    CHECK(r2048.tail_average < r512.tail_average);
    // brute force: t_n = n^2 |1/n - 1/(n-1)|^2 = 1/(n-1)^2 for n >= 2
    for (std::size_t n = 2; n <= 512; n += 37)
      CHECK(r512.rows[n].term == doctest::Approx(1.0 / std::pow(n - 1.0, 2)).epsilon(1e-10));
  }
  SUBCASE("S = 1: every term is 1") {
    const auto r = cancellation_report(CoeffVec::basis(0), 256);
    for (std::size_t n = 1; n <= 256; ++n) CHECK(r.rows[n].term == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r.tail_average - r.target) <= r.tolerance);
    CHECK(r.rows.back().partial_sum == doctest::Approx(256.0).epsilon(1e-13));
  }
  SUBCASE("S = 2") {
    const auto r = cancellation_report(CoeffVec::basis(0, 2.0), 512);
    CHECK(r.target == doctest::Approx(4.0));
    CHECK(std::abs(r.tail_average - 4.0) <= r.tolerance);
  }
  SUBCASE("entries are nonnegative") {
    std::mt19937_64 rng(4);
    const auto r = cancellation_report(random_vector(rng, 8), 100);
    for (const auto& row : r.rows) CHECK(row.term >= 0.0);
    CHECK(r.window_start == 75);
  }
  CHECK_THROWS_AS(cancellation_report(CoeffVec({1.0, 1.0, 1.0}), 12), std::invalid_argument);
}
