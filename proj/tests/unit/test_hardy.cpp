#include <doctest.h>

#include <cmath>
#include <random>

#include "phaselab/hardy.hpp"
#include "oracles.hpp"

using namespace phaselab;

namespace {

// Test-side pointwise symbols, written independently of evaluate().
struct QuadCase {
  Symbol symbol;
  std::function<Complex(double)> fn;
  std::vector<double> breaks;
};

std::vector<QuadCase> quadrature_cases() {
  std::vector<QuadCase> cases;
  cases.push_back({symbol::Arg{}, [](double th) { return Complex(th); }, {}});
  cases.push_back({symbol::Indicator{Arc(0.0, kPi)},
                   [](double th) { return Complex(th > 0.0 ? 1.0 : 0.0); },
                   {0.0}});
  // (2.5, 2.5 + 1.7] wraps past pi to (-pi, 4.2 - 2pi].
  const double wrap_end = 4.2 - 2 * oracle::pi;
  cases.push_back({symbol::Indicator{Arc(2.5, 4.2)},
                   [=](double th) { return Complex(th > 2.5 || th <= wrap_end ? 1.0 : 0.0); },
                   {2.5, wrap_end}});
  cases.push_back({symbol::TrigMonomial{3}, [](double th) { return std::polar(1.0, 3 * th); }, {}});
  cases.push_back({symbol::TrigMonomial{-2}, [](double th) { return std::polar(1.0, -2 * th); }, {}});
  cases.push_back({make_step({{Arc(-1.0, 0.5), 2.0}, {Arc(0.5, 2.0), -0.75}}),
                   [](double th) {
                     if (th > -1.0 && th <= 0.5) return Complex(2.0);
                     if (th > 0.5 && th <= 2.0) return Complex(-0.75);
                     return Complex(0.0);
                   },
                   {-1.0, 0.5, 2.0}});
  return cases;
}

}  // namespace

TEST_CASE("CoeffVec canonical form") {
  CoeffVec f({1.0, 2.0, 0.0, 0.0});
  CHECK(f.size() == 2);
  CHECK(f[5] == Complex{});
  CHECK(CoeffVec({0.0, 0.0}).empty());
  CHECK((f - f).empty());
  CHECK(CoeffVec::basis(3).size() == 4);
  CHECK_THROWS_AS(CoeffVec({Complex(INFINITY, 0)}), std::invalid_argument);
  CHECK(inner(f, CoeffVec::basis(1)) == Complex(2.0));
  CHECK(apply_number(f) == CoeffVec({0.0, 2.0}));
}

TEST_CASE("Arc validation and pieces") {
  CHECK_THROWS_AS(Arc(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Arc(0.0, 7.0), std::invalid_argument);
  CHECK(Arc::full_circle().is_full_circle());
  CHECK(Arc::full_circle().rotated(1.234).is_full_circle());

  const auto p = Arc(2.5, 4.2).pieces();
  REQUIRE(p.size() == 2);
  CHECK(p[0].a() == doctest::Approx(2.5));
  CHECK(p[0].b() == doctest::Approx(kPi));
  CHECK(p[1].a() == doctest::Approx(-kPi));
  CHECK(p[1].b() == doctest::Approx(4.2 - kTwoPi));

  const Arc half(0.0, kPi);
  CHECK(half.contains(kPi));
  CHECK_FALSE(half.contains(0.0));
  CHECK(half.contains(1.0 + kTwoPi));
}

TEST_CASE("step symbols reject overlapping arcs") {
  CHECK_THROWS_AS(make_step({{Arc(0.0, 1.0), 1.0}, {Arc(0.5, 2.0), 1.0}}), std::invalid_argument);
  // Overlap only after reduction mod 2pi.
  CHECK_THROWS_AS(make_step({{Arc(3.0, 3.5), 1.0}, {Arc(-3.0, -2.5), 1.0}}), std::invalid_argument);
  CHECK_NOTHROW(make_step({{Arc(0.0, 1.0), 1.0}, {Arc(1.0, 2.0), 1.0}}));
}

TEST_CASE("fourier coefficient examples") {
  CHECK(fourier_coefficient(symbol::Arg{}, 1) == Complex(0.0, -1.0));
  CHECK(fourier_coefficient(symbol::Arg{}, 0) == Complex{});
  CHECK(fourier_coefficient(symbol::Arg{}, 2) == Complex(0.0, 0.5));
  const Complex half = fourier_coefficient(symbol::Indicator{Arc(0.0, kPi)}, 1);
  CHECK(std::abs(half - Complex(0.0, -1.0 / kPi)) <= 1e-16);
  CHECK(fourier_coefficient(symbol::Indicator{Arc(0.0, kPi)}, 0) == Complex(0.5));
  CHECK(fourier_coefficient(symbol::TrigMonomial{4}, 4) == Complex(1.0));
  CHECK(fourier_coefficient(symbol::TrigMonomial{4}, -4) == Complex{});
}

TEST_CASE("property: closed forms match Simpson quadrature") {
  for (const auto& c : quadrature_cases()) {
    for (std::int64_t k = -16; k <= 16; ++k) {
      const Complex closed = fourier_coefficient(c.symbol, k);
      const Complex quad = oracle::simpson_fourier(c.fn, k, c.breaks);
      CHECK_MESSAGE(std::abs(closed - quad) <= 1e-8, "k=" << k << " variant=" << c.symbol.index());
    }
  }
}

TEST_CASE("property: conjugate symmetry for real symbols") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng);
    const Symbol ind = symbol::Indicator{Arc(a, a + std::abs(u(rng)) + 0.1)};
    for (std::int64_t k = 1; k <= 40; ++k) {
      CHECK(fourier_coefficient(ind, -k) == std::conj(fourier_coefficient(ind, k)));
      CHECK(fourier_coefficient(symbol::Arg{}, -k) == std::conj(fourier_coefficient(symbol::Arg{}, k)));
    }
  }
}

TEST_CASE("toeplitz(Arg) matches the matrix elements") {
  const std::size_t d = 32;
  const auto phi = phase_operator(d);
  const auto ref = oracle::phase_matrix(d);
  CHECK(phi.hermitian());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(phi.data()[i] - ref[i]) <= 1e-15);
  CHECK(toeplitz(symbol::Arg{}, 2)(1, 0) == Complex(0, -1));
  CHECK(toeplitz(symbol::Arg{}, 2)(0, 1) == Complex(0, 1));
}

TEST_CASE("toeplitz special cases") {
  const auto id = toeplitz(symbol::Indicator{Arc::full_circle()}, 9);
  CHECK(max_abs_entry(id - TruncatedOperator::identity(9)) == 0.0);

  const std::size_t d = 7;
  for (std::int64_t k = 0; k < 5; ++k) {
    const auto vk = toeplitz(symbol::TrigMonomial{-k}, d);
    for (std::size_t n = 0; n < d; ++n)
      for (std::size_t m = 0; m < d; ++m)
        CHECK(vk(n, m) == Complex(static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n) == k ? 1.0 : 0.0));
  }
  CHECK_FALSE(toeplitz(symbol::TrigMonomial{1}, 3).hermitian());
  CHECK(is_real_valued(symbol::Arg{}));
  CHECK_FALSE(is_real_valued(symbol::TrigMonomial{1}));
}

TEST_CASE("number operator") {
  CHECK(number_operator(1)(0, 0) == Complex{});
  const auto n3 = number_operator(3);
  CHECK(n3(2, 2) == Complex(2.0));
  CHECK(n3(0, 1) == Complex{});
  const auto e2 = CoeffVec::basis(2).dense(3);
  const auto y = n3.apply(e2);
  CHECK(y[2] == Complex(2.0));
  CHECK(y[0] == Complex{});
}

TEST_CASE("phi_apply_exact") {
  SUBCASE("e_0 gives the log series") {
    const auto y = phi_apply_exact(CoeffVec::basis(0), 4);
    CHECK(y[0] == Complex{});
    CHECK(y[1] == Complex(0, -1));
    CHECK(y[2] == Complex(0, 0.5));
    CHECK(std::abs(y[3] - Complex(0, -1.0 / 3.0)) <= 1e-16);
  }
  SUBCASE("zero vector") { CHECK(phi_apply_exact(CoeffVec{}, 5).empty()); }
  SUBCASE("e_1 + e_2 at n = 0") {
    const auto y = phi_apply_exact(CoeffVec({0.0, 1.0, 1.0}), 1);
    CHECK(std::abs(y[0] - Complex(0, 0.5)) <= 1e-16);
  }
  SUBCASE("columns of the Toeplitz section") {
    const std::size_t d = 12;
    const auto phi = phase_operator(d);
    for (std::size_t m = 0; m < d; ++m) {
      const auto col = phi_apply_exact(CoeffVec::basis(m), d + 3);
      for (std::size_t n = 0; n < d; ++n) CHECK(col[n] == phi(n, m));
    }
  }
  CHECK_THROWS_AS(phi_apply_exact(CoeffVec::basis(0), 0), std::invalid_argument);
}

TEST_CASE("eval_at_minus_one") {
  CHECK(eval_at_minus_one(CoeffVec::basis(0)) == Complex(1.0));
  for (std::size_t n = 0; n < 10; ++n)
    CHECK(eval_at_minus_one(CoeffVec::basis(n) + CoeffVec::basis(n + 1)) == Complex{});
  CoeffVec f4({1.0, 0.25, 0.0, 0.25, 0.0, 0.25, 0.0, 0.25});
  CHECK(eval_at_minus_one(f4) == Complex{});
}

TEST_CASE("property: trigonometric monomials multiply away from the truncation edge") {
  const std::size_t d = 20;
  for (std::int64_t j = -3; j <= 3; ++j)
    for (std::int64_t k = -3; k <= 3; ++k) {
      const auto prod = toeplitz(symbol::TrigMonomial{j}, d) * toeplitz(symbol::TrigMonomial{k}, d);
      const auto direct = toeplitz(symbol::TrigMonomial{j + k}, d);
      // Both truncation edges: the top corner (S S* != I) and the bottom
      // corner where the intermediate index leaves the section.
      const std::size_t edge = static_cast<std::size_t>(std::abs(j) + std::abs(k));
      for (std::size_t n = edge; n + edge < d; ++n)
        for (std::size_t m = edge; m + edge < d; ++m) CHECK(prod(n, m) == direct(n, m));
    }
}

TEST_CASE("rotations and shifts") {
  const auto r = number_rotation(0.3, 4);
  CHECK(std::abs(r(3, 3) - std::polar(1.0, 0.9)) <= 1e-15);
  const auto v = left_shift(4);
  CHECK(v(0, 1) == Complex(1.0));
  CHECK(v(1, 0) == Complex{});
  CHECK(std::real(evaluate(symbol::Arg{}, -kPi)) == doctest::Approx(kPi));
}
