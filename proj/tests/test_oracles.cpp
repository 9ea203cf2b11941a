#include "doctest.h"

#include <cmath>

#include "invspec/appendix.hpp"
#include "invspec/errors.hpp"
#include "invspec/special.hpp"

using namespace invspec;
using doctest::Approx;

TEST_CASE("Bessel functions match the standard library") {
  for (double x = 0.0; x <= 60.0; x += 0.37) {
    CAPTURE(x);
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) <= 1e-14);
    CHECK(std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)) <= 1e-14);
    CHECK(bessel_j0_prime(x) == -bessel_j1(x));
  }
}

TEST_CASE("Bessel zeros") {
  CHECK(bessel_zero(ZeroKind::J0, 1).value == Approx(2.404825557695773).epsilon(1e-15));
  CHECK(bessel_zero(ZeroKind::J0, 2).value == Approx(5.520078110286311).epsilon(1e-15));
  CHECK(bessel_zero(ZeroKind::J0Prime, 1).value == Approx(3.831705970207512).epsilon(1e-15));
  CHECK(bessel_zero(ZeroKind::J0Prime, 2).value == Approx(7.015586669815619).epsilon(1e-15));
  for (int j = 1; j <= 64; ++j) {
    CHECK(std::abs(bessel_j0(bessel_zero(ZeroKind::J0, j).value)) <= 1e-14);
    CHECK(std::abs(bessel_j1(bessel_zero(ZeroKind::J0Prime, j).value)) <= 1e-14);
  }
  CHECK_THROWS(bessel_zero(ZeroKind::J0, 0));
  CHECK_THROWS(bessel_zero(ZeroKind::J0, 65));
}

TEST_CASE("tent spectrum") {
  const auto t = tent_spectrum(4);
  CHECK(t[0] == Approx(2.404825557695773 * 2.404825557695773 / 2.0));
  CHECK(t[0] == Approx(2.8916).epsilon(1e-4));
  CHECK(t[1] == Approx(7.3410).epsilon(1e-4));
  CHECK(t[2] == Approx(15.2356311718).epsilon(1e-10));
  for (int j = 1; j < 4; ++j) CHECK(t[j] > t[j - 1]);
}

TEST_CASE("Legendre polynomials") {
  CHECK(legendre_eval(2, 0.5) == Approx(-0.125));
  CHECK(legendre_eval(3, 0.5) == Approx(-0.4375));
  for (int n = 0; n <= 12; ++n) {
    CHECK(legendre_eval(n, 1.0) == Approx(1.0));
    const auto v = legendre_derivatives(n, 1.0);
    CHECK(v.dp == Approx(n * (n + 1) / 2.0));
    // (1-x^2) P'' - 2x P' + n(n+1) P = 0
    for (double x : {-1.0, -0.3, 0.2, 0.77, 1.0}) {
      const auto w = legendre_derivatives(n, x);
      CHECK(std::abs((1 - x * x) * w.d2p - 2 * x * w.dp + n * (n + 1) * w.p) <= 1e-10 * (1 + n * n * n * n));
    }
  }
}

TEST_CASE("ODE solutions in the three regimes") {
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(-0.9 + 0.018 * i);
  for (double lambda : {0.5, 1.0, 2.0, 7.0}) {
    for (int branch : {1, 2}) {
      CAPTURE(lambda);
      CAPTURE(branch);
      const auto s = appendix_solution(lambda, branch);
      CHECK(el_residual(lambda, [&](double x) { return s.eval(x); }, xs) <= 1e-8);
      CHECK(el_residual_numeric(lambda, s, xs) <= 1e-4);
      CHECK(indicial_residual(s) <= 1e-14);
    }
  }
  CHECK(appendix_solution(0.5, 1).regime == AppendixRegime::Below);
  CHECK(appendix_solution(1.0, 1).regime == AppendixRegime::Critical);
  CHECK(appendix_solution(2.0, 1).regime == AppendixRegime::Above);
}

TEST_CASE("critical branch 1 is x / sqrt(1 - x^2)") {
  const auto s = appendix_solution(1.0, 1);
  for (double x = -0.9; x <= 0.9; x += 0.01) CHECK(std::abs(s(x) - x / std::sqrt(1 - x * x)) <= 1e-12);
}

TEST_CASE("branch parity") {
  for (double lambda : {0.5, 1.0, 3.0}) {
    const auto odd = appendix_solution(lambda, 1), even = appendix_solution(lambda, 2);
    for (double x : {0.1, 0.4, 0.8}) {
      CHECK(odd(-x) == Approx(-odd(x)));
      CHECK(even(-x) == Approx(even(x)));
    }
  }
}

TEST_CASE("oscillation above 1") {
  const auto s = appendix_solution(5.0, 1);
  int changes = 0;
  double prev = s(1e-6);
  for (int i = 1; i <= 20000; ++i) {
    const double v = s(1.0 - std::pow(10.0, -6.0 * i / 20000.0));
    if ((v < 0) != (prev < 0)) ++changes;
    prev = v;
  }
  CHECK(changes >= 3);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(appendix_solution(1.0, 3), ParameterError);
  CHECK_THROWS_AS(appendix_solution(1.0, 1).eval(1.0), DomainError);
}
