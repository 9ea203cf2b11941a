#include "doctest.h"

#include <cmath>

#include "invspec/errors.hpp"
#include "invspec/hardy.hpp"

using namespace invspec;
using doctest::Approx;

TEST_CASE("F and its infimum") {
  // p = 1/2 makes the bracket vanish
  for (double x : {0.1, 0.5, 0.9}) CHECK(hardy_F(0.5, x) == Approx(2.0));
  CHECK(hardy_F(0.0, 0.6) == Approx(2.64));
  CHECK(hardy_m(0.5) == 2.0);
  CHECK(hardy_m(1.0) == 1.0);
  CHECK(hardy_m(0.0) == Approx(2.0).epsilon(1e-9));
  CHECK(hardy_m(0.75) == Approx(1.5).epsilon(1e-6));
  CHECK_THROWS_AS(hardy_F(0.5, 1.0), DomainError);
  CHECK_THROWS(hardy_m(1.5));
}

TEST_CASE("small-x F stays accurate") {
  // F(p, x) -> 3 - 2p as x -> 0
  CHECK(hardy_F(0.25, 1e-9) == Approx(2.5).epsilon(1e-12));
  CHECK(hardy_F(1.0, 1e-9) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("f_eps closed form agrees with quadrature") {
  for (double eps : eps_schedule()) {
    CAPTURE(eps);
    CHECK(std::abs(feps_quotient(eps) - feps_quotient_quadrature(eps)) <= 1e-8 * feps_quotient(eps));
  }
}

TEST_CASE("f_eps trace decreases toward 1") {
  const auto& s = eps_schedule();
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(feps_quotient(s[i]) < feps_quotient(s[i - 1]));
  CHECK(feps_quotient(1e-6) > 1.0);
  CHECK(feps_quotient(1e-12) < feps_quotient(1e-6));
}

TEST_CASE("numeric Hardy constants") {
  const auto half = hardy_constant_numeric(0.5, 4096);
  CHECK(std::abs(half.value - 2.0) <= 1e-4);
  const auto one = hardy_constant_numeric(1.0, 1024);
  CHECK(one.value >= 1.0);
  CHECK(one.value <= 1.1);
  CHECK(one.fine_value < one.value);
  const auto zero = hardy_constant_numeric(0.0, 1024);
  // odd Neumann problem on (0,1) with unit weight: (pi/2)^2
  CHECK(zero.value == Approx(M_PI * M_PI / 4.0).epsilon(1e-5));
  CHECK_THROWS(hardy_constant_numeric(0.5, 16));
}

TEST_CASE("Hardy inequality on random zero-mean polynomials") {
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(p);
    const auto r = hardy_check_full(p, random_polynomials(11, 25));
    CHECK(r.all_passed);
    CHECK(r.min_margin >= -1e-12);
    CHECK(r.C == Approx(hardy_m(p)));
  }
}

TEST_CASE("random polynomials are deterministic") {
  CHECK(random_polynomials(3, 4) == random_polynomials(3, 4));
  CHECK(random_polynomials(3, 4) != random_polynomials(4, 4));
}

TEST_CASE("hardy report") {
  const auto r = hardy_report(1.0, 512);
  CHECK(r.m == 1.0);
  CHECK(r.numeric_C_upper >= r.m);
  CHECK(r.eps_trace.size() == eps_schedule().size());
}
