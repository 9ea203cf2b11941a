#include "doctest.h"

#include <cmath>
#include <numbers>

#include "invspec/errors.hpp"
#include "invspec/families.hpp"
#include "invspec/geometry.hpp"
#include "invspec/spectrum.hpp"

using namespace invspec;
using doctest::Approx;

TEST_CASE("family specs parse and print") {
  CHECK(format_family(parse_family("standard")) == "standard");
  CHECK(format_family(parse_family("mu:10")) == "mu:10");
  CHECK(format_family(parse_family("ex-small:100,0.25")) == "ex-small:100,0.25");
  CHECK(format_family(parse_family("ellipsoid:0.8")) == "ellipsoid:0.8");
  CHECK(std::holds_alternative<family::Tent>(parse_family("tent")));
  CHECK_THROWS_AS(parse_family("mu"), InputError);
  CHECK_THROWS_AS(parse_family("mu:abc"), InputError);
  CHECK_THROWS_AS(parse_family("cube"), InputError);
  CHECK_THROWS(make_family(parse_family("mu:-1")));
  CHECK_THROWS(make_family(parse_family("ex-small:10,0.7")));
  CHECK_THROWS(make_family(parse_family("ex-large:0.5")));
}

TEST_CASE("closed-form metrics") {
  const double x = 0.4, q = 1.0 - x * x;
  CHECK(make_family(family::Mu{3.0}).g(x) == Approx(1.0 / (q * (1.0 + 3.0 * q))));
  CHECK(make_family(family::Rho{5.0}).gbar(x) == Approx(q * (1.0 + 5.0 * q * q)));
  CHECK(make_family(family::Nu{2.0}).g(x) == Approx(1.0 / q + 2.0));
  CHECK(make_family(family::Tent{}).gbar(x) == Approx(2.0 * (1.0 - x)));
}

TEST_CASE("lambda_1 bounds") {
  CHECK(bound_lambda1_mu(10.0).value == Approx(12.0));
  CHECK(bound_lambda1_rho(6.0).value == Approx(4.0));
  CHECK(bound_lambda1_nu(1.0).value == Approx(std::numbers::pi * std::numbers::pi / 4.0));
  CHECK(bound_lambda1_mu(0.0).value == Approx(2.0));
  CHECK_THROWS_AS(bound_lambda1_mu(-1.0), ParameterError);
  CHECK_THROWS_AS(bound_lambda1_nu(0.0), ParameterError);
}

TEST_CASE("A functional") {
  // (1-x) atanh(x) on the round sphere
  const auto s = a_functional(make_family(family::Standard{}));
  CHECK(s.A == Approx(0.2784645427610738).epsilon(1e-9));
  CHECK(s.lower == Approx(0.5 / s.A));
  CHECK(s.upper == Approx(1.0 / s.A));
  CHECK(s.lower <= 2.0);
  CHECK(s.upper >= 2.0);
  CHECK_THROWS_AS(a_functional(random_embeddable(1)), ParityError);
}

TEST_CASE("A bracket around lambda_1 on the listed metrics") {
  for (auto k : {FamilyKind{family::Standard{}}, FamilyKind{family::Nu{1.0}}, FamilyKind{family::Nu{10.0}},
                 FamilyKind{family::Ellipsoid{0.8}}, FamilyKind{family::Ellipsoid{0.5}}}) {
    CAPTURE(describe_family(k));
    const auto m = make_family(k);
    const auto a = a_functional(m);
    const double l1 = invariant_spectrum(m, 1, 1024).eigenvalues[0];
    CHECK(l1 >= a.lower);
    CHECK(l1 <= a.upper);
  }
}

TEST_CASE("A bracket with the Muckenhoupt factor 4 holds where factor 2 fails") {
  // g_mu at mu = 10 sits below 1/(2A); the classical 1/(4A) still bounds it
  const auto m = make_family(family::Mu{10.0});
  const auto a = a_functional(m);
  const double l1 = invariant_spectrum(m, 1, 1024).eigenvalues[0];
  CHECK(l1 < a.lower);
  CHECK(l1 >= 0.25 / a.A);
  CHECK(l1 <= a.upper);
}

TEST_CASE("Example families trends") {
  double prev_d = INFINITY, prev_inv = INFINITY;
  for (double mu : {1e2, 1e3, 1e4}) {
    const auto m = make_family(family::ExampleSmall{mu, 0.25});
    const double d = diameter(m), inv = 1.0 / a_functional(m).A;
    CHECK(d < prev_d);
    CHECK(inv < prev_inv);
    prev_d = d;
    prev_inv = inv;
  }
  prev_d = 0.0;
  prev_inv = 0.0;
  for (double mu : {1e2, 1e4, 1e6}) {
    const auto m = make_family(family::ExampleLarge{mu});
    const double d = diameter(m), lo = a_functional(m).lower;
    CHECK(d > prev_d);
    CHECK(lo > prev_inv);
    prev_d = d;
    prev_inv = lo;
  }
}

TEST_CASE("random embeddable metrics are deterministic") {
  const auto a = random_embeddable(7), b = random_embeddable(7), c = random_embeddable(8);
  CHECK(a.describe() == b.describe());
  CHECK(a.describe() != c.describe());
  CHECK(a.gbar(0.3) == b.gbar(0.3));
  CHECK(check_embeddable(a).is_embeddable);
}

TEST_CASE("with_parameter") {
  CHECK(format_family(with_parameter(family::ExampleSmall{10.0, 0.25}, "mu", 100.0)) == "ex-small:100,0.25");
  CHECK(format_family(with_parameter(family::Standard{}, "nu", 3.0)) == "nu:3");
  CHECK_THROWS_AS(with_parameter(family::Standard{}, "alpha", 0.1), InputError);
  CHECK_THROWS_AS(with_parameter(family::Standard{}, "beta", 0.1), InputError);
}
