#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "invspec/errors.hpp"
#include "invspec/families.hpp"
#include "invspec/geometry.hpp"
#include "invspec/io.hpp"
#include "invspec/quadrature.hpp"

using namespace invspec;
using doctest::Approx;

namespace {

InvariantMetric fam(FamilyKind k) { return make_family(k); }

}  // namespace

TEST_CASE("tanh-sinh handles endpoint singularities") {
  // int_{-1}^{1} 1/sqrt(1-x^2) = pi, complement distances keep the poles exact
  auto r = tanh_sinh([](double, double a, double b) { return 1.0 / std::sqrt(a * b); }, -1.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == Approx(std::numbers::pi).epsilon(1e-13));
  auto l = tanh_sinh([](double, double a, double) { return std::log(a); }, 0.0, 1.0);
  CHECK(l.value == Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto rule = gauss_legendre(8);
  for (int d = 0; d <= 15; ++d) {
    const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
    CHECK(gauss_integrate([&](double x) { return std::pow(x, d); }, -1.0, 1.0, rule) ==
          Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("standard metric values") {
  const auto m = fam(family::Standard{});
  CHECK(eval_gbar(m, 0.5) == Approx(0.75));
  CHECK(eval_g(m, 0.5) == Approx(1.0 / 0.75));
  CHECK(m.is_even());
  CHECK(m.smooth_closure());
  CHECK_THROWS_AS(eval_gbar(m, 1.5), DomainError);
}

TEST_CASE("curvature identities") {
  const auto s = fam(family::Standard{});
  for (double x : {-1.0, -0.7, 0.0, 0.3, 1.0}) CHECK(*curvature(s, x) == Approx(1.0).epsilon(1e-12));

  for (double mu : {1.0, 10.0}) {
    const auto m = fam(family::Mu{mu});
    for (double x : {-0.9, -0.4, 0.0, 0.25, 0.8}) {
      CHECK(*curvature(m, x) == Approx(1.0 + 2.0 * mu * (1.0 - 3.0 * x * x)).epsilon(1e-12));
      CHECK(curvature_finite_difference(m, x) == Approx(*curvature(m, x)).epsilon(1e-6));
    }
    CHECK(*curvature(m, 1.0) == Approx(1.0 - 4.0 * mu).epsilon(1e-8));
    CHECK(*curvature(m, -1.0) == Approx(1.0 - 4.0 * mu).epsilon(1e-8));
  }
  CHECK(*curvature(fam(family::Mu{1.0}), 1.0) == Approx(-3.0));

  for (double nu : {1.0, 10.0}) {
    const auto m = fam(family::Nu{nu});
    CHECK(*curvature(m, 1.0) == Approx(1.0 + 4.0 * nu).epsilon(1e-8));
    CHECK(*curvature(m, -1.0) == Approx(1.0 + 4.0 * nu).epsilon(1e-8));
    CHECK(curvature_finite_difference(m, 1.0) == Approx(1.0 + 4.0 * nu).epsilon(1e-6));
  }
  CHECK(*curvature(fam(family::Nu{1.0}), 1.0) == Approx(5.0));
  CHECK(*curvature(fam(family::Rho{30.0}), 1.0) == Approx(1.0).epsilon(1e-8));

  for (auto k : {FamilyKind{family::Rho{6.0}}, FamilyKind{family::Ellipsoid{0.6}},
                 FamilyKind{family::ExampleSmall{100.0, 0.25}}, FamilyKind{family::ExampleLarge{100.0}}}) {
    const auto m = fam(k);
    for (double x : {-0.55, 0.05, 0.45}) {
      CAPTURE(describe_family(k));
      CAPTURE(x);
      const double K = *curvature(m, x);
      CHECK(std::abs(curvature_finite_difference(m, x) - K) <= 1e-6 * std::max(1.0, std::abs(K)));
    }
  }
}

TEST_CASE("tent curvature is undefined at the kink") {
  const auto t = fam(family::Tent{});
  CHECK_FALSE(curvature(t, 0.0).has_value());
  CHECK(*curvature(t, 0.5) == Approx(0.0));
  CHECK(t.has_kink_at_zero());
}

TEST_CASE("Gauss-Bonnet in moment coordinates") {
  for (auto k : {FamilyKind{family::Standard{}}, FamilyKind{family::Mu{10.0}}, FamilyKind{family::Rho{30.0}},
                 FamilyKind{family::Nu{10.0}}, FamilyKind{family::Ellipsoid{0.3}}, FamilyKind{family::Tent{}},
                 FamilyKind{family::ExampleSmall{1e3, 0.25}}, FamilyKind{family::ExampleLarge{1e4}}}) {
    CAPTURE(describe_family(k));
    CHECK(std::abs(total_curvature(fam(k)) - 2.0) <= 1e-8);
  }
  CHECK(std::abs(total_curvature(random_embeddable(3)) - 2.0) <= 1e-8);
}

TEST_CASE("diameters") {
  CHECK(std::abs(diameter(fam(family::Standard{})) - std::numbers::pi) <= 1e-8);
  CHECK(std::abs(diameter(fam(family::Tent{})) - 2.0 * std::numbers::sqrt2) <= 1e-10);
  // D(nu) = int sqrt(1/(1-x^2) + nu) grows with nu
  CHECK(diameter(fam(family::Nu{10.0})) > diameter(fam(family::Nu{1.0})));
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(diameter(random_embeddable(seed)) > 2.0 * std::numbers::sqrt2);
}

TEST_CASE("closure and embeddability") {
  const auto s = check_closure(fam(family::Standard{}));
  CHECK(s.is_smooth_closed);
  CHECK(s.dgbar_at_minus1 == Approx(2.0));
  CHECK(s.dgbar_at_plus1 == Approx(-2.0));

  CHECK(check_embeddable(fam(family::Standard{})).is_embeddable);
  CHECK(check_embeddable(fam(family::Ellipsoid{0.5})).is_embeddable);
  CHECK(check_embeddable(fam(family::Tent{})).below_tent);
  CHECK(check_embeddable(fam(family::Ellipsoid{2.0})).is_embeddable);
  // |gbar'| reaches 2 + 4 mu at the poles
  const auto mu = check_embeddable(fam(family::Mu{1.0}));
  CHECK_FALSE(mu.is_embeddable);
  CHECK(mu.max_abs_dgbar > 2.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(check_embeddable(random_embeddable(seed)).is_embeddable);
}

TEST_CASE("profile <-> metric roundtrip") {
  for (auto k : {FamilyKind{family::Standard{}}, FamilyKind{family::Ellipsoid{0.5}}}) {
    const auto m = fam(k);
    const auto prof = profile_from_metric(m);
    CHECK(profile_area(prof) == Approx(2.0).epsilon(1e-9));
    const auto back = metric_from_profile(prof);
    for (double x : {-0.99, -0.5, 0.0, 0.3, 0.95}) CHECK(std::abs(back.gbar(x) - m.gbar(x)) <= 1e-6);
  }
  const auto t = profile_from_metric(fam(family::Standard{}), 101);
  CHECK(t.length == Approx(std::numbers::pi).epsilon(1e-10));
  CHECK(t.samples.front().p == Approx(0.0));
  CHECK(t.samples[50].p == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ellipsoid profile normalizes to the analytic family") {
  const auto raw = ellipsoid_profile(0.7);
  const auto m = metric_from_profile(normalize_profile_area(raw));
  const auto e = fam(family::Ellipsoid{0.7});
  for (double x : {-0.9, -0.2, 0.4, 0.99}) CHECK(std::abs(m.gbar(x) - e.gbar(x)) <= 1e-6);
}

TEST_CASE("profile validation") {
  auto prof = profile_from_metric(fam(family::Standard{}), 65);
  auto scaled = prof;
  for (auto& s : scaled.samples) {
    s.t *= 2.0;
    s.p *= 2.0;
    s.q *= 2.0;
  }
  scaled.length *= 2.0;
  CHECK_THROWS_AS(metric_from_profile(scaled), NormalizationError);
  auto open = prof;
  open.samples.back().p = 0.1;
  CHECK_THROWS_AS(metric_from_profile(open), InputError);
  CHECK_THROWS_AS(profile_from_metric(fam(family::Mu{1.0})), EmbeddabilityError);
}

TEST_CASE("CSV readers") {
  std::istringstream ok("x,gbar\n-1,0\n-0.5,0.75\n0,1\n0.5,0.75\n1,0\n");
  const auto m = read_metric_csv(ok);
  CHECK(m.is_even());
  CHECK(m.gbar(0.0) == Approx(1.0));
  std::istringstream bad_header("x,g\n-1,0\n1,0\n");
  CHECK_THROWS_AS(read_metric_csv(bad_header), InputError);
  std::istringstream bad_number("x,gbar\n-1,0\n0,abc\n1,0\n");
  CHECK_THROWS_AS(read_metric_csv(bad_number), InputError);

  std::ostringstream out;
  write_profile_csv(out, profile_from_metric(fam(family::Standard{}), 33));
  std::istringstream in(out.str());
  const auto prof = read_profile_csv(in);
  CHECK(prof.samples.size() == 33);
  const auto back = metric_from_profile(normalize_profile_area(prof));
  CHECK(std::abs(back.gbar(0.5) - 0.75) <= 1e-4);
}
