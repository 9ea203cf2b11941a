#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "invspec/errors.hpp"
#include "invspec/families.hpp"
#include "invspec/mesh.hpp"
#include "invspec/pencil.hpp"
#include "invspec/special.hpp"
#include "invspec/spectrum.hpp"

using namespace invspec;
using doctest::Approx;

TEST_CASE("meshes") {
  const auto g = graded_mesh(64);
  CHECK(g.x.size() == 65);
  CHECK(g.x.front() == -1.0);
  CHECK(g.x.back() == 1.0);
  CHECK(g.x[32] == 0.0);
  for (std::size_t i = 0; i < 32; ++i) CHECK(g.x[i] == -g.x[64 - i]);
  // cells shrink toward the poles
  CHECK(g.x[1] - g.x[0] < g.x[33] - g.x[32]);
  const auto h = half_mesh(64);
  CHECK(h.elements() == 32);
  CHECK(h.x.front() == 0.0);
  CHECK(h.x.back() == 1.0);
  CHECK_THROWS_AS(graded_mesh(63), MeshError);
  Mesh bad{{-1.0, 0.5, 0.2, 1.0}, Grading::Uniform};
  CHECK_THROWS_AS(validate_mesh(bad), MeshError);
}

TEST_CASE("assembled pencil is symmetric positive") {
  const auto d = assemble(make_family(family::Standard{}), 0, graded_mesh(64));
  CHECK(d.stiffness.size() == 65);
  for (double v : d.mass.diag) CHECK(v > 0.0);
  // constants are in the kernel of the stiffness
  const auto k1 = multiply(d.stiffness, std::vector<double>(65, 1.0));
  for (double v : k1) CHECK(std::abs(v) < 1e-12);
  CHECK(sturm_count(d, -1e-9) == 0);
  CHECK(sturm_count(d, 2.5) == 2);
}

TEST_CASE("tent needs a node at the kink") {
  const auto t = make_family(family::Tent{});
  Mesh odd{{-1.0, -0.3, 0.4, 1.0}, Grading::Uniform};
  CHECK_THROWS_AS(assemble(t, 0, odd), MeshError);
}

TEST_CASE("round sphere spectrum") {
  const auto s = invariant_spectrum(make_family(family::Standard{}), 4, 4096);
  const double want[] = {2.0, 6.0, 12.0, 20.0};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(s.eigenvalues[j] - want[j]) <= 1e-5 * want[j]);
    CHECK(s.error_estimates[j] >= 0.0);
  }
  CHECK(s.parity[0] == Parity::Odd);
  CHECK(s.parity[1] == Parity::Even);
  CHECK(s.parity[2] == Parity::Odd);
  CHECK(s.parity[3] == Parity::Even);
  CHECK(s.raw_fine[0] <= s.raw_coarse[0]);
}

TEST_CASE("Fourier mode spectrum of the round sphere") {
  // mode m sees l(l+1) for l >= m
  const auto s1 = mode_spectrum(make_family(family::Standard{}), 1, 3, 2048);
  CHECK(s1.eigenvalues[0] == Approx(2.0).epsilon(1e-6));
  CHECK(s1.eigenvalues[1] == Approx(6.0).epsilon(1e-6));
  CHECK(s1.eigenvalues[2] == Approx(12.0).epsilon(1e-6));
  const auto s2 = mode_spectrum(make_family(family::Standard{}), 2, 2, 2048);
  CHECK(s2.eigenvalues[0] == Approx(6.0).epsilon(1e-6));
  CHECK(s2.eigenvalues[1] == Approx(12.0).epsilon(1e-6));
}

TEST_CASE("tent spectrum from the pencil matches Bessel zeros") {
  const auto s = invariant_spectrum(make_family(family::Tent{}), 4, 4096);
  const auto t = tent_spectrum(4);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s.eigenvalues[j] - t[j]) <= 1e-4 * t[j]);
  CHECK(std::abs(s.eigenvalues[0] - 2.8916) <= 1e-3);
}

TEST_CASE("parity split reproduces the full invariant spectrum") {
  for (auto k : {FamilyKind{family::Standard{}}, FamilyKind{family::Tent{}}, FamilyKind{family::Ellipsoid{0.5}},
                 FamilyKind{family::Nu{10.0}}}) {
    CAPTURE(describe_family(k));
    const auto m = make_family(k);
    const auto full = invariant_spectrum(m, 4, 2048);
    const auto odd = parity_spectrum(m, Parity::Odd, 2, 2048);
    const auto even = parity_spectrum(m, Parity::Even, 2, 2048);
    std::vector<double> merged{odd.eigenvalues[0], odd.eigenvalues[1], even.eigenvalues[0], even.eigenvalues[1]};
    std::sort(merged.begin(), merged.end());
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(merged[j] - full.eigenvalues[j]) <= 1e-6 * full.eigenvalues[j] + full.error_estimates[j]);
  }
  CHECK_THROWS_AS(parity_spectrum(random_embeddable(2), Parity::Odd, 1, 512), ParityError);
}

TEST_CASE("mu and nu family bounds") {
  for (double mu : {1.0, 10.0}) {
    const auto s = invariant_spectrum(make_family(family::Mu{mu}), 1, 2048);
    CHECK(s.eigenvalues[0] + s.error_estimates[0] >= mu + 2.0);
  }
  for (double nu : {1.0, 10.0, 100.0}) {
    const auto s = invariant_spectrum(make_family(family::Nu{nu}), 1, 2048);
    CHECK(s.eigenvalues[0] + s.error_estimates[0] < bound_lambda1_nu(nu).value);
  }
}

TEST_CASE("full spectrum interleaves modes") {
  const auto f = full_spectrum(make_family(family::Standard{}), 3, 8, 2048);
  // 2 (x3), 6 (x5)
  for (int i = 0; i < 3; ++i) CHECK(f[i].value == Approx(2.0).epsilon(1e-6));
  for (int i = 3; i < 8; ++i) CHECK(f[i].value == Approx(6.0).epsilon(1e-6));
  CHECK(f[0].mode == 0);
  CHECK(f[1].mode == 1);
  CHECK(f[1].multiplicity == 2);

  const auto e = full_spectrum(make_family(family::Ellipsoid{0.8}), 3, 3, 2048);
  CHECK(e[0].mode == 1);
  CHECK(e[1].mode == 1);
  CHECK(e[2].mode == 0);
  CHECK(e[2].value > 2.0 + e[2].error_estimate);
  CHECK_THROWS_AS(full_spectrum(make_family(family::Standard{}), 2, 20, 512), TailSafetyError);
}

TEST_CASE("Rayleigh quotient is an upper bound") {
  const auto m = make_family(family::Standard{});
  // P_1 = x is an eigenfunction
  CHECK(rayleigh_quotient(m, [](double x) { return x; }, [](double) { return 1.0; }) == Approx(2.0).epsilon(1e-12));
  const double r = rayleigh_quotient(m, [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; });
  CHECK(r >= 2.0);
  const auto s = invariant_spectrum(m, 1, 512);
  CHECK(rayleigh_quotient(m, s.nodes, s.eigenfunctions[0]) == Approx(s.raw_coarse[0]).epsilon(1e-9));
}

TEST_CASE("argument validation") {
  const auto m = make_family(family::Standard{});
  CHECK_THROWS_AS(invariant_spectrum(m, 0, 512), ParameterError);
  CHECK_THROWS_AS(invariant_spectrum(m, 2, 16), ParameterError);
  CHECK_THROWS_AS(mode_spectrum(m, -1, 2, 512), ParameterError);
}
