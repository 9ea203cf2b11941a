#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "invspec/jet.hpp"

namespace invspec {

/// A point of the moment interval [-1, 1] together with its distances to the
/// two ends, lo = 1 + x and hi = 1 - x. Quadrature near the poles supplies
/// these exactly; elsewhere they are formed from x.
struct MomentPoint {
  double x = 0.0;
  double lo = 1.0;
  double hi = 1.0;

  static MomentPoint at(double x) { return {x, 1.0 + x, 1.0 - x}; }
  // From a quadrature node on [a, b] with exact offsets to both ends.
  static MomentPoint on_piece(double x, double a, double b, double from_a, double to_b) {
    return {x, (1.0 + a) + from_a, (1.0 - b) + to_b};
  }
};

namespace family {

struct Standard {};
struct Mu {
  double mu;
};
struct Rho {
  double rho;
};
struct Nu {
  double nu;
};
// Double flat disc, gbar = 2(1 - |x|).
struct Tent {};
// Ellipsoid of revolution with semi-axes (a, a, c), aspect = c / a, scaled to area 4*pi.
struct Ellipsoid {
  double aspect;
};
// Small-diameter, small-eigenvalue example; stored through g.
struct ExampleSmall {
  double mu;
  double alpha;
};
// Large-diameter, large-eigenvalue example; stored through g.
struct ExampleLarge {
  double mu;
};
// gbar = (1-x^2) + sum_k c_k (1-x^2)^2 x^k, k = 0..4.
struct Perturbed {
  std::array<double, 5> coeffs;
};

}  // namespace family

using FamilyKind = std::variant<family::Standard, family::Mu, family::Rho, family::Nu, family::Tent,
                                family::Ellipsoid, family::ExampleSmall, family::ExampleLarge,
                                family::Perturbed>;

/// Canonical text form, e.g. "mu:10" or "ex-small:10000,0.25".
std::string describe_family(const FamilyKind& kind);

/// Tabulated profile gbar_i on a strictly increasing grid from -1 to 1,
/// interpolated by a C^1 monotonicity-preserving cubic Hermite spline.
class SampledProfile {
 public:
  SampledProfile(std::vector<double> x, std::vector<double> gbar);

  Jet eval(const MomentPoint& p) const;

  std::span<const double> grid() const { return x_; }
  std::span<const double> values() const { return y_; }
  std::span<const double> slopes() const { return d_; }
  double max_spacing() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// An S^1-invariant metric of area 4*pi on the sphere, encoded by its
/// moment-coordinate profile gbar = 1/g on [-1, 1].
class InvariantMetric {
 public:
  // Throws ParameterError when the family parameters are out of range.
  static InvariantMetric analytic(const FamilyKind& kind);
  // Throws InputError when the samples violate the grid or positivity invariants.
  static InvariantMetric sampled(std::vector<double> x, std::vector<double> gbar);

  /// gbar with its first two x-derivatives. Exact for analytic families,
  /// spline derivatives for samples. At the tent kink the derivative is 0.
  Jet gbar_jet(const MomentPoint& p) const;

  /// g = 1/gbar at an interior point. Families printed in terms of g are
  /// evaluated directly rather than through the reciprocal.
  double g_at(const MomentPoint& p) const;

  // Domain-checked scalar access; x must lie in [-1, 1] (resp. (-1, 1) for g).
  double gbar(double x) const;
  double g(double x) const;

  bool is_even() const { return even_; }
  bool smooth_closure() const { return closure_; }
  bool has_kink_at_zero() const;
  bool is_analytic() const { return std::holds_alternative<FamilyKind>(rep_); }

  /// Points where the profile may lose smoothness, including -1, 0 and 1.
  /// Integrals over [-1, 1] are split here.
  std::vector<double> breakpoints() const;

  const FamilyKind* family() const { return std::get_if<FamilyKind>(&rep_); }
  const SampledProfile* samples() const;

  std::string describe() const;

 private:
  using Rep = std::variant<FamilyKind, std::shared_ptr<const SampledProfile>>;
  InvariantMetric(Rep rep, bool even, bool closure) : rep_(std::move(rep)), even_(even), closure_(closure) {}

  Rep rep_;
  bool even_ = false;
  bool closure_ = false;
};

namespace detail {
// Ellipsoid profile in moment coordinates: solves x(v) for the polar
// parameter v = -cos(theta) and returns gbar with derivatives.
Jet ellipsoid_gbar(double aspect, const MomentPoint& p);
// Squared equatorial radius a^2 of the area-normalized ellipsoid.
double ellipsoid_radius_sq(double aspect);
}  // namespace detail

}  // namespace invspec
