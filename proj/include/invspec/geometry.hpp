#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "invspec/metric.hpp"
#include "invspec/quadrature.hpp"

namespace invspec {

struct ClosureReport {
  double gbar_at_minus1 = 0.0;
  double gbar_at_plus1 = 0.0;
  double dgbar_at_minus1 = 0.0;
  double dgbar_at_plus1 = 0.0;
  bool is_smooth_closed = false;
  double tolerance = 0.0;
};

struct EmbeddabilityReport {
  double max_abs_dgbar = 0.0;
  double argmax = 0.0;
  bool closure_ok = false;
  bool below_tent = false;  // gbar <= 2(1 - |x|) on the test grid
  bool is_embeddable = false;
  int grid_points = 0;
};

struct ProfileSample {
  double t = 0.0;
  double p = 0.0;
  double q = 0.0;
};

/// Arclength-parametrized generating curve of a surface of revolution.
struct ProfileCurve {
  std::vector<ProfileSample> samples;
  double length = 0.0;
};

double eval_gbar(const InvariantMetric& metric, double x);
double eval_g(const InvariantMetric& metric, double x);

/// Gauss curvature K = -gbar''/2. Empty at the tent kink.
std::optional<double> curvature(const InvariantMetric& metric, double x);

/// -gbar''/2 from values only: Richardson-improved central differences
/// inside, one-sided stencils at the poles. Independent of the jets.
double curvature_finite_difference(const InvariantMetric& metric, double x, double h = 1e-3);

/// Integral of K over [-1, 1], including the point mass at a kink.
double total_curvature(const InvariantMetric& metric);

/// Pole-to-pole distance, the integral of gbar^(-1/2). Throws DivergenceError
/// when gbar vanishes inside.
double diameter(const InvariantMetric& metric);

ClosureReport check_closure(const InvariantMetric& metric);
EmbeddabilityReport check_embeddable(const InvariantMetric& metric);

/// Samples at x_i = -cos(pi i / (n-1)). Throws EmbeddabilityError when
/// |gbar'| exceeds 2 somewhere.
ProfileCurve profile_from_metric(const InvariantMetric& metric, int n_samples = 4097);

/// Throws NormalizationError unless the profile area integral is 2 to 1e-6.
InvariantMetric metric_from_profile(const ProfileCurve& profile);

/// Uniform scaling making the integral of p dt equal to 2.
ProfileCurve normalize_profile_area(const ProfileCurve& profile);

/// Integral of p dt by piecewise cubic interpolation.
double profile_area(const ProfileCurve& profile);

/// Raw (unnormalized) meridian of the ellipsoid with semi-axes (1, 1, aspect).
ProfileCurve ellipsoid_profile(double aspect, int n_samples = 4097);

/// Integrate f(MomentPoint) over [a, b], split at the sorted cut points
/// lying strictly inside.
template <class F>
QuadratureResult integrate_moment(const std::vector<double>& breaks, double a, double b, F&& f,
                                  const QuadratureOptions& opt = {}) {
  std::vector<double> cuts{a};
  for (auto it = std::upper_bound(breaks.begin(), breaks.end(), a); it != breaks.end() && *it < b; ++it)
    cuts.push_back(*it);
  cuts.push_back(b);
  QuadratureResult total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    QuadratureOptions local = opt;
    local.abs_tol = opt.abs_tol * (hi - lo) / (b - a);
    const auto r = tanh_sinh(
        [&](double x, double fa, double tb) { return f(MomentPoint::on_piece(x, lo, hi, fa, tb)); }, lo, hi, local);
    total.value += r.value;
    total.last_delta += r.last_delta;
    total.evaluations += r.evaluations;
    total.levels = std::max(total.levels, r.levels);
    total.converged = total.converged && r.converged;
  }
  return total;
}

template <class F>
QuadratureResult integrate_moment(const InvariantMetric& metric, double a, double b, F&& f,
                                  const QuadratureOptions& opt = {}) {
  return integrate_moment(metric.breakpoints(), a, b, std::forward<F>(f), opt);
}

}  // namespace invspec
