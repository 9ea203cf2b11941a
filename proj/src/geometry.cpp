#include "invspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "invspec/errors.hpp"

namespace invspec {

namespace {

double value_at(const InvariantMetric& m, double x) {
  return m.gbar_jet(MomentPoint::at(std::clamp(x, -1.0, 1.0))).v;
}

MomentPoint left_pole() { return {-1.0, 0.0, 2.0}; }
MomentPoint right_pole() { return {1.0, 2.0, 0.0}; }

// Integral of a tabulated function over each interval [t_i, t_{i+1}] using
// the cubic through the four nearest samples and a 3-point Gauss rule.
std::vector<double> cumulative_cubic(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> cum(n, 0.0);
  static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = t[i], b = t[i + 1];
    double piece;
    if (n < 4) {
      piece = 0.5 * (b - a) * (y[i] + y[i + 1]);
    } else {
      std::size_t s = (i == 0) ? 0 : i - 1;
      s = std::min(s, n - 4);
      piece = 0.0;
      for (int g = 0; g < 3; ++g) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[g];
        double val = 0.0;
        for (std::size_t j = s; j < s + 4; ++j) {
          double l = 1.0;
          for (std::size_t k = s; k < s + 4; ++k)
            if (k != j) l *= (x - t[k]) / (t[j] - t[k]);
          val += y[j] * l;
        }
        piece += gw[g] * val;
      }
      piece *= 0.5 * (b - a);
    }
    cum[i + 1] = cum[i] + piece;
  }
  return cum;
}

void validate_profile(const ProfileCurve& profile) {
  const auto& s = profile.samples;
  if (s.size() < 3) throw InputError("profile needs at least 3 samples");
  if (s.front().t != 0.0) throw InputError("profile arclength must start at 0");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i + 1].t > s[i].t)) throw InputError("profile arclength must be strictly increasing");
  for (const auto& p : s)
    if (!(p.p >= 0.0) || !std::isfinite(p.p) || !std::isfinite(p.q)) throw InputError("profile radius must be >= 0");
}

}  // namespace

double eval_gbar(const InvariantMetric& metric, double x) { return metric.gbar(x); }
double eval_g(const InvariantMetric& metric, double x) { return metric.g(x); }

std::optional<double> curvature(const InvariantMetric& metric, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("curvature: x must lie in [-1, 1]");
  if (metric.has_kink_at_zero() && x == 0.0) return std::nullopt;
  if (metric.is_analytic()) {
    const MomentPoint p = x == -1.0 ? left_pole() : x == 1.0 ? right_pole() : MomentPoint::at(x);
    return -0.5 * metric.gbar_jet(p).s;
  }
  // samples: second difference with the local grid spacing
  const auto grid = metric.samples()->grid();
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - grid.begin()), 1, grid.size() - 1);
  const double h = grid[i] - grid[i - 1];
  double d2;
  if (x - h < -1.0)
    d2 = (value_at(metric, x) - 2.0 * value_at(metric, x + h) + value_at(metric, x + 2.0 * h)) / (h * h);
  else if (x + h > 1.0)
    d2 = (value_at(metric, x) - 2.0 * value_at(metric, x - h) + value_at(metric, x - 2.0 * h)) / (h * h);
  else
    d2 = (value_at(metric, x + h) - 2.0 * value_at(metric, x) + value_at(metric, x - h)) / (h * h);
  return -0.5 * d2;
}

double curvature_finite_difference(const InvariantMetric& metric, double x, double h) {
  const bool central = x - 2.0 * h >= -1.0 && x + 2.0 * h <= 1.0;
  auto second = [&](double step) {
    if (central)
      return (value_at(metric, x + step) - 2.0 * value_at(metric, x) + value_at(metric, x - step)) / (step * step);
    // one-sided, fourth order
    static constexpr double c[] = {45.0, -154.0, 214.0, -156.0, 61.0, -10.0};
    const double s = (x + 5.0 * step > 1.0) ? -step : step;
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) acc += c[i] * value_at(metric, x + i * s);
    return acc / (12.0 * step * step);
  };
  const double coarse = second(h), fine = second(0.5 * h);
  return central ? -0.5 * (4.0 * fine - coarse) / 3.0 : -0.5 * (16.0 * fine - coarse) / 15.0;
}

double total_curvature(const InvariantMetric& metric) {
  const auto breaks = metric.breakpoints();
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  double total =
      integrate_moment(breaks, -1.0, 1.0, [&](const MomentPoint& p) { return -0.5 * metric.gbar_jet(p).s; }, opt)
          .value;
  // point masses where gbar' jumps
  for (double b : breaks) {
    if (b <= -1.0 || b >= 1.0) continue;
    const double l = std::nextafter(b, -2.0), r = std::nextafter(b, 2.0);
    const double jump = metric.gbar_jet(MomentPoint::at(r)).d - metric.gbar_jet(MomentPoint::at(l)).d;
    if (std::abs(jump) > 1e-6) total += -0.5 * jump;
  }
  return total;
}

double diameter(const InvariantMetric& metric) {
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  bool vanished = false;
  const auto r = integrate_moment(metric, -1.0, 1.0, [&](const MomentPoint& p) {
    const double v = metric.gbar_jet(p).v;
    if (!(v > 0.0)) {
      if (p.lo > 0.0 && p.hi > 0.0) vanished = true;
      return 0.0;
    }
    return 1.0 / std::sqrt(v);
  }, opt);
  if (vanished || !std::isfinite(r.value)) throw DivergenceError("diameter: gbar vanishes inside (-1, 1)");
  if (!r.converged && r.last_delta > 1e-6 * std::abs(r.value))
    throw DivergenceError("diameter: quadrature did not settle; the integral appears to diverge");
  return r.value;
}

ClosureReport check_closure(const InvariantMetric& metric) {
  ClosureReport rep;
  if (metric.is_analytic()) {
    const Jet a = metric.gbar_jet(left_pole()), b = metric.gbar_jet(right_pole());
    rep.gbar_at_minus1 = a.v;
    rep.gbar_at_plus1 = b.v;
    rep.dgbar_at_minus1 = a.d;
    rep.dgbar_at_plus1 = b.d;
    rep.tolerance = 1e-6;
  } else {
    const auto x = metric.samples()->grid();
    const auto y = metric.samples()->values();
    const std::size_t n = x.size();
    auto one_sided = [](double h0, double h1, double y0, double y1, double y2) {
      return -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y0 + (h0 + h1) / (h0 * h1) * y1 - h0 / (h1 * (h0 + h1)) * y2;
    };
    rep.gbar_at_minus1 = y[0];
    rep.gbar_at_plus1 = y[n - 1];
    rep.dgbar_at_minus1 = one_sided(x[1] - x[0], x[2] - x[1], y[0], y[1], y[2]);
    rep.dgbar_at_plus1 = -one_sided(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], y[n - 1], y[n - 2], y[n - 3]);
    rep.tolerance = 10.0 * metric.samples()->max_spacing();
  }
  const double tol = rep.tolerance;
  rep.is_smooth_closed = std::abs(rep.gbar_at_minus1) <= tol && std::abs(rep.gbar_at_plus1) <= tol &&
                         std::abs(rep.dgbar_at_minus1 - 2.0) <= tol && std::abs(rep.dgbar_at_plus1 + 2.0) <= tol;
  return rep;
}

EmbeddabilityReport check_embeddable(const InvariantMetric& metric) {
  EmbeddabilityReport rep;
  rep.closure_ok = check_closure(metric).is_smooth_closed;
  const auto breaks = metric.breakpoints();
  double prev = -1.0;
  for (int n = 257;; n = 2 * n - 1) {
    double best = 0.0, where = 0.0;
    bool below = true;
    auto visit = [&](const MomentPoint& p) {
      const Jet j = metric.gbar_jet(p);
      if (std::abs(j.d) > best) {
        best = std::abs(j.d);
        where = p.x;
      }
      if (j.v > 2.0 * std::min(p.lo, p.hi) + 1e-9) below = false;
    };
    for (int i = 0; i < n; ++i) {
      const double th = std::numbers::pi * i / (n - 1);
      // x = -cos(th); distances to the poles from half-angle identities
      const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);
      visit({-std::cos(th), 2.0 * s * s, 2.0 * c * c});
    }
    for (double b : breaks) {
      visit(MomentPoint::at(std::nextafter(b, -2.0)));
      visit(MomentPoint::at(std::nextafter(b, 2.0)));
    }
    rep.max_abs_dgbar = best;
    rep.argmax = where;
    rep.below_tent = below;
    rep.grid_points = n;
    if ((prev >= 0.0 && std::abs(best - prev) <= 1e-12 * std::max(1.0, best)) || n > 65536) break;
    prev = best;
  }
  rep.is_embeddable = rep.max_abs_dgbar <= 2.0 + 1e-9 && rep.closure_ok && rep.below_tent;
  return rep;
}

ProfileCurve profile_from_metric(const InvariantMetric& metric, int n_samples) {
  if (n_samples < 3) throw InputError("profile_from_metric: need at least 3 samples");
  if (n_samples % 2 == 0) ++n_samples;
  const auto emb = check_embeddable(metric);
  if (emb.max_abs_dgbar > 2.0 + 1e-9)
    throw EmbeddabilityError("profile_from_metric: |gbar'| reaches " + std::to_string(emb.max_abs_dgbar) +
                             " > 2, no surface of revolution realizes this metric");
  const auto breaks = metric.breakpoints();
  const int n = n_samples;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -std::cos(std::numbers::pi * i / (n - 1));
  x.front() = -1.0;
  x.back() = 1.0;
  x[(n - 1) / 2] = 0.0;

  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  auto dt = [&](const MomentPoint& p) {
    const double v = metric.gbar_jet(p).v;
    return v > 0.0 ? 1.0 / std::sqrt(v) : 0.0;
  };
  auto dq = [&](const MomentPoint& p) {
    const Jet j = metric.gbar_jet(p);
    if (!(j.v > 0.0)) return 0.0;
    const double half = 0.5 * j.d;
    return std::sqrt(std::max(0.0, (1.0 - half) * (1.0 + half))) / std::sqrt(j.v);
  };

  ProfileCurve out;
  out.samples.resize(n);
  double t = 0.0, q = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      t += integrate_moment(breaks, x[i - 1], x[i], dt, opt).value;
      q += integrate_moment(breaks, x[i - 1], x[i], dq, opt).value;
    }
    const double v = (i == 0 || i == n - 1) ? metric.gbar_jet(i == 0 ? left_pole() : right_pole()).v
                                            : metric.gbar_jet(MomentPoint::at(x[i])).v;
    out.samples[i] = {t, std::sqrt(std::max(v, 0.0)), q};
  }
  const double height = q;
  for (auto& s : out.samples) s.q -= 0.5 * height;
  out.length = t;
  return out;
}

double profile_area(const ProfileCurve& profile) {
  validate_profile(profile);
  std::vector<double> t, p;
  for (const auto& s : profile.samples) {
    t.push_back(s.t);
    p.push_back(s.p);
  }
  return cumulative_cubic(t, p).back();
}

InvariantMetric metric_from_profile(const ProfileCurve& profile) {
  validate_profile(profile);
  const auto& s = profile.samples;
  std::vector<double> t, p;
  double pmax = 0.0;
  for (const auto& e : s) {
    t.push_back(e.t);
    p.push_back(e.p);
    pmax = std::max(pmax, e.p);
  }
  if (s.front().p > 1e-9 * std::max(pmax, 1.0) || s.back().p > 1e-9 * std::max(pmax, 1.0))
    throw InputError("profile radius must vanish at both ends");
  const auto cum = cumulative_cubic(t, p);
  const double area = cum.back();
  if (std::abs(area - 2.0) > 1e-6)
    throw NormalizationError("profile area integral is " + std::to_string(area) + ", expected 2");
  const std::size_t n = s.size();
  std::vector<double> x(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = -1.0 + 2.0 * cum[i] / area;
    g[i] = p[i] * p[i];
  }
  x.front() = -1.0;
  x.back() = 1.0;
  g.front() = 0.0;
  g.back() = 0.0;
  return InvariantMetric::sampled(std::move(x), std::move(g));
}

ProfileCurve normalize_profile_area(const ProfileCurve& profile) {
  const double area = profile_area(profile);
  if (!(area > 0.0) || !std::isfinite(area)) throw NormalizationError("profile has zero area");
  const double k = std::sqrt(2.0 / area);
  ProfileCurve out = profile;
  for (auto& e : out.samples) {
    e.t *= k;
    e.p *= k;
    e.q *= k;
  }
  out.length = profile.length * k;
  return out;
}

ProfileCurve ellipsoid_profile(double aspect, int n_samples) {
  if (!(aspect > 0.0)) throw ParameterError("ellipsoid aspect must be > 0");
  if (n_samples < 3) throw InputError("ellipsoid_profile: need at least 3 samples");
  static const GaussRule rule = gauss_legendre(16);
  ProfileCurve out;
  out.samples.resize(n_samples);
  double t = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double th = std::numbers::pi * i / (n_samples - 1);
    if (i > 0) {
      const double th0 = std::numbers::pi * (i - 1) / (n_samples - 1);
      t += gauss_integrate(
          [&](double u) { return std::hypot(std::cos(u), aspect * std::sin(u)); }, th0, th, rule);
    }
    const double p = (i == 0 || i == n_samples - 1) ? 0.0 : std::sin(th);
    out.samples[i] = {t, p, -aspect * std::cos(th)};
  }
  out.length = t;
  return out;
}

}  // namespace invspec
