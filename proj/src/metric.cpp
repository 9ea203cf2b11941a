#include "invspec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "invspec/errors.hpp"
#include "invspec/quadrature.hpp"

namespace invspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// (1 - x^2) as a jet built from the exact distances to the poles.
Jet one_minus_x2(const MomentPoint& p) {
  const Jet lo{p.lo, 1.0, 0.0};
  const Jet hi{p.hi, -1.0, 0.0};
  return lo * hi;
}

Jet gbar_mu(const Jet& q, double mu) { return q * (1.0 + mu * q); }

// Extra g-term of the small-diameter example: mu^(1-alpha) / (1 + mu x^2)^2.
Jet small_extra(const MomentPoint& p, double mu, double alpha) {
  const Jet x = Jet::variable(p.x);
  const Jet den = 1.0 + mu * x * x;
  return std::pow(mu, 1.0 - alpha) / (den * den);
}

// Extra g-term of the large-diameter example:
// (1/log mu) * (1 / ((1+1/mu)^2 - x^2))^2, with the difference of squares
// factored through the pole distances.
Jet large_extra(const MomentPoint& p, double mu) {
  const double e = 1.0 / mu;
  const Jet a{p.hi + e, -1.0, 0.0};
  const Jet b{p.lo + e, 1.0, 0.0};
  const Jet inv = reciprocal(a * b);
  return (inv * inv) / std::log(mu);
}

// Combine gbar_mu with an additive g-term b: 1/(1/gbar_mu + b).
Jet add_g_term(const Jet& gbar_base, const Jet& b) { return gbar_base / (1.0 + gbar_base * b); }

struct EllipsoidShape {
  double r;   // aspect c/a
  double k2;  // 1 - r^2
  double s1;  // S(1)
  double a2;  // 1 / S(1)

  explicit EllipsoidShape(double aspect) : r(aspect), k2(1.0 - aspect * aspect) {
    s1 = S(1.0);
    a2 = 1.0 / s1;
  }

  double w(double s) const { return std::sqrt(r * r + k2 * s * s); }

  // S(v) = int_0^v w(s) ds
  double S(double v) const {
    double ratio = 1.0;
    if (k2 > 0.0) {
      const double z = std::sqrt(k2) * v / r;
      if (z != 0.0) ratio = std::asinh(z) / z;
    } else if (k2 < 0.0) {
      const double z = std::sqrt(-k2) * v / r;
      if (z != 0.0) ratio = std::asin(z) / z;
    }
    return 0.5 * (v * w(v) + r * v * ratio);
  }

  // G(delta) = int_{1-delta}^1 w(s) ds, accurate for small delta.
  double G(double delta) const {
    if (delta > 0.5) return s1 - S(1.0 - delta);
    static const GaussRule rule = gauss_legendre(32);
    // integrate in u = 1 - s so that tiny delta keeps full relative accuracy
    return gauss_integrate([&](double u) { return w(1.0 - u); }, 0.0, delta, rule);
  }

  // Solve a2 * G(delta) = comp for delta in [0, 1].
  double delta_for(double comp) const {
    if (comp <= 0.0) return 0.0;
    if (comp >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    double d = std::min(comp / a2, 1.0);
    for (int it = 0; it < 200; ++it) {
      const double f = a2 * G(d) - comp;
      if (f > 0.0)
        hi = d;
      else
        lo = d;
      const double fp = a2 * w(1.0 - d);
      double next = d - f / fp;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - d);
      d = next;
      if (step <= 4e-16 * d || hi - lo <= 4e-16 * d) break;
    }
    return d;
  }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void validate(const FamilyKind& kind) {
  std::visit(overloaded{
                 [](const family::Standard&) {},
                 [](const family::Mu& f) { require(f.mu > 0.0 && std::isfinite(f.mu), "mu must be > 0"); },
                 [](const family::Rho& f) { require(f.rho > 0.0 && std::isfinite(f.rho), "rho must be > 0"); },
                 [](const family::Nu& f) { require(f.nu > 0.0 && std::isfinite(f.nu), "nu must be > 0"); },
                 [](const family::Tent&) {},
                 [](const family::Ellipsoid& f) {
                   require(f.aspect > 0.0 && std::isfinite(f.aspect), "ellipsoid aspect must be > 0");
                 },
                 [](const family::ExampleSmall& f) {
                   require(f.mu > 0.0 && std::isfinite(f.mu), "ex-small mu must be > 0");
                   require(f.alpha > 0.0 && f.alpha < 0.5, "ex-small alpha must lie in (0, 1/2)");
                 },
                 [](const family::ExampleLarge& f) {
                   require(f.mu > 1.0 && std::isfinite(f.mu), "ex-large mu must be > 1");
                 },
                 [](const family::Perturbed& f) {
                   // gbar = q (1 + q * sum c_k x^k) must stay positive inside.
                   for (int i = 1; i < 2000; ++i) {
                     const double x = -1.0 + i / 1000.0;
                     double poly = 0.0, xk = 1.0;
                     for (double c : f.coeffs) {
                       poly += c * xk;
                       xk *= x;
                     }
                     require(1.0 + (1.0 - x * x) * poly > 0.0, "perturbed profile is not positive");
                   }
                 },
             },
             kind);
}

bool family_even(const FamilyKind& kind) {
  if (const auto* p = std::get_if<family::Perturbed>(&kind)) return p->coeffs[1] == 0.0 && p->coeffs[3] == 0.0;
  return true;
}

Jet family_gbar(const FamilyKind& kind, const MomentPoint& p) {
  return std::visit(
      overloaded{
          [&](const family::Standard&) { return one_minus_x2(p); },
          [&](const family::Mu& f) { return gbar_mu(one_minus_x2(p), f.mu); },
          [&](const family::Rho& f) {
            const Jet q = one_minus_x2(p);
            return q * (1.0 + f.rho * q * q);
          },
          [&](const family::Nu& f) {
            const Jet q = one_minus_x2(p);
            return q / (1.0 + f.nu * q);
          },
          [&](const family::Tent&) {
            if (p.x > 0.0) return Jet{2.0 * p.hi, -2.0, 0.0};
            if (p.x < 0.0) return Jet{2.0 * p.lo, 2.0, 0.0};
            return Jet{2.0, 0.0, 0.0};
          },
          [&](const family::Ellipsoid& f) { return detail::ellipsoid_gbar(f.aspect, p); },
          [&](const family::ExampleSmall& f) {
            return add_g_term(gbar_mu(one_minus_x2(p), f.mu), small_extra(p, f.mu, f.alpha));
          },
          [&](const family::ExampleLarge& f) {
            return add_g_term(gbar_mu(one_minus_x2(p), f.mu), large_extra(p, f.mu));
          },
          [&](const family::Perturbed& f) {
            const Jet q = one_minus_x2(p);
            const Jet x = Jet::variable(p.x);
            Jet poly = Jet::constant(0.0);
            Jet xk = Jet::constant(1.0);
            for (double c : f.coeffs) {
              poly += c * xk;
              xk = xk * x;
            }
            return q + q * q * poly;
          },
      },
      kind);
}

}  // namespace

std::string describe_family(const FamilyKind& kind) {
  return std::visit(overloaded{
                        [](const family::Standard&) { return std::string("standard"); },
                        [](const family::Mu& f) { return "mu:" + fmt12(f.mu); },
                        [](const family::Rho& f) { return "rho:" + fmt12(f.rho); },
                        [](const family::Nu& f) { return "nu:" + fmt12(f.nu); },
                        [](const family::Tent&) { return std::string("tent"); },
                        [](const family::Ellipsoid& f) { return "ellipsoid:" + fmt12(f.aspect); },
                        [](const family::ExampleSmall& f) { return "ex-small:" + fmt12(f.mu) + "," + fmt12(f.alpha); },
                        [](const family::ExampleLarge& f) { return "ex-large:" + fmt12(f.mu); },
                        [](const family::Perturbed& f) {
                          std::string s = "perturbed:";
                          for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += (i ? "," : "") + fmt12(f.coeffs[i]);
                          return s;
                        },
                    },
                    kind);
}

namespace detail {

double ellipsoid_radius_sq(double aspect) { return EllipsoidShape(aspect).a2; }

Jet ellipsoid_gbar(double aspect, const MomentPoint& p) {
  const EllipsoidShape e(aspect);
  const bool right = p.x >= 0.0;
  const double comp = right ? p.hi : p.lo;
  const double delta = e.delta_for(comp);
  const double v = 1.0 - delta;
  const double w = e.w(v);
  const double value = e.a2 * delta * (2.0 - delta);
  const double d1 = -2.0 * v / w;
  const double d2 = -2.0 * e.r * e.r / (e.a2 * w * w * w * w);
  return {value, right ? d1 : -d1, d2};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SampledProfile

SampledProfile::SampledProfile(std::vector<double> x, std::vector<double> gbar)
    : x_(std::move(x)), y_(std::move(gbar)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw InputError("sampled profile needs at least 3 matching (x, gbar) samples");
  if (x_.front() != -1.0 || x_.back() != 1.0) throw InputError("sampled profile grid must start at -1 and end at 1");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i])) throw InputError("sampled profile grid must be strictly increasing");
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (!(y_[i] > 0.0)) throw InputError("sampled profile must be strictly positive inside (-1, 1)");
  if (y_.front() < 0.0 || y_.back() < 0.0) throw InputError("sampled profile must be non-negative");

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  auto limit = [](double d, double s0, double s1) {
    if (s0 * s1 <= 0.0) return d;  // local extremum: nothing to preserve
    const double cap = 3.0 * std::min(std::abs(s0), std::abs(s1));
    if (d * s0 <= 0.0) return 0.0;
    return std::copysign(std::min(std::abs(d), cap), s0);
  };
  d_.resize(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double c = (h[i] * slope[i - 1] + h[i - 1] * slope[i]) / (h[i - 1] + h[i]);
    d_[i] = limit(c, slope[i - 1], slope[i]);
  }
  // second-order one-sided end slopes, limited to the end secant
  auto end_slope = [](double h0, double h1, double s0, double s1) {
    double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (d * s0 <= 0.0) return 0.0;
    if (std::abs(d) > 3.0 * std::abs(s0)) d = 3.0 * s0;
    return d;
  };
  d_[0] = end_slope(h[0], h[1], slope[0], slope[1]);
  d_[n - 1] = -end_slope(h[n - 2], h[n - 3], -slope[n - 2], -slope[n - 3]);
}

double SampledProfile::max_spacing() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) m = std::max(m, x_[i + 1] - x_[i]);
  return m;
}

Jet SampledProfile::eval(const MomentPoint& p) const {
  const std::size_t n = x_.size();
  const double x = std::clamp(p.x, -1.0, 1.0);
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, n - 2);
  const double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double u = (x_[i + 1] - x) / h;
  if (i == 0) {
    t = p.lo / h;
    u = 1.0 - t;
  }
  if (i == n - 2) {
    u = p.hi / h;
    t = 1.0 - u;
  }
  const double y0 = y_[i], y1 = y_[i + 1], m0 = h * d_[i], m1 = h * d_[i + 1];
  const double value = y0 * (1.0 + 2.0 * t) * u * u + m0 * t * u * u + y1 * t * t * (1.0 + 2.0 * u) - m1 * t * t * u;
  const double d1 = (-6.0 * t * u * (y0 - y1) - m0 * (3.0 * t - 1.0) * u + m1 * t * (3.0 * t - 2.0)) / h;
  const double d2 = ((12.0 * t - 6.0) * (y0 - y1) + m0 * (6.0 * t - 4.0) + m1 * (6.0 * t - 2.0)) / (h * h);
  return {value, d1, d2};
}

// ---------------------------------------------------------------------------
// InvariantMetric

InvariantMetric InvariantMetric::analytic(const FamilyKind& kind) {
  validate(kind);
  return InvariantMetric(Rep{kind}, family_even(kind), true);
}

InvariantMetric InvariantMetric::sampled(std::vector<double> x, std::vector<double> gbar) {
  auto prof = std::make_shared<const SampledProfile>(std::move(x), std::move(gbar));
  // parity: compare the interpolant with its mirror image at every sample
  bool even = true;
  double scale = 0.0;
  for (double y : prof->values()) scale = std::max(scale, std::abs(y));
  for (double xi : prof->grid()) {
    const double a = prof->eval(MomentPoint::at(xi)).v;
    const double b = prof->eval(MomentPoint::at(-xi)).v;
    if (std::abs(a - b) > 1e-8 * std::max(scale, 1.0)) {
      even = false;
      break;
    }
  }
  const auto y = prof->values();
  const bool closed = y.front() == 0.0 && y.back() == 0.0;
  return InvariantMetric(Rep{std::move(prof)}, even, closed);
}

const SampledProfile* InvariantMetric::samples() const {
  const auto* p = std::get_if<std::shared_ptr<const SampledProfile>>(&rep_);
  return p ? p->get() : nullptr;
}

bool InvariantMetric::has_kink_at_zero() const {
  const auto* f = family();
  return f && std::holds_alternative<family::Tent>(*f);
}

Jet InvariantMetric::gbar_jet(const MomentPoint& p) const {
  if (const auto* f = family()) return family_gbar(*f, p);
  return samples()->eval(p);
}

double InvariantMetric::g_at(const MomentPoint& p) const {
  if (const auto* f = family()) {
    if (const auto* s = std::get_if<family::ExampleSmall>(f))
      return 1.0 / gbar_mu(one_minus_x2(p), s->mu).v + small_extra(p, s->mu, s->alpha).v;
    if (const auto* l = std::get_if<family::ExampleLarge>(f))
      return 1.0 / gbar_mu(one_minus_x2(p), l->mu).v + large_extra(p, l->mu).v;
  }
  return 1.0 / gbar_jet(p).v;
}

double InvariantMetric::gbar(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("gbar: x must lie in [-1, 1]");
  return gbar_jet(MomentPoint::at(x)).v;
}

double InvariantMetric::g(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("g: x must lie in [-1, 1]");
  if (x == -1.0 || x == 1.0) throw SingularityError("g: metric coefficient is singular at the poles");
  const double v = g_at(MomentPoint::at(x));
  if (!std::isfinite(v) || v <= 0.0) throw SingularityError("g: gbar vanishes at x");
  return v;
}

std::vector<double> InvariantMetric::breakpoints() const {
  std::vector<double> b{-1.0, 0.0, 1.0};
  if (const auto* s = samples()) {
    b.assign(s->grid().begin(), s->grid().end());
    return b;
  }
  const auto& f = *family();
  if (const auto* e = std::get_if<family::ExampleSmall>(&f)) {
    const double w = 1.0 / std::sqrt(e->mu);
    for (double k : {1.0, 4.0, 16.0})
      if (k * w < 0.5) {
        b.push_back(k * w);
        b.push_back(-k * w);
      }
  }
  if (const auto* e = std::get_if<family::ExampleLarge>(&f)) {
    const double w = 1.0 / e->mu;
    for (double k : {1.0, 10.0, 100.0})
      if (k * w < 0.5) {
        b.push_back(1.0 - k * w);
        b.push_back(-1.0 + k * w);
      }
  }
  std::sort(b.begin(), b.end());
  return b;
}

std::string InvariantMetric::describe() const {
  if (const auto* f = family()) return describe_family(*f);
  return "sampled:" + std::to_string(samples()->grid().size());
}

}  // namespace invspec
