#include "invspec/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "invspec/errors.hpp"
#include "invspec/mesh.hpp"
#include "invspec/pencil.hpp"
#include "invspec/quadrature.hpp"

namespace invspec {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("exponent p must lie in [0, 1]");
}

// atanh(1/s) for s = sqrt(1+eps) > 1, with s - 1 formed without cancellation.
double atanh_inv_sqrt(double eps) {
  const double s = std::sqrt(1.0 + eps);
  const double sm1 = eps / (1.0 + s);
  return 0.5 * std::log1p(2.0 / sm1);
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

double hardy_F(double p, double x) {
  check_p(p);
  if (!(x > 0.0 && x < 1.0)) throw DomainError("hardy_F: x must lie in (0, 1)");
  const double a = 1.0 - 2.0 * p;
  const double x2 = x * x;
  // 1 - (1-x^2)^a without cancellation for small x
  const double bracket = -std::expm1(a * std::log1p(-x2));
  return 2.0 + ((1.0 - x) * (1.0 + x) / x2) * bracket;
}

double hardy_m(double p) {
  check_p(p);
  if (p == 0.5) return 2.0;
  if (p == 1.0) return 1.0;
  const double at_zero = 3.0 - 2.0 * p;
  const double at_one = 2.0;
  double best = std::min(at_zero, at_one);

  std::vector<double> xs;
  for (int i = 1; i < 4000; ++i) xs.push_back(i / 4000.0);
  for (double d = 1.0 / 4000.0; d > 1e-12; d *= 0.5) {
    xs.push_back(d);
    xs.push_back(1.0 - d);
  }
  std::sort(xs.begin(), xs.end());
  std::size_t arg = 0;
  double grid_min = hardy_F(p, xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = hardy_F(p, xs[i]);
    if (v < grid_min) {
      grid_min = v;
      arg = i;
    }
  }
  if (arg > 0 && arg + 1 < xs.size()) {
    double a = xs[arg - 1], b = xs[arg + 1];
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = hardy_F(p, c), fd = hardy_F(p, d);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - r * (b - a);
        fc = hardy_F(p, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + r * (b - a);
        fd = hardy_F(p, d);
      }
    }
    grid_min = std::min({grid_min, fc, fd});
  }
  return std::min(best, grid_min);
}

double feps_quotient(double eps) {
  if (!(eps > 0.0)) throw DomainError("feps_quotient: eps must be > 0");
  const double s = std::sqrt(1.0 + eps);
  const double at = atanh_inv_sqrt(eps);
  const double num = -0.375 * (2.0 + eps) + (8.0 + 8.0 * eps + 3.0 * eps * eps) / (8.0 * s) * at;
  const double den = -1.0 + s * at;
  return num / den;
}

double feps_quotient_quadrature(double eps) {
  if (!(eps > 0.0)) throw DomainError("feps_quotient: eps must be > 0");
  QuadratureOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-15;
  const double e1 = 1.0 + eps;
  // 1 + eps - x^2 = eps + (1-x)(1+x)
  auto gap = [&](double x, double to_b) { return eps + to_b * (1.0 + x); };
  const auto num = tanh_sinh(
      [&](double x, double, double tb) {
        const double w = tb * (1.0 + x);
        const double g = gap(x, tb);
        return w * w * e1 * e1 / (g * g * g);
      },
      0.0, 1.0, opt);
  const auto den = tanh_sinh([&](double x, double, double tb) { return x * x / gap(x, tb); }, 0.0, 1.0, opt);
  return num.value / den.value;
}

const std::array<double, 7>& eps_schedule() {
  static const std::array<double, 7> s{1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  return s;
}

HardyNumeric hardy_constant_numeric(double p, int N) {
  check_p(p);
  if (N < 256) throw ParameterError("hardy_constant_numeric needs N >= 256");
  const double q = 2.0 * p;
  MomentFunction weight = [q](const MomentPoint& pt) { return q == 0.0 ? 1.0 : std::pow(pt.lo * pt.hi, q); };
  auto level = [&](int n) {
    const Mesh mesh = half_mesh(2 * n);
    return solve_pencil(assemble_weighted(mesh, weight, {}, true, false), 1).values.front();
  };
  HardyNumeric out;
  out.N = N;
  out.value = level(N);
  out.fine_value = level(2 * N);
  out.error_estimate = std::abs(out.value - out.fine_value);
  return out;
}

HardyFullReport hardy_check_full(double p, const std::vector<std::vector<double>>& trials) {
  check_p(p);
  HardyFullReport rep;
  rep.p = p;
  rep.C = hardy_m(p);
  const double q = 2.0 * p;
  const bool polynomial_weight = q == std::floor(q);
  rep.min_margin = trials.empty() ? 0.0 : INFINITY;
  for (const auto& raw : trials) {
    HardyTrial t;
    t.coeffs = raw.empty() ? std::vector<double>{0.0} : raw;
    double mean = 0.0;
    for (std::size_t k = 0; k < t.coeffs.size(); k += 2) mean += t.coeffs[k] * 2.0 / static_cast<double>(k + 1);
    t.coeffs[0] -= 0.5 * mean;
    const auto d = poly_derivative(t.coeffs);
    const int deg = static_cast<int>(t.coeffs.size()) - 1;
    const GaussRule rule = gauss_legendre(std::max(2, deg + static_cast<int>(q) + 2));
    t.rhs = gauss_integrate([&](double x) { return std::pow(poly_eval(t.coeffs, x), 2); }, -1.0, 1.0, rule);
    if (polynomial_weight) {
      t.lhs = gauss_integrate(
          [&](double x) { return std::pow((1.0 - x) * (1.0 + x), q) * std::pow(poly_eval(d, x), 2); }, -1.0, 1.0,
          rule);
    } else {
      QuadratureOptions opt;
      opt.abs_tol = 1e-15;
      t.lhs = tanh_sinh(
                  [&](double x, double fa, double tb) { return std::pow(fa * tb, q) * std::pow(poly_eval(d, x), 2); },
                  -1.0, 1.0, opt)
                  .value;
    }
    if (!(t.rhs > 0.0)) throw DomainError("hardy_check_full: trial vanishes after removing its mean");
    t.ratio = t.lhs / t.rhs;
    t.margin = t.ratio - rep.C;
    t.passed = t.margin >= -1e-12 * std::max(1.0, t.ratio);
    rep.all_passed = rep.all_passed && t.passed;
    rep.min_margin = std::min(rep.min_margin, t.margin);
    rep.trials.push_back(std::move(t));
  }
  return rep;
}

std::vector<std::vector<double>> random_polynomials(std::uint64_t seed, int count, int max_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(1, std::max(1, max_degree));
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> c(degree(rng) + 1);
    for (double& v : c) v = coef(rng);
    if (c.back() == 0.0) c.back() = 1.0;
    out.push_back(std::move(c));
  }
  return out;
}

HardyReport hardy_report(double p, int N) {
  HardyReport rep;
  rep.p = p;
  rep.m = hardy_m(p);
  const auto num = hardy_constant_numeric(p, N);
  rep.numeric_C_upper = num.value;
  rep.numeric_error = num.error_estimate;
  for (double e : eps_schedule()) rep.eps_trace.push_back({e, feps_quotient(e)});
  return rep;
}

}  // namespace invspec
