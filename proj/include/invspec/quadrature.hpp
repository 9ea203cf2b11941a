#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace invspec {

struct QuadratureResult {
  double value = 0.0;
  double last_delta = 0.0;  // |I_l - I_{l-1}| at the final level
  int levels = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  int min_level = 3;
  // Level doubling stops once the node count would exceed this.
  std::size_t max_nodes = std::size_t{1} << 20;
};

/// Double-exponential (tanh-sinh) quadrature on [a, b].
///
/// The integrand is called as f(x, from_a, to_b) where from_a = x - a and
/// to_b = b - x are computed without cancellation. Integrands that blow up at
/// an endpoint should use the distances rather than x: nodes get within
/// ~1e-100 of the ends, far below the spacing of doubles near b.
///
/// Refinement halves the step until successive estimates differ by less than
/// max(abs_tol, rel_tol * |I|).
template <class F>
QuadratureResult tanh_sinh(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double t_max = 5.0;
  QuadratureResult out;
  if (!(b > a)) return out;
  const double hw = 0.5 * (b - a);

  auto node_sum = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double au = std::abs(u);
    const double eu = std::exp(au);
    const double ch = 0.5 * (eu + 1.0 / eu);
    // 1 - tanh|u| = 1 / (e^|u| cosh u)
    const double comp = hw / (eu * ch);
    const double w = hw * half_pi * std::cosh(t) / (ch * ch);
    double x, fa, tb;
    if (u >= 0.0) {
      tb = comp;
      fa = 2.0 * hw - comp;
      x = b - tb;
    } else {
      fa = comp;
      tb = 2.0 * hw - comp;
      x = a + fa;
    }
    ++out.evaluations;
    return w * f(x, fa, tb);
  };

  double h = 1.0;
  double sum = node_sum(0.0);
  for (int k = 1; k <= static_cast<int>(t_max); ++k) sum += node_sum(k) + node_sum(-k);
  double estimate = h * sum;
  for (int level = 1;; ++level) {
    h *= 0.5;
    const auto count = static_cast<long>(t_max / h);
    for (long k = 1; k <= count; k += 2) {
      const double t = static_cast<double>(k) * h;
      sum += node_sum(t) + node_sum(-t);
    }
    const double next = h * sum;
    out.last_delta = std::abs(next - estimate);
    out.levels = level;
    estimate = next;
    const bool small = out.last_delta <= opt.abs_tol || out.last_delta <= opt.rel_tol * std::abs(next);
    if (level >= opt.min_level && small) {
      out.converged = true;
      break;
    }
    if (static_cast<std::size_t>(4 * count + 2) > opt.max_nodes) break;
  }
  out.value = estimate;
  return out;
}

/// Sum of tanh_sinh over consecutive breakpoints; the absolute tolerance is
/// shared between pieces in proportion to their length.
template <class F>
QuadratureResult integrate_pieces(F&& f, std::span<const double> breaks, const QuadratureOptions& opt = {}) {
  QuadratureResult total;
  total.converged = true;
  if (breaks.size() < 2) return total;
  const double span_len = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    QuadratureOptions local = opt;
    local.abs_tol = opt.abs_tol * (breaks[i + 1] - breaks[i]) / span_len;
    const auto r = tanh_sinh(f, breaks[i], breaks[i + 1], local);
    total.value += r.value;
    total.last_delta += r.last_delta;
    total.evaluations += r.evaluations;
    total.levels = std::max(total.levels, r.levels);
    total.converged = total.converged && r.converged;
  }
  return total;
}

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Shared 8-point rule used for element integrals.
const GaussRule& gauss8();

// Integrate a smooth f over [a, b] with a Gauss-Legendre rule.
template <class F>
double gauss_integrate(F&& f, double a, double b, const GaussRule& rule) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + hw * rule.nodes[i]);
  return hw * s;
}

}  // namespace invspec
