#include "invspec/special.hpp"

#include <cmath>
#include <numbers>

#include "invspec/errors.hpp"

namespace invspec {

namespace {

using real = long double;

// Power series; used for |x| <= 8.
double series(double x, int order) {
  const real y = static_cast<real>(x) * x / 4.0L;
  real term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= -y / (static_cast<real>(k) * (k + order));
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum) && k > 4) break;
  }
  return static_cast<double>(order == 0 ? sum : sum * x / 2.0L);
}

// Backward recurrence normalized by J0 + 2 sum J_2k = 1; for 8 < x <= 25.
void miller(double x, double& j0, double& j1) {
  const int top = 2 * static_cast<int>((x + 60.0) / 2.0);
  real next = 0.0L, cur = 1e-30L, norm = 0.0L;
  real v0 = 0.0L, v1 = 0.0L;
  for (int n = top; n > 0; --n) {
    const real prev = (2.0L * n / x) * cur - next;
    next = cur;
    cur = prev;  // now J_{n-1}
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0L * cur;
    if (n - 1 == 1) v1 = cur;
    if (std::fabs(cur) > 1e300L) {
      next *= 1e-300L;
      cur *= 1e-300L;
      norm *= 1e-300L;
      v1 *= 1e-300L;
    }
  }
  v0 = cur;
  norm += v0;
  j0 = static_cast<double>(v0 / norm);
  j1 = static_cast<double>(v1 / norm);
}

// Hankel asymptotic expansion; for x > 25.
double hankel(double x, int order) {
  const double mu = 4.0 * order * order;
  double p = 0.0, q = 0.0, a = 1.0, last = INFINITY;
  for (int k = 0; k < 60; ++k) {
    // a_k / x^k with alternating signs folded into P and Q
    if (k > 0) a *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(a) > last) break;
    last = std::abs(a);
    switch (k % 4) {
      case 0: p += a; break;
      case 1: q += a; break;
      case 2: p -= a; break;
      default: q -= a; break;
    }
    if (std::abs(a) < 1e-18) break;
  }
  const double c = std::cos(x), s = std::sin(x);
  const double r = std::sqrt(2.0 / (std::numbers::pi * x)) / std::numbers::sqrt2;
  if (order == 0) return r * (p * (c + s) - q * (s - c));
  return r * (p * (s - c) + q * (s + c));
}

void both(double x, double& j0, double& j1) {
  const double ax = std::abs(x);
  if (ax <= 8.0) {
    j0 = series(ax, 0);
    j1 = series(ax, 1);
  } else if (ax <= 25.0) {
    miller(ax, j0, j1);
  } else {
    j0 = hankel(ax, 0);
    j1 = hankel(ax, 1);
  }
  if (x < 0.0) j1 = -j1;
}

}  // namespace

double bessel_j0(double x) {
  double a, b;
  both(x, a, b);
  return a;
}

double bessel_j1(double x) {
  double a, b;
  both(x, a, b);
  return b;
}

double bessel_j0_prime(double x) { return -bessel_j1(x); }

BesselZero bessel_zero(ZeroKind kind, int j) {
  if (j < 1 || j > 64) throw ParameterError("bessel_zero supports 1 <= j <= 64");
  const bool of_j0 = kind == ZeroKind::J0;
  auto f = [&](double x) { return of_j0 ? bessel_j0(x) : bessel_j1(x); };
  double a = std::numbers::pi * (j - 0.5), b = std::numbers::pi * (j + 0.5);
  double fa = f(a);
  if (fa * f(b) > 0.0) throw ConvergenceError("bessel_zero: bracket does not change sign");
  for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {
    double j0, j1;
    both(x, j0, j1);
    const double step = of_j0 ? j0 / (-j1) : j1 / (j0 - j1 / x);
    if (!std::isfinite(step) || std::abs(step) > 1e-8) break;
    x -= step;
  }
  return {kind, j, x};
}

std::vector<double> tent_spectrum(int k) {
  if (k < 1) throw ParameterError("tent_spectrum needs k >= 1");
  std::vector<double> out;
  for (int j = 1; j <= k; ++j) {
    const auto z = (j % 2 == 1) ? bessel_zero(ZeroKind::J0, (j + 1) / 2) : bessel_zero(ZeroKind::J0Prime, j / 2);
    out.push_back(0.5 * z.value * z.value);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw ConvergenceError("tent_spectrum: values are not increasing");
  return out;
}

double legendre_eval(int n, double x) { return legendre_derivatives(n, x).p; }

LegendreValue legendre_derivatives(int n, double x) {
  if (n < 0) throw ParameterError("legendre degree must be >= 0");
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("legendre_eval: x must lie in [-1, 1]");
  // P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1),  P'_{k+1} = P'_{k-1} + (2k+1) P_k
  double p0 = 1.0, p1 = x, d0 = 0.0, d1 = 1.0, s0 = 0.0, s1 = 0.0;
  if (n == 0) return {1.0, 0.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    const double d2 = d0 + (2.0 * k + 1.0) * p1;
    const double s2 = s0 + (2.0 * k + 1.0) * d1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
    s0 = s1;
    s1 = s2;
  }
  return {p1, d1, s1};
}

}  // namespace invspec
