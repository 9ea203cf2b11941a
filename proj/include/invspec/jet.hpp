#pragma once

#include <cmath>

namespace invspec {

// Truncated Taylor jet (f, f', f'') for forward-mode second derivatives.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double s = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value, double first = 0.0, double second = 0.0)
      : v(value), d(first), s(second) {}

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
  static constexpr Jet constant(double c) { return {c, 0.0, 0.0}; }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    d += o.d;
    s += o.s;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    d -= o.d;
    s -= o.s;
    return *this;
  }
};

// Compose an outer scalar function with known derivatives f0, f1, f2 (taken
// at a.v) with the inner jet a.
inline Jet chain(const Jet& a, double f0, double f1, double f2) {
  return {f0, f1 * a.d, f2 * a.d * a.d + f1 * a.s};
}

inline Jet operator-(const Jet& a) { return {-a.v, -a.d, -a.s}; }
inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.s * b.v + 2.0 * a.d * b.d + a.v * b.s};
}
inline Jet reciprocal(const Jet& b) {
  const double r = 1.0 / b.v;
  return chain(b, r, -r * r, 2.0 * r * r * r);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet operator+(const Jet& a, double c) { return {a.v + c, a.d, a.s}; }
inline Jet operator+(double c, const Jet& a) { return a + c; }
inline Jet operator-(const Jet& a, double c) { return {a.v - c, a.d, a.s}; }
inline Jet operator-(double c, const Jet& a) { return {c - a.v, -a.d, -a.s}; }
inline Jet operator*(const Jet& a, double c) { return {a.v * c, a.d * c, a.s * c}; }
inline Jet operator*(double c, const Jet& a) { return a * c; }
inline Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
inline Jet operator/(double c, const Jet& b) { return c * reciprocal(b); }

inline Jet sqrt(const Jet& a) {
  const double r = std::sqrt(a.v);
  return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}
inline Jet log(const Jet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
inline Jet sin(const Jet& a) {
  const double sv = std::sin(a.v), cv = std::cos(a.v);
  return chain(a, sv, cv, -sv);
}
inline Jet cos(const Jet& a) {
  const double sv = std::sin(a.v), cv = std::cos(a.v);
  return chain(a, cv, -sv, -cv);
}
inline Jet atan(const Jet& a) {
  const double q = 1.0 / (1.0 + a.v * a.v);
  return chain(a, std::atan(a.v), q, -2.0 * a.v * q * q);
}
inline Jet pow(const Jet& a, double r) {
  const double p = std::pow(a.v, r);
  return chain(a, p, r * p / a.v, r * (r - 1.0) * p / (a.v * a.v));
}

}  // namespace invspec
