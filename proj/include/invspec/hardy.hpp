#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace invspec {

/// F(x) = 2 + ((1-x^2)/x^2) [1 - (1-x^2)^(1-2p)] on (0, 1), p in [0, 1].
double hardy_F(double p, double x);

/// Infimum of F over (0, 1).
double hardy_m(double p);

/// Quotient of the two closed-form integrals for f_eps = x / sqrt(1+eps-x^2)
/// with weight (1-x^2)^2.
double feps_quotient(double eps);

/// The same quotient by direct tanh-sinh quadrature.
double feps_quotient_quadrature(double eps);

/// eps = 1, 1e-1, ..., 1e-6.
const std::array<double, 7>& eps_schedule();

struct HardyNumeric {
  double value = 0.0;           // Galerkin minimum at N elements (upper bound)
  double fine_value = 0.0;      // at 2N elements
  double error_estimate = 0.0;  // |value - fine_value|
  int N = 0;
};

/// Minimum of int_0^1 (1-x^2)^(2p) f'^2 / int_0^1 f^2 over linear elements
/// with f(0) = 0, natural at 1.
HardyNumeric hardy_constant_numeric(double p, int N = 4096);

struct HardyTrial {
  std::vector<double> coeffs;  // monomial coefficients after removing the mean
  double lhs = 0.0;            // int (1-x^2)^(2p) f'^2
  double rhs = 0.0;            // int f^2
  double ratio = 0.0;
  double margin = 0.0;  // ratio - C(p)
  bool passed = false;
};

struct HardyFullReport {
  double p = 0.0;
  double C = 0.0;  // hardy_m(p)
  std::vector<HardyTrial> trials;
  double min_margin = 0.0;
  bool all_passed = true;
};

/// Checks int_{-1}^{1} (1-x^2)^(2p) f'^2 >= C(p) int f^2 for zero-average
/// polynomial trials given by monomial coefficients.
HardyFullReport hardy_check_full(double p, const std::vector<std::vector<double>>& trials);

/// Deterministic random polynomials of degree 1..max_degree.
std::vector<std::vector<double>> random_polynomials(std::uint64_t seed, int count, int max_degree = 8);

struct EpsPoint {
  double eps = 0.0;
  double quotient = 0.0;
};

struct HardyReport {
  double p = 0.0;
  double m = 0.0;
  double numeric_C_upper = 0.0;
  double numeric_error = 0.0;
  std::vector<EpsPoint> eps_trace;
};

HardyReport hardy_report(double p, int N = 4096);

}  // namespace invspec
