#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "invspec/jet.hpp"
#include "invspec/spectrum.hpp"

namespace invspec {

enum class AppendixRegime { Above, Critical, Below };  // lambda > 1, = 1, < 1

/// Closed-form solutions of -((1-x^2)^2 f')' = lambda f on (-1, 1).
struct AppendixSolution {
  double lambda = 0.0;
  AppendixRegime regime = AppendixRegime::Critical;
  int branch = 1;
  double omega = 0.0;  // sqrt(lambda - 1) above 1
  double gamma = 0.0;  // sqrt(1 - lambda) below 1
  // roots of r^2 + r + lambda/4 = 0
  std::complex<double> r_plus;
  std::complex<double> r_minus;
  Parity parity = Parity::None;

  /// f, f', f'' at x; throws DomainError for |x| > 1 - 1e-8.
  Jet eval(double x) const;
  double operator()(double x) const { return eval(x).v; }
};

AppendixSolution appendix_solution(double lambda, int branch);

/// max |r^2 + r + lambda/4| over both stored roots.
double indicial_residual(const AppendixSolution& s);

/// max over xs of |(1-x^2)^2 f'' - 4x(1-x^2) f' + lambda f|.
double el_residual(double lambda, const std::function<Jet(double)>& f, const std::vector<double>& xs);

/// Same residual with f' and f'' from 5-point stencils of step h.
double el_residual_numeric(double lambda, const std::function<double(double)>& f, const std::vector<double>& xs,
                           double h = 1e-5);

}  // namespace invspec
