#include "invspec/appendix.hpp"

#include <algorithm>
#include <cmath>

#include "invspec/errors.hpp"

namespace invspec {

AppendixSolution appendix_solution(double lambda, int branch) {
  if (branch != 1 && branch != 2) throw ParameterError("appendix branch must be 1 or 2");
  if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
  AppendixSolution s;
  s.lambda = lambda;
  s.branch = branch;
  s.parity = branch == 1 ? Parity::Odd : Parity::Even;
  if (lambda > 1.0) {
    s.regime = AppendixRegime::Above;
    s.omega = std::sqrt(lambda - 1.0);
    s.r_plus = {-0.5, 0.5 * s.omega};
    s.r_minus = {-0.5, -0.5 * s.omega};
  } else if (lambda == 1.0) {
    s.regime = AppendixRegime::Critical;
    s.r_plus = s.r_minus = {-0.5, 0.0};
  } else {
    s.regime = AppendixRegime::Below;
    s.gamma = std::sqrt(1.0 - lambda);
    s.r_plus = {0.5 * (-1.0 + s.gamma), 0.0};
    s.r_minus = {0.5 * (-1.0 - s.gamma), 0.0};
  }
  return s;
}

Jet AppendixSolution::eval(double x) const {
  if (!(std::abs(x) <= 1.0 - 1e-8)) throw DomainError("appendix solutions are evaluated on |x| <= 1 - 1e-8");
  const Jet X = Jet::variable(x);
  const Jet lo{1.0 + x, 1.0, 0.0};
  const Jet hi{1.0 - x, -1.0, 0.0};
  const Jet inv_root = pow(lo * hi, -0.5);
  const Jet L = log(hi) - log(lo);  // log((1-x)/(1+x))
  switch (regime) {
    case AppendixRegime::Above: {
      const Jet c = cos(0.5 * omega * L), sn = sin(0.5 * omega * L);
      return branch == 1 ? (X * c - omega * sn) * inv_root : (omega * c + X * sn) * inv_root;
    }
    case AppendixRegime::Critical:
      return branch == 1 ? X * inv_root : (0.5 * X * L + 1.0) * inv_root;
    case AppendixRegime::Below: {
      const double rp = r_plus.real(), rm = r_minus.real();
      const Jet a = (X + gamma) * pow(lo, rm) * pow(hi, rp);
      const Jet b = (X - gamma) * pow(lo, rp) * pow(hi, rm);
      return branch == 1 ? a + b : a - b;
    }
  }
  return {};
}

double indicial_residual(const AppendixSolution& s) {
  auto res = [&](std::complex<double> r) { return std::abs(r * r + r + s.lambda / 4.0); };
  return std::max(res(s.r_plus), res(s.r_minus));
}

double el_residual(double lambda, const std::function<Jet(double)>& f, const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const Jet j = f(x);
    const double q = (1.0 - x) * (1.0 + x);
    worst = std::max(worst, std::abs(q * q * j.s - 4.0 * x * q * j.d + lambda * j.v));
  }
  return worst;
}

double el_residual_numeric(double lambda, const std::function<double(double)>& f, const std::vector<double>& xs,
                           double h) {
  return el_residual(
      lambda,
      [&](double x) {
        const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
        const double d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        return Jet{f0, d1, d2};
      },
      xs);
}

}  // namespace invspec
