#pragma once

#include <vector>

namespace invspec {

double bessel_j0(double x);
double bessel_j1(double x);
// J0'(x) = -J1(x)
double bessel_j0_prime(double x);

enum class ZeroKind { J0, J0Prime };

struct BesselZero {
  ZeroKind kind = ZeroKind::J0;
  int index = 1;
  double value = 0.0;
};

/// j-th positive zero of J0 or J0', 1 <= j <= 64.
BesselZero bessel_zero(ZeroKind kind, int j);

/// lambda_j = xi_j^2 / 2, xi_j the ((j+1)/2)-th zero of J0 for odd j and
/// the (j/2)-th zero of J0' for even j.
std::vector<double> tent_spectrum(int k);

double legendre_eval(int n, double x);

struct LegendreValue {
  double p = 0.0;
  double dp = 0.0;
  double d2p = 0.0;
};

/// P_n and its first two derivatives by recurrence, valid at x = +-1.
LegendreValue legendre_derivatives(int n, double x);

}  // namespace invspec
