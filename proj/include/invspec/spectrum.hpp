#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "invspec/metric.hpp"
#include "invspec/pencil.hpp"

namespace invspec {

enum class Parity { Odd, Even, None };

std::string to_string(Parity p);

struct SpectrumResult {
  int mode = 0;
  int mesh_size = 0;                       // N, the coarse level
  std::vector<double> eigenvalues;         // Richardson values, ascending
  std::vector<double> error_estimates;     // |lambda_2N - lambda_N| / 3
  std::vector<double> raw_coarse;          // level N
  std::vector<double> raw_fine;            // level 2N
  std::vector<double> nodes;               // mesh of level N
  std::vector<std::vector<double>> eigenfunctions;  // mass-orthonormal on nodes
  std::vector<Parity> parity;
};

/// Nonzero invariant eigenvalues lambda_1..lambda_k.
SpectrumResult invariant_spectrum(const InvariantMetric& metric, int k, int N = 4096);

/// Smallest k eigenvalues of the mode-m problem, m >= 1.
SpectrumResult mode_spectrum(const InvariantMetric& metric, int m, int k, int N = 4096);

/// Half-interval problem on [0, 1] for an even metric: f(0) = 0 (odd) or
/// natural at 0 (even, zero eigenvalue dropped).
SpectrumResult parity_spectrum(const InvariantMetric& metric, Parity parity, int k, int N = 4096);

struct FullEigenvalue {
  double value = 0.0;
  int mode = 0;
  int multiplicity = 1;
  double error_estimate = 0.0;
};

/// Nonzero eigenvalues of the full Laplacian up to mode m_max, one entry
/// per eigenvalue counted with multiplicity, ascending. Throws
/// TailSafetyError when modes above m_max could still contribute.
std::vector<FullEigenvalue> full_spectrum(const InvariantMetric& metric, int m_max, int count, int N = 4096);

/// Integral of gbar f'^2 over integral of f^2 for the piecewise linear
/// interpolant of samples on nodes, after removing the mean.
double rayleigh_quotient(const InvariantMetric& metric, const std::vector<double>& nodes,
                         const std::vector<double>& samples);

/// Same quotient for a trial given with its derivative, integrated directly.
double rayleigh_quotient(const InvariantMetric& metric, const std::function<double(double)>& f,
                         const std::function<double(double)>& df);

}  // namespace invspec
