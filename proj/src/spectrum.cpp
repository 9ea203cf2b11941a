#include "invspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invspec/errors.hpp"
#include "invspec/geometry.hpp"

namespace invspec {

namespace {

int even_size(int N) {
  if (N < 64) throw ParameterError("mesh size N must be >= 64");
  return N % 2 == 0 ? N : N + 1;
}

Grading grading_for(const InvariantMetric& metric) {
  return metric.has_kink_at_zero() ? Grading::KinkAtZero : Grading::GradedToEndpoints;
}

Parity classify(const std::vector<double>& v) {
  const std::size_t n = v.size();
  double scale = 0.0, even = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(v[i]));
    even = std::max(even, std::abs(v[i] - v[n - 1 - i]));
    odd = std::max(odd, std::abs(v[i] + v[n - 1 - i]));
  }
  if (even <= 1e-6 * scale) return Parity::Even;
  if (odd <= 1e-6 * scale) return Parity::Odd;
  return Parity::None;
}

// Combine two mesh levels; `drop` leading eigenvalues (kernel) are skipped.
SpectrumResult combine(int mode, int N, const PencilSolution& coarse, const PencilSolution& fine, std::size_t drop,
                       const Mesh& mesh) {
  SpectrumResult out;
  out.mode = mode;
  out.mesh_size = N;
  out.nodes = mesh.x;
  for (std::size_t j = drop; j < coarse.values.size(); ++j) {
    const double a = coarse.values[j], b = fine.values[j];
    out.raw_coarse.push_back(a);
    out.raw_fine.push_back(b);
    out.eigenvalues.push_back((4.0 * b - a) / 3.0);
    out.error_estimates.push_back(std::abs(b - a) / 3.0);
    out.eigenfunctions.push_back(coarse.vectors[j]);
  }
  return out;
}

}  // namespace

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Odd:
      return "odd";
    case Parity::Even:
      return "even";
    case Parity::None:
      break;
  }
  return "none";
}

SpectrumResult invariant_spectrum(const InvariantMetric& metric, int k, int N) {
  if (k < 1) throw ParameterError("eigenvalue count k must be >= 1");
  N = even_size(N);
  const Mesh coarse_mesh = graded_mesh(N, grading_for(metric));
  const Mesh fine_mesh = graded_mesh(2 * N, grading_for(metric));
  const auto coarse = solve_pencil(assemble(metric, 0, coarse_mesh), k + 1);
  const auto fine = solve_pencil(assemble(metric, 0, fine_mesh), k + 1);
  auto out = combine(0, N, coarse, fine, 1, coarse_mesh);
  for (const auto& v : out.eigenfunctions) out.parity.push_back(metric.is_even() ? classify(v) : Parity::None);
  return out;
}

SpectrumResult mode_spectrum(const InvariantMetric& metric, int m, int k, int N) {
  if (m < 1) throw ParameterError("mode_spectrum needs m >= 1");
  if (k < 1) throw ParameterError("eigenvalue count k must be >= 1");
  N = even_size(N);
  const Mesh coarse_mesh = graded_mesh(N, grading_for(metric));
  const Mesh fine_mesh = graded_mesh(2 * N, grading_for(metric));
  const auto coarse = solve_pencil(assemble(metric, m, coarse_mesh), k);
  const auto fine = solve_pencil(assemble(metric, m, fine_mesh), k);
  auto out = combine(m, N, coarse, fine, 0, coarse_mesh);
  for (const auto& v : out.eigenfunctions) out.parity.push_back(metric.is_even() ? classify(v) : Parity::None);
  return out;
}

SpectrumResult parity_spectrum(const InvariantMetric& metric, Parity parity, int k, int N) {
  if (!metric.is_even()) throw ParityError("parity_spectrum needs an even metric");
  if (parity == Parity::None) throw ParameterError("parity must be odd or even");
  if (k < 1) throw ParameterError("eigenvalue count k must be >= 1");
  N = even_size(N);
  const bool odd = parity == Parity::Odd;
  MomentFunction weight = [&metric](const MomentPoint& p) { return metric.gbar_jet(p).v; };
  auto level = [&](int n) {
    const Mesh mesh = half_mesh(n);
    return std::make_pair(mesh, solve_pencil(assemble_weighted(mesh, weight, {}, odd, false), odd ? k : k + 1));
  };
  const auto [coarse_mesh, coarse] = level(N);
  const auto [fine_mesh, fine] = level(2 * N);
  auto out = combine(0, N, coarse, fine, odd ? 0 : 1, coarse_mesh);
  out.parity.assign(out.eigenvalues.size(), parity);
  return out;
}

std::vector<FullEigenvalue> full_spectrum(const InvariantMetric& metric, int m_max, int count, int N) {
  if (m_max < 2) throw ParameterError("full_spectrum needs m_max >= 2");
  if (count < 1) throw ParameterError("full_spectrum needs count >= 1");
  std::vector<FullEigenvalue> all;
  const auto inv = invariant_spectrum(metric, count, N);
  for (std::size_t j = 0; j < inv.eigenvalues.size(); ++j)
    all.push_back({inv.eigenvalues[j], 0, 1, inv.error_estimates[j]});
  const int per_mode = std::max(1, (count + 1) / 2);
  double top_mode_min = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const auto s = mode_spectrum(metric, m, per_mode, N);
    for (std::size_t j = 0; j < s.eigenvalues.size(); ++j)
      all.push_back({s.eigenvalues[j], m, 2, s.error_estimates[j]});
    if (m == m_max) top_mode_min = s.eigenvalues.front();
  }
  std::sort(all.begin(), all.end(), [](const FullEigenvalue& a, const FullEigenvalue& b) {
    return a.value < b.value || (a.value == b.value && a.mode < b.mode);
  });
  // clusters of coincident values are ordered by mode
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j].value - all[j - 1].value <= 1e-7 * std::abs(all[j].value)) ++j;
    std::stable_sort(all.begin() + static_cast<std::ptrdiff_t>(i), all.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const FullEigenvalue& a, const FullEigenvalue& b) { return a.mode < b.mode; });
    i = j;
  }
  std::vector<FullEigenvalue> out;
  for (const auto& e : all)
    for (int c = 0; c < e.multiplicity && static_cast<int>(out.size()) < count; ++c) out.push_back(e);
  if (static_cast<int>(out.size()) < count) throw TailSafetyError("full_spectrum: not enough eigenvalues computed");
  if (!(top_mode_min > out.back().value)) {
    std::ostringstream msg;
    msg << "full_spectrum: mode " << m_max << " starts at " << top_mode_min << ", below the requested eigenvalue "
        << out.back().value << "; raise m_max";
    throw TailSafetyError(msg.str());
  }
  return out;
}

double rayleigh_quotient(const InvariantMetric& metric, const std::vector<double>& nodes,
                         const std::vector<double>& samples) {
  if (nodes.size() != samples.size() || nodes.size() < 2) throw InputError("rayleigh_quotient: size mismatch");
  if (nodes.front() != -1.0 || nodes.back() != 1.0) throw MeshError("rayleigh_quotient: nodes must span [-1, 1]");
  Mesh mesh;
  mesh.x = nodes;
  const auto disc = assemble_weighted(
      mesh, [&metric](const MomentPoint& p) { return metric.gbar_jet(p).v; }, {}, false, false);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    integral += 0.5 * (nodes[i + 1] - nodes[i]) * (samples[i] + samples[i + 1]);
  std::vector<double> f(samples);
  for (double& v : f) v -= 0.5 * integral;
  const auto kf = multiply(disc.stiffness, f);
  const auto mf = multiply(disc.mass, f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += f[i] * kf[i];
    den += f[i] * mf[i];
  }
  if (!(den > 0.0)) throw DomainError("rayleigh_quotient: trial is constant");
  return num / den;
}

double rayleigh_quotient(const InvariantMetric& metric, const std::function<double(double)>& f,
                         const std::function<double(double)>& df) {
  const auto breaks = metric.breakpoints();
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  const double mean =
      0.5 * integrate_moment(breaks, -1.0, 1.0, [&](const MomentPoint& p) { return f(p.x); }, opt).value;
  const double num = integrate_moment(breaks, -1.0, 1.0, [&](const MomentPoint& p) {
                       const double d = df(p.x);
                       return metric.gbar_jet(p).v * d * d;
                     }, opt).value;
  const double den = integrate_moment(breaks, -1.0, 1.0, [&](const MomentPoint& p) {
                       const double v = f(p.x) - mean;
                       return v * v;
                     }, opt).value;
  if (!(den > 0.0)) throw DomainError("rayleigh_quotient: trial is constant");
  return num / den;
}

}  // namespace invspec
