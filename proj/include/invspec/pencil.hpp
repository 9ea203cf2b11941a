#pragma once

#include <functional>
#include <vector>

#include "invspec/mesh.hpp"
#include "invspec/metric.hpp"

namespace invspec {

/// Symmetric tridiagonal matrix; off[i] couples rows i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

/// Linear-element stiffness/mass pair for one Fourier mode. Rows of nodes
/// flagged as fixed are kept in the matrices but removed by the solver.
struct Discretization {
  int mode = 0;
  Tridiagonal stiffness;
  Tridiagonal mass;
  // stiffness = sum_e element_weight[e] (phi_e' x phi_e') + potential
  std::vector<double> element_weight;
  Tridiagonal potential;
  Mesh mesh;
  bool fix_left = false;
  bool fix_right = false;
};

using MomentFunction = std::function<double(const MomentPoint&)>;

/// Stiffness from integral w f' phi' + V f phi, consistent mass from
/// integral f phi. V may be singular at the ends of the mesh; the end
/// elements are then integrated by tanh-sinh. Pass an empty V for none.
Discretization assemble_weighted(const Mesh& mesh, const MomentFunction& weight, const MomentFunction& potential,
                                 bool fix_left, bool fix_right);

/// The mode-m pencil of the metric: weight gbar, potential m^2 g, Dirichlet
/// at both poles for m >= 1.
Discretization assemble(const InvariantMetric& metric, int m, const Mesh& mesh);

struct PencilSolution {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // on the full mesh, mass-orthonormal
  int bisection_steps = 0;
};

/// k smallest eigenpairs of K v = lambda M v by Sturm-count bisection and
/// inverse iteration. Throws ConvergenceError with diagnostics on failure.
PencilSolution solve_pencil(const Discretization& disc, int k);

/// v^T K v summed element by element; exact zero on constants for m = 0.
double energy(const Discretization& disc, const std::vector<double>& v);

/// Number of eigenvalues of the pencil below sigma (fixed rows removed).
int sturm_count(const Discretization& disc, double sigma);

/// y = A x for a symmetric tridiagonal A.
std::vector<double> multiply(const Tridiagonal& a, const std::vector<double>& x);

}  // namespace invspec
