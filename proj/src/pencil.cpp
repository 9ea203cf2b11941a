#include "invspec/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "invspec/errors.hpp"
#include "invspec/quadrature.hpp"

namespace invspec {

namespace {

struct Range {
  std::size_t first;
  std::size_t count;
};

Range free_rows(const Discretization& disc) {
  const std::size_t n = disc.stiffness.size();
  const std::size_t first = disc.fix_left ? 1 : 0;
  const std::size_t last = n - (disc.fix_right ? 2 : 1);
  if (n < 2 || last < first) throw MeshError("pencil has no free rows");
  return {first, last - first + 1};
}

// Shifted matrix K - sigma M restricted to the free rows.
struct Shifted {
  std::vector<double> d, e;
};

Shifted shifted(const Discretization& disc, Range r, double sigma) {
  Shifted s;
  s.d.resize(r.count);
  s.e.resize(r.count > 0 ? r.count - 1 : 0);
  for (std::size_t i = 0; i < r.count; ++i)
    s.d[i] = disc.stiffness.diag[r.first + i] - sigma * disc.mass.diag[r.first + i];
  for (std::size_t i = 0; i + 1 < r.count; ++i)
    s.e[i] = disc.stiffness.off[r.first + i] - sigma * disc.mass.off[r.first + i];
  return s;
}

int count_negative(const Discretization& disc, Range r, double sigma) {
  int neg = 0;
  double prev = 0.0;
  for (std::size_t i = 0; i < r.count; ++i) {
    const std::size_t k = r.first + i;
    double d = disc.stiffness.diag[k] - sigma * disc.mass.diag[k];
    if (i > 0) {
      const double e = disc.stiffness.off[k - 1] - sigma * disc.mass.off[k - 1];
      d -= e * e / prev;
    }
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++neg;
    prev = d;
  }
  return neg;
}

// Tridiagonal LU with partial pivoting, in the layout of LAPACK's gttrf.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  explicit TridiagonalLU(const Shifted& a) : dl(a.e), d(a.d), du(a.e), du2(a.d.size(), 0.0), swapped(a.d.size(), 0) {
    const std::size_t n = d.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a.d[i]));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = std::numeric_limits<double>::epsilon() * scale;
        const double f = dl[i] / d[i];
        dl[i] = f;
        d[i + 1] -= f * du[i];
      } else {
        const double f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        const double t = du[i];
        du[i] = d[i + 1];
        d[i + 1] = t - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double t = b[i];
        b[i] = b[i + 1];
        b[i + 1] = t - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
};

std::vector<double> apply(const std::vector<double>& diag, const std::vector<double>& off, std::size_t first,
                          const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[first + i] * x[i];
    if (i > 0) s += off[first + i - 1] * x[i - 1];
    if (i + 1 < n) s += off[first + i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<double> multiply(const Tridiagonal& a, const std::vector<double>& x) {
  return apply(a.diag, a.off, 0, x);
}

Discretization assemble_weighted(const Mesh& mesh, const MomentFunction& weight, const MomentFunction& potential,
                                 bool fix_left, bool fix_right) {
  validate_mesh(mesh);
  const auto& x = mesh.x;
  const std::size_t n = x.size();
  Discretization disc;
  disc.mesh = mesh;
  disc.fix_left = fix_left;
  disc.fix_right = fix_right;
  disc.stiffness.diag.assign(n, 0.0);
  disc.stiffness.off.assign(n - 1, 0.0);
  disc.mass.diag.assign(n, 0.0);
  disc.mass.off.assign(n - 1, 0.0);
  disc.element_weight.assign(n - 1, 0.0);
  disc.potential.diag.assign(n, 0.0);
  disc.potential.off.assign(n - 1, 0.0);
  const GaussRule& rule = gauss8();
  QuadratureOptions ts;
  ts.abs_tol = 1e-15;
  ts.rel_tol = 1e-14;

  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double a = x[e], b = x[e + 1], h = b - a;
    const bool at_pole = (a == -1.0 || b == 1.0);
    const bool left_end = e == 0, right_end = e + 2 == n;
    double w_int = 0.0, v_ll = 0.0, v_lr = 0.0, v_rr = 0.0;
    if (at_pole) {
      w_int = tanh_sinh([&](double xx, double fa, double tb) { return weight(MomentPoint::on_piece(xx, a, b, fa, tb)); },
                        a, b, ts)
                  .value;
    } else {
      for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        const double s = rule.nodes[g];
        const double fa = 0.5 * h * (1.0 + s), tb = 0.5 * h * (1.0 - s);
        w_int += rule.weights[g] * weight(MomentPoint::on_piece(a + fa, a, b, fa, tb));
      }
      w_int *= 0.5 * h;
    }
    if (potential) {
      const bool skip_l = left_end && fix_left, skip_r = right_end && fix_right;
      if (left_end || right_end) {
        auto part = [&](int which) {
          return tanh_sinh(
                     [&](double xx, double fa, double tb) {
                       const double pl = tb / h, pr = fa / h;
                       const double phi = which == 0 ? pl * pl : which == 1 ? pl * pr : pr * pr;
                       return phi == 0.0 ? 0.0 : potential(MomentPoint::on_piece(xx, a, b, fa, tb)) * phi;
                     },
                     a, b, ts)
              .value;
        };
        if (!skip_l) v_ll = part(0);
        if (!skip_l && !skip_r) v_lr = part(1);
        if (!skip_r) v_rr = part(2);
      } else {
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
          const double s = rule.nodes[g];
          const double fa = 0.5 * h * (1.0 + s), tb = 0.5 * h * (1.0 - s);
          const double v = rule.weights[g] * potential(MomentPoint::on_piece(a + fa, a, b, fa, tb));
          const double pl = tb / h, pr = fa / h;
          v_ll += v * pl * pl;
          v_lr += v * pl * pr;
          v_rr += v * pr * pr;
        }
        v_ll *= 0.5 * h;
        v_lr *= 0.5 * h;
        v_rr *= 0.5 * h;
      }
    }
    const double k = w_int / (h * h);
    disc.stiffness.diag[e] += k + v_ll;
    disc.stiffness.diag[e + 1] += k + v_rr;
    disc.stiffness.off[e] += -k + v_lr;
    disc.element_weight[e] = k;
    disc.potential.diag[e] += v_ll;
    disc.potential.diag[e + 1] += v_rr;
    disc.potential.off[e] += v_lr;
    disc.mass.diag[e] += h / 3.0;
    disc.mass.diag[e + 1] += h / 3.0;
    disc.mass.off[e] += h / 6.0;
  }
  return disc;
}

Discretization assemble(const InvariantMetric& metric, int m, const Mesh& mesh) {
  if (m < 0) throw ParameterError("mode must be >= 0");
  validate_mesh(mesh);
  if (mesh.x.front() != -1.0 || mesh.x.back() != 1.0) throw MeshError("mesh must span [-1, 1] for a metric pencil");
  if (metric.has_kink_at_zero() && !std::binary_search(mesh.x.begin(), mesh.x.end(), 0.0))
    throw MeshError("the tent metric needs a mesh node at 0");
  MomentFunction weight = [&metric](const MomentPoint& p) { return metric.gbar_jet(p).v; };
  MomentFunction potential;
  if (m > 0) {
    const double m2 = static_cast<double>(m) * m;
    potential = [&metric, m2](const MomentPoint& p) { return m2 * metric.g_at(p); };
  }
  Discretization disc = assemble_weighted(mesh, weight, potential, m > 0, m > 0);
  disc.mode = m;
  return disc;
}

double energy(const Discretization& disc, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t e = 0; e < disc.element_weight.size(); ++e) {
    const double d = v[e + 1] - v[e];
    s += disc.element_weight[e] * d * d;
  }
  const auto pv = multiply(disc.potential, v);
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * pv[i];
  return s;
}

int sturm_count(const Discretization& disc, double sigma) { return count_negative(disc, free_rows(disc), sigma); }

PencilSolution solve_pencil(const Discretization& disc, int k) {
  const Range r = free_rows(disc);
  if (k < 1 || static_cast<std::size_t>(k) > r.count) throw ParameterError("solve_pencil: need 1 <= k <= free rows");
  PencilSolution out;

  double lo = -1.0;
  while (count_negative(disc, r, lo) > 0) {
    lo *= 2.0;
    if (lo < -1e300) throw ConvergenceError("solve_pencil: no lower bracket for the spectrum");
  }
  double hi = 1.0;
  while (count_negative(disc, r, hi) < k) {
    hi *= 2.0;
    if (hi > 1e300) throw ConvergenceError("solve_pencil: no upper bracket for the spectrum");
  }
  const double floor = 1e-15 * std::max(1.0, hi);

  // infinity norms of the reduced matrices for the backward-error test
  auto norm_inf = [&](const Tridiagonal& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < r.count; ++i) {
      const std::size_t q = r.first + i;
      double s = std::abs(t.diag[q]);
      if (i > 0) s += std::abs(t.off[q - 1]);
      if (i + 1 < r.count) s += std::abs(t.off[q]);
      m = std::max(m, s);
    }
    return m;
  };
  const double knorm = norm_inf(disc.stiffness), mnorm = norm_inf(disc.mass);

  std::vector<std::vector<double>> reduced;
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    for (int it = 0; it < 4000; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= std::max(2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)), floor))
        break;
      ++out.bisection_steps;
      if (count_negative(disc, r, mid) > j)
        b = mid;
      else
        a = mid;
    }
    const double lambda = 0.5 * (a + b);
    lo = a;  // next eigenvalue lies above this one's lower bracket

    const TridiagonalLU lu(shifted(disc, r, lambda));
    std::vector<double> v(r.count);
    for (std::size_t i = 0; i < r.count; ++i) v[i] = std::sin(1.3 * i + 0.4) + 0.5 * std::cos(0.37 * i + 1.1);
    double resid = 1.0;
    int iter = 0;
    for (; iter < 12; ++iter) {
      std::vector<double> y = apply(disc.mass.diag, disc.mass.off, r.first, v);
      lu.solve(y);
      for (const auto& u : reduced) {
        const double c = dot(u, apply(disc.mass.diag, disc.mass.off, r.first, y));
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * u[i];
      }
      const double nrm = std::sqrt(dot(y, apply(disc.mass.diag, disc.mass.off, r.first, y)));
      if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
      for (double& t : y) t /= nrm;
      v = std::move(y);
      const auto kv = apply(disc.stiffness.diag, disc.stiffness.off, r.first, v);
      const auto mv = apply(disc.mass.diag, disc.mass.off, r.first, v);
      std::vector<double> res(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) res[i] = kv[i] - lambda * mv[i];
      resid = max_abs(res) / ((knorm + std::abs(lambda) * mnorm) * max_abs(v) + 1e-300);
      if (iter >= 1 && resid < 1e-10) break;
    }
    if (!(resid < 1e-8)) {
      std::ostringstream msg;
      msg << "solve_pencil: inverse iteration for eigenvalue " << j << " (lambda=" << lambda
          << ") stalled at relative residual " << resid << " after " << iter << " iterations";
      throw ConvergenceError(msg.str());
    }
    // deterministic sign: first large component positive
    const double big = max_abs(v);
    for (double t : v)
      if (std::abs(t) >= 0.5 * big) {
        if (t < 0.0)
          for (double& s : v) s = -s;
        break;
      }
    // Rayleigh quotient in element form: sharper than the Sturm bracket,
    // which carries an absolute error of order eps * N * max|K|.
    std::vector<double> full(disc.stiffness.size(), 0.0);
    std::copy(v.begin(), v.end(), full.begin() + static_cast<std::ptrdiff_t>(r.first));
    const double mv = dot(v, apply(disc.mass.diag, disc.mass.off, r.first, v));
    const double rq = energy(disc, full) / mv;
    const double accepted = (std::abs(rq - lambda) <= 1e-8 * std::abs(lambda) + 1e-8) ? rq : lambda;
    out.values.push_back(accepted);
    reduced.push_back(v);
  }

  const std::size_t n = disc.stiffness.size();
  for (auto& v : reduced) {
    std::vector<double> full(n, 0.0);
    std::copy(v.begin(), v.end(), full.begin() + static_cast<std::ptrdiff_t>(r.first));
    out.vectors.push_back(std::move(full));
  }
  return out;
}

}  // namespace invspec
