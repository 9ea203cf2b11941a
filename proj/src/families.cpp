#include "invspec/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "invspec/errors.hpp"
#include "invspec/geometry.hpp"

namespace invspec {

namespace {

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("malformed number '" + text + "' in family spec '" + spec + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw InputError("malformed number '" + text + "' in family spec '" + spec + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, spec));
  return out;
}

}  // namespace

InvariantMetric make_family(const FamilyKind& kind) { return InvariantMetric::analytic(kind); }

FamilyKind parse_family(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto args = [&](std::size_t n) {
    if (colon == std::string::npos) throw InputError("family '" + name + "' needs parameters: " + spec);
    auto v = parse_list(rest, spec);
    if (v.size() != n) throw InputError("wrong number of parameters in family spec '" + spec + "'");
    return v;
  };
  FamilyKind kind;
  if (name == "standard" && colon == std::string::npos)
    kind = family::Standard{};
  else if (name == "tent" && colon == std::string::npos)
    kind = family::Tent{};
  else if (name == "mu")
    kind = family::Mu{args(1)[0]};
  else if (name == "rho")
    kind = family::Rho{args(1)[0]};
  else if (name == "nu")
    kind = family::Nu{args(1)[0]};
  else if (name == "ellipsoid")
    kind = family::Ellipsoid{args(1)[0]};
  else if (name == "ex-small") {
    const auto v = args(2);
    kind = family::ExampleSmall{v[0], v[1]};
  } else if (name == "ex-large")
    kind = family::ExampleLarge{args(1)[0]};
  else if (name == "perturbed") {
    const auto v = args(5);
    family::Perturbed p{};
    std::copy(v.begin(), v.end(), p.coeffs.begin());
    kind = p;
  } else
    throw InputError("unknown family spec '" + spec + "'");
  return kind;
}

std::string format_family(const FamilyKind& kind) { return describe_family(kind); }

FamilyKind with_parameter(const FamilyKind& base, const std::string& name, double value) {
  if (name == "mu") {
    if (auto* s = std::get_if<family::ExampleSmall>(&base)) return family::ExampleSmall{value, s->alpha};
    if (std::holds_alternative<family::ExampleLarge>(base)) return family::ExampleLarge{value};
    return family::Mu{value};
  }
  if (name == "alpha") {
    if (auto* s = std::get_if<family::ExampleSmall>(&base)) return family::ExampleSmall{s->mu, value};
    throw InputError("parameter alpha only applies to ex-small");
  }
  if (name == "rho") return family::Rho{value};
  if (name == "nu") return family::Nu{value};
  if (name == "aspect") return family::Ellipsoid{value};
  throw InputError("unknown sweep parameter '" + name + "'");
}

BoundReport bound_lambda1_mu(double mu) {
  if (!(mu >= 0.0)) throw ParameterError("mu must be >= 0");
  return {"mu", mu, mu + 2.0, BoundDirection::Lower, "mu + 2"};
}

BoundReport bound_lambda1_rho(double rho) {
  if (!(rho >= 0.0)) throw ParameterError("rho must be >= 0");
  return {"rho", rho, std::sqrt(4.0 + 2.0 * rho), BoundDirection::Lower, "sqrt(4 + 2 rho)"};
}

BoundReport bound_lambda1_nu(double nu) {
  if (!(nu > 0.0)) throw ParameterError("nu must be > 0");
  return {"nu", nu, std::numbers::pi * std::numbers::pi / (4.0 * nu), BoundDirection::Upper, "pi^2 / (4 nu)"};
}

AFunctionalReport a_functional(const InvariantMetric& metric) {
  if (!metric.is_even()) throw ParityError("a_functional needs an even metric");
  const auto breaks = metric.breakpoints();
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  auto g = [&](const MomentPoint& p) { return metric.g_at(p); };

  // uniform grid plus geometric clustering toward both ends
  std::vector<double> grid;
  for (int i = 1; i < 128; ++i) grid.push_back(i / 128.0);
  for (double d = 1.0 / 128.0; d > 1e-14; d /= std::numbers::sqrt2) {
    grid.push_back(d);
    grid.push_back(1.0 - d);
  }
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [](double x) { return x >= 1.0; }), grid.end());

  std::vector<double> prefix(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i)
    prefix[i] = prefix[i - 1] + integrate_moment(breaks, grid[i - 1], grid[i], g, opt).value;

  std::size_t best = 0;
  double best_val = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double phi = (1.0 - grid[i]) * prefix[i];
    if (!std::isfinite(phi)) throw DivergenceError("a_functional: (1-x) * int g is unbounded");
    if (phi > best_val) {
      best_val = phi;
      best = i;
    }
  }
  if (best + 1 >= grid.size()) throw DivergenceError("a_functional: supremum approached at x -> 1");

  // golden-section refinement on the neighbouring grid cells
  const std::size_t left = best > 0 ? best - 1 : 0;
  const double base = prefix[left];
  const double a0 = grid[left];
  auto phi = [&](double x) {
    if (x <= a0) return (1.0 - x) * base;
    return (1.0 - x) * (base + integrate_moment(breaks, a0, x, g, opt).value);
  };
  double a = a0, b = grid[std::min(best + 1, grid.size() - 1)];
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = phi(d);
    }
  }
  AFunctionalReport rep;
  const double xm = 0.5 * (a + b);
  const double vm = phi(xm);
  rep.A = std::max(vm, best_val);
  rep.argmax = vm >= best_val ? xm : grid[best];
  if (!(rep.A > 0.0)) throw DivergenceError("a_functional: A is not positive");
  rep.lower = 1.0 / (2.0 * rep.A);
  rep.upper = 1.0 / rep.A;
  return rep;
}

InvariantMetric random_embeddable(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.3, 0.3);
  for (int attempt = 0; attempt < 256; ++attempt) {
    family::Perturbed p{};
    for (double& c : p.coeffs) c = coef(rng);
    try {
      auto m = InvariantMetric::analytic(p);
      if (check_embeddable(m).is_embeddable) return m;
    } catch (const ParameterError&) {
      // not positive inside; draw again
    }
  }
  return InvariantMetric::analytic(family::Standard{});
}

}  // namespace invspec
