#include "invspec/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "invspec/appendix.hpp"
#include "invspec/errors.hpp"
#include "invspec/families.hpp"
#include "invspec/geometry.hpp"
#include "invspec/hardy.hpp"
#include "invspec/io.hpp"
#include "invspec/special.hpp"
#include "invspec/spectrum.hpp"

namespace invspec {

namespace {

std::string tag(const std::string& what, double v) { return what + "(" + format12(v) + ")"; }

struct CheckBuilder {
  Check check;

  explicit CheckBuilder(std::string name) { check.name = std::move(name); }

  void add(std::string label, double value, std::string rel, double bound, double tol) {
    bool ok = false;
    if (rel == ">=") ok = value + tol >= bound;
    else if (rel == ">") ok = value - tol > bound;
    else if (rel == "<") ok = value + tol < bound;
    else if (rel == "<=") ok = value - tol <= bound;
    else if (rel == "=") ok = std::abs(value - bound) <= tol;
    ok = ok && std::isfinite(value);
    check.items.push_back({std::move(label), value, std::move(rel), bound, tol, ok});
    check.passed = check.passed && ok;
  }

  void fail(std::string label, const std::exception& e) {
    check.items.push_back({std::move(label) + ": " + e.what(), NAN, "error", 0.0, 0.0, false});
    check.passed = false;
  }
};

struct Context {
  int N;
  std::uint64_t seed;
  bool quick;
  // relative slack on top of solver error bars
  double slack;
};

double lambda1_slack(const Context& c, const SpectrumResult& s, std::size_t j = 0) {
  return s.error_estimates[j] + c.slack * std::abs(s.eigenvalues[j]);
}

Check theorem1_mu(const Context& c) {
  CheckBuilder b("theorem1-mu");
  for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
    const auto s = invariant_spectrum(make_family(family::Mu{mu}), 1, c.N);
    b.add(tag("lambda1 mu", mu), s.eigenvalues[0], ">=", bound_lambda1_mu(mu).value, lambda1_slack(c, s));
  }
  return b.check;
}

Check theorem1_rho(const Context& c) {
  CheckBuilder b("theorem1-rho");
  for (double rho : {6.0, 30.0, 300.0}) {
    const auto s = invariant_spectrum(make_family(family::Rho{rho}), 1, c.N);
    b.add(tag("lambda1 rho", rho), s.eigenvalues[0], ">=", bound_lambda1_rho(rho).value, lambda1_slack(c, s));
  }
  return b.check;
}

Check theorem1_nu(const Context& c) {
  CheckBuilder b("theorem1-nu");
  for (double nu : {1.0, 10.0, 100.0}) {
    const auto s = invariant_spectrum(make_family(family::Nu{nu}), 1, c.N);
    b.add(tag("lambda1 nu", nu), s.eigenvalues[0], "<", bound_lambda1_nu(nu).value, lambda1_slack(c, s));
  }
  return b.check;
}

Check theorem2(const Context& c) {
  CheckBuilder b("theorem2");
  const auto tent = tent_spectrum(4);
  auto strictly_below = [&](const std::string& name, const InvariantMetric& m) {
    const auto s = invariant_spectrum(m, 4, c.N);
    for (std::size_t j = 0; j < 4; ++j)
      b.add(name + " lambda" + std::to_string(j + 1), s.eigenvalues[j], "<", tent[j], lambda1_slack(c, s, j));
    return s;
  };
  for (std::uint64_t i = 0; i < 20; ++i)
    strictly_below("random(seed=" + std::to_string(c.seed + i) + ")", random_embeddable(c.seed + i));
  std::vector<SpectrumResult> ell;
  for (double a : {0.9, 0.7, 0.5, 0.3})
    ell.push_back(strictly_below(tag("ellipsoid", a), make_family(family::Ellipsoid{a})));
  const double aspects[] = {0.9, 0.7, 0.5, 0.3};
  for (std::size_t i = 1; i < ell.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j)
      b.add(tag("ellipsoid", aspects[i]) + " lambda" + std::to_string(j + 1) + " vs " + format12(aspects[i - 1]),
            ell[i].eigenvalues[j], ">=", ell[i - 1].eigenvalues[j],
            ell[i].error_estimates[j] + ell[i - 1].error_estimates[j]);
  return b.check;
}

Check hardy(const Context& c) {
  CheckBuilder b("hardy");
  const int n = std::max(c.N, 256);
  const auto half = hardy_constant_numeric(0.5, n);
  b.add("C(1/2) numeric", half.value, "=", 2.0, c.quick ? 1e-3 : 1e-4);
  const auto one = hardy_constant_numeric(1.0, n);
  b.add("C(1) numeric", one.value, ">=", 1.0, 0.0);
  b.add("C(1) numeric", one.value, "<=", 1.1, c.quick ? 0.05 : 0.0);
  b.add("C(1) numeric at 2N", one.fine_value, "<", one.value, 0.0);
  const auto& sched = eps_schedule();
  for (std::size_t i = 1; i < sched.size(); ++i)
    b.add(tag("feps", sched[i]), feps_quotient(sched[i]), "<", feps_quotient(sched[i - 1]), 0.0);
  b.add("feps closed form vs quadrature (eps=1)", feps_quotient(1.0), "=", feps_quotient_quadrature(1.0), 1e-8);
  b.add(tag("feps", 1e-6), feps_quotient(1e-6), "<", 1.02, 0.0);
  return b.check;
}

Check afunctional(const Context& c) {
  CheckBuilder b("afunctional");
  const std::pair<const char*, FamilyKind> cases[] = {{"standard", family::Standard{}},
                                                      {"nu:1", family::Nu{1.0}},
                                                      {"nu:10", family::Nu{10.0}},
                                                      {"ellipsoid:0.8", family::Ellipsoid{0.8}},
                                                      {"ellipsoid:0.5", family::Ellipsoid{0.5}}};
  for (const auto& [name, kind] : cases) {
    const auto m = make_family(kind);
    const auto a = a_functional(m);
    const auto s = invariant_spectrum(m, 1, c.N);
    b.add(std::string(name) + " lambda1 vs 1/(2A)", s.eigenvalues[0], ">=", a.lower, lambda1_slack(c, s));
    b.add(std::string(name) + " lambda1 vs 1/A", s.eigenvalues[0], "<=", a.upper, lambda1_slack(c, s));
  }
  return b.check;
}

Check diameters(const Context& c) {
  CheckBuilder b("diameter");
  const double tent_d = 2.0 * std::numbers::sqrt2;
  b.add("D(standard)", diameter(make_family(family::Standard{})), "=", std::numbers::pi, 1e-8);
  b.add("D(tent)", diameter(make_family(family::Tent{})), "=", tent_d, 1e-10);
  for (std::uint64_t i = 0; i < 20; ++i)
    b.add("D(random seed=" + std::to_string(c.seed + i) + ")", diameter(random_embeddable(c.seed + i)), ">", tent_d,
          0.0);
  for (double a : {0.9, 0.7, 0.5, 0.3})
    b.add(tag("D(ellipsoid", a) + ")", diameter(make_family(family::Ellipsoid{a})), ">", tent_d, 0.0);

  double prev_d = 0.0, prev_inv = 0.0;
  bool first = true;
  for (double mu : {1e2, 1e3, 1e4}) {
    const auto m = make_family(family::ExampleSmall{mu, 0.25});
    const double d = diameter(m), inv = 1.0 / a_functional(m).A;
    if (!first) {
      b.add(tag("ex-small D mu", mu), d, "<", prev_d, 0.0);
      b.add(tag("ex-small 1/A mu", mu), inv, "<", prev_inv, 0.0);
    }
    prev_d = d;
    prev_inv = inv;
    first = false;
  }
  first = true;
  for (double mu : {1e2, 1e4, 1e6}) {
    const auto m = make_family(family::ExampleLarge{mu});
    const double d = diameter(m), lo = a_functional(m).lower;
    if (!first) {
      b.add(tag("ex-large D mu", mu), d, ">", prev_d, 0.0);
      b.add(tag("ex-large 1/(2A) mu", mu), lo, ">", prev_inv, 0.0);
    }
    prev_d = d;
    prev_inv = lo;
    first = false;
  }
  return b.check;
}

Check yau(const Context& c) {
  CheckBuilder b("yau");
  const auto ell = make_family(family::Ellipsoid{0.8});
  const auto full = full_spectrum(ell, 3, 3, c.N);
  const auto inv = invariant_spectrum(ell, 1, c.N);
  const auto& third = full[2];
  b.add("ellipsoid(0.8) third eigenvalue", third.value, ">", 2.0, third.error_estimate);
  b.add("ellipsoid(0.8) third eigenvalue mode", third.mode, "=", 0.0, 0.0);
  b.add("ellipsoid(0.8) third vs invariant lambda1", third.value, "=", inv.eigenvalues[0],
        1e-12 * inv.eigenvalues[0]);
  const auto std_full = full_spectrum(make_family(family::Standard{}), 3, 3, c.N);
  b.add("standard third eigenvalue", std_full[2].value, "=", 2.0, c.quick ? 1e-4 : 1e-6);
  return b.check;
}

Check appendix(const Context&) {
  CheckBuilder b("appendix");
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(-0.9 + 1.8 * i / 100.0);
  for (double lambda : {0.5, 1.0, 2.0})
    for (int branch : {1, 2}) {
      const auto s = appendix_solution(lambda, branch);
      b.add(tag("residual lambda", lambda) + " branch " + std::to_string(branch),
            el_residual(lambda, [&](double x) { return s.eval(x); }, xs), "<=", 1e-8, 0.0);
      b.add(tag("indicial lambda", lambda), indicial_residual(s), "<=", 1e-14, 0.0);
    }
  const auto f1 = appendix_solution(1.0, 1);
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(f1(x) - x / std::sqrt((1.0 - x) * (1.0 + x))));
  b.add("lambda=1 branch 1 vs x/sqrt(1-x^2)", worst, "<=", 1e-12, 0.0);
  const auto f5 = appendix_solution(5.0, 1);
  int changes = 0;
  double prev = f5(1e-6);
  for (int i = 1; i <= 20000; ++i) {
    // log-spaced toward x = 1 - 1e-6
    const double x = 1.0 - std::pow(10.0, -6.0 * i / 20000.0);
    const double v = f5(std::max(x, 1e-6));
    if ((v < 0.0) != (prev < 0.0)) ++changes;
    prev = v;
  }
  b.add("lambda=5 branch 1 sign changes on (0, 1-1e-6)", changes, ">=", 3.0, 0.0);
  return b.check;
}

using CheckFn = Check (*)(const Context&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"theorem1-mu", theorem1_mu}, {"theorem1-rho", theorem1_rho}, {"theorem1-nu", theorem1_nu},
      {"theorem2", theorem2},       {"hardy", hardy},               {"afunctional", afunctional},
      {"diameter", diameters},      {"yau", yau},                   {"appendix", appendix}};
  return r;
}

nlohmann::ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

std::string csv_number(double v) { return std::isfinite(v) ? format12(v) : ""; }

}  // namespace

const std::vector<std::string>& verification_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

VerificationReport run_verification(int N, std::uint64_t seed, const std::vector<std::string>& only) {
  if (N < 64) throw ParameterError("verification needs N >= 64");
  for (const auto& name : only)
    if (std::find(verification_checks().begin(), verification_checks().end(), name) == verification_checks().end())
      throw InputError("unknown check '" + name + "'");
  VerificationReport rep;
  rep.N = N;
  rep.seed = seed;
  rep.quick = N < 1024;
  const Context ctx{N, seed, rep.quick, rep.quick ? 1e-4 : 1e-9};
  for (const auto& [name, fn] : registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Check c;
    try {
      c = fn(ctx);
    } catch (const std::exception& e) {
      CheckBuilder b(name);
      b.fail("numerical failure", e);
      c = b.check;
    }
    rep.passed = rep.passed && c.passed;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

nlohmann::ordered_json verification_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["N"] = report.N;
  j["seed"] = report.seed;
  j["quick"] = report.quick;
  j["passed"] = report.passed;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    auto items = nlohmann::ordered_json::array();
    for (const auto& it : c.items) {
      nlohmann::ordered_json ij;
      ij["label"] = it.label;
      ij["value"] = number_or_null(it.value);
      ij["relation"] = it.relation;
      ij["bound"] = number_or_null(it.bound);
      ij["tolerance"] = number_or_null(it.tolerance);
      ij["passed"] = it.passed;
      items.push_back(ij);
    }
    cj["items"] = items;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

void write_verification_csv(std::ostream& out, const VerificationReport& report) {
  out << "check,label,value,relation,bound,tolerance,passed\n";
  for (const auto& c : report.checks)
    for (const auto& it : c.items)
      out << c.name << ",\"" << it.label << "\"," << csv_number(it.value) << ',' << it.relation << ','
          << csv_number(it.bound) << ',' << csv_number(it.tolerance) << ',' << (it.passed ? "true" : "false") << '\n';
}

std::vector<SweepRow> run_sweep(const FamilyKind& base, const std::string& param, const std::vector<double>& values,
                                int N, unsigned threads) {
  std::vector<SweepRow> rows(values.size());
  // validate the parameter name before spawning workers
  if (!values.empty()) (void)with_parameter(base, param, values.front());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& r = rows[i];
      r.param = param;
      r.value = values[i];
      r.bound = NAN;
      r.A = r.A_lower = r.A_upper = NAN;
      try {
        const FamilyKind kind = with_parameter(base, param, values[i]);
        r.family = describe_family(kind);
        const auto m = make_family(kind);
        const auto s = invariant_spectrum(m, 1, N);
        r.lambda1 = s.eigenvalues[0];
        r.lambda1_error = s.error_estimates[0];
        if (const auto* f = std::get_if<family::Mu>(&kind)) {
          r.bound = bound_lambda1_mu(f->mu).value;
          r.bound_direction = "lower";
        } else if (const auto* f = std::get_if<family::Rho>(&kind)) {
          r.bound = bound_lambda1_rho(f->rho).value;
          r.bound_direction = "lower";
        } else if (const auto* f = std::get_if<family::Nu>(&kind)) {
          r.bound = bound_lambda1_nu(f->nu).value;
          r.bound_direction = "upper";
        }
        r.diameter = diameter(m);
        if (m.is_even()) {
          const auto a = a_functional(m);
          r.A = a.A;
          r.A_lower = a.lower;
          r.A_upper = a.upper;
        }
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(values.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"param",    "value",  "family",          "lambda1", "lambda1_error",
                                             "bound",    "bound_direction", "diameter", "A",       "A_lower",
                                             "A_upper",  "error"};
  return cols;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.param << ',' << csv_number(r.value) << ",\"" << r.family << "\"," << csv_number(r.lambda1) << ','
        << csv_number(r.lambda1_error) << ',' << csv_number(r.bound) << ',' << r.bound_direction << ','
        << csv_number(r.diameter) << ',' << csv_number(r.A) << ',' << csv_number(r.A_lower) << ','
        << csv_number(r.A_upper) << ",\"" << r.error << "\"\n";
  }
}

nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["param"] = r.param;
    j["value"] = number_or_null(r.value);
    j["family"] = r.family;
    j["lambda1"] = number_or_null(r.lambda1);
    j["lambda1_error"] = number_or_null(r.lambda1_error);
    j["bound"] = number_or_null(r.bound);
    j["bound_direction"] = r.bound_direction;
    j["diameter"] = number_or_null(r.diameter);
    j["A"] = number_or_null(r.A);
    j["A_lower"] = number_or_null(r.A_lower);
    j["A_upper"] = number_or_null(r.A_upper);
    j["error"] = r.error;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace invspec
