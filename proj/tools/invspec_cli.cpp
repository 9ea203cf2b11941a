#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "invspec/errors.hpp"
#include "invspec/families.hpp"
#include "invspec/geometry.hpp"
#include "invspec/hardy.hpp"
#include "invspec/io.hpp"
#include "invspec/spectrum.hpp"
#include "invspec/verify.hpp"

using namespace invspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerifyFailed = 3;

struct RunConfig {
  std::string family;
  std::string profile;
  std::string metric;
  int k = 4;
  int n = 4096;
  int mode = 0;
  int mmax = 3;
  bool full = false;
  std::string grid;
  std::string format;  // empty: json, csv for sweep
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::vector<std::string> checks;
  double p = 1.0;
  int samples = 4097;
};

// A usage problem detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

struct Source {
  InvariantMetric metric;
  std::string label;
  nlohmann::ordered_json params;
};

Source load_source(const RunConfig& cfg) {
  const int given = !cfg.family.empty() + !cfg.profile.empty() + !cfg.metric.empty();
  if (given > 1) throw UsageError("give only one of --family, --profile, --metric");
  if (!cfg.profile.empty()) {
    const auto prof = normalize_profile_area(read_profile_csv(cfg.profile));
    return {metric_from_profile(prof), "profile", {{"path", cfg.profile}}};
  }
  if (!cfg.metric.empty()) return {read_metric_csv(cfg.metric), "metric", {{"path", cfg.metric}}};
  const FamilyKind kind = parse_family(cfg.family.empty() ? "standard" : cfg.family);
  return {make_family(kind), family_label(kind), family_params(kind)};
}

int cmd_spectrum(const RunConfig& cfg) {
  const Source src = load_source(cfg);
  if (cfg.full) {
    const auto full = full_spectrum(src.metric, cfg.mmax, cfg.k, cfg.n);
    if (cfg.format == "csv") {
      std::ostringstream os;
      os << "family,N,index,eigenvalue,mode,multiplicity,error_estimate\n";
      for (std::size_t i = 0; i < full.size(); ++i)
        os << src.label << ',' << cfg.n << ',' << (i + 1) << ',' << format12(full[i].value) << ',' << full[i].mode
           << ',' << full[i].multiplicity << ',' << format12(full[i].error_estimate) << '\n';
      emit(cfg, os.str());
    } else {
      nlohmann::ordered_json j;
      j["family"] = src.label;
      j["params"] = src.params;
      j["m_max"] = cfg.mmax;
      j["N"] = cfg.n;
      auto arr = nlohmann::ordered_json::array();
      for (const auto& e : full)
        arr.push_back({{"eigenvalue", round12(e.value)},
                       {"mode", e.mode},
                       {"multiplicity", e.multiplicity},
                       {"error_estimate", round12(e.error_estimate)}});
      j["eigenvalues"] = arr;
      emit(cfg, dump(j));
    }
    return kExitOk;
  }
  const auto s = cfg.mode == 0 ? invariant_spectrum(src.metric, cfg.k, cfg.n)
                               : mode_spectrum(src.metric, cfg.mode, cfg.k, cfg.n);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_spectrum_csv(os, src.label, s);
    emit(cfg, os.str());
  } else {
    emit(cfg, dump(spectrum_json(src.label, src.params, s)));
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto rep = run_verification(cfg.n, cfg.seed, cfg.checks);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_verification_csv(os, rep);
    emit(cfg, os.str());
  } else {
    emit(cfg, dump(verification_json(rep)));
  }
  for (const auto& c : rep.checks) std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
  return rep.passed ? kExitOk : kExitVerifyFailed;
}

std::pair<std::string, std::vector<double>> parse_grid(const std::string& grid) {
  const auto eq = grid.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == grid.size())
    throw UsageError("grid must look like name=v1,v2,...");
  std::vector<double> values;
  std::stringstream ss(grid.substr(eq + 1));
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(v)) throw UsageError("bad grid value '" + cell + "'");
    values.push_back(v);
  }
  return {grid.substr(0, eq), values};
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.grid.empty()) throw UsageError("sweep needs --grid name=v1,v2,...");
  const auto [param, values] = parse_grid(cfg.grid);
  const FamilyKind base = parse_family(cfg.family.empty() ? "standard" : cfg.family);
  const unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const auto rows = run_sweep(base, param, values, cfg.n, threads);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    emit(cfg, os.str());
  } else {
    emit(cfg, dump(sweep_json(rows)));
  }
  const bool any_failed = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); });
  return any_failed ? kExitNumerical : kExitOk;
}

int cmd_profile(const RunConfig& cfg) {
  const Source src = load_source(cfg);
  const auto prof = profile_from_metric(src.metric, cfg.samples);
  std::ostringstream os;
  write_profile_csv(os, prof);
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_hardy(const RunConfig& cfg) {
  const auto r = hardy_report(cfg.p, std::max(cfg.n, 256));
  nlohmann::ordered_json j;
  j["p"] = round12(r.p);
  j["m"] = round12(r.m);
  j["numeric_C_upper"] = round12(r.numeric_C_upper);
  j["numeric_error"] = round12(r.numeric_error);
  auto tr = nlohmann::ordered_json::array();
  for (const auto& e : r.eps_trace) tr.push_back({{"eps", round12(e.eps)}, {"quotient", round12(e.quotient)}});
  j["eps_trace"] = tr;
  emit(cfg, dump(j));
  return kExitOk;
}

void add_source_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--family", cfg.family, "family spec: standard | mu:<v> | rho:<v> | nu:<v> | tent | "
                                          "ellipsoid:<aspect> | ex-small:<mu>,<alpha> | ex-large:<mu>");
  app->add_option("--profile", cfg.profile, "profile CSV (t,p,q), rescaled to unit-sphere area");
  app->add_option("--metric", cfg.metric, "metric CSV (x,gbar)");
}

void add_output_flags(CLI::App* app, RunConfig& cfg, const std::string& default_format = "json") {
  app->add_option("--format", cfg.format, "output format json|csv (default " + default_format + ")")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", cfg.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and geometry of circle-invariant metrics on the 2-sphere"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of one metric");
  add_source_flags(spectrum, cfg);
  spectrum->add_option("--k", cfg.k, "number of eigenvalues")->check(CLI::PositiveNumber)->capture_default_str();
  spectrum->add_option("--n", cfg.n, "mesh size")->check(CLI::Range(64, 1 << 22))->capture_default_str();
  spectrum->add_option("--mode", cfg.mode, "Fourier mode m")->check(CLI::NonNegativeNumber)->capture_default_str();
  spectrum->add_flag("--full", cfg.full, "full spectrum over modes 0..mmax with multiplicities");
  spectrum->add_option("--mmax", cfg.mmax, "largest mode for --full")->check(CLI::Range(2, 64))->capture_default_str();
  add_output_flags(spectrum, cfg);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--n", cfg.n, "mesh size (below 1024 runs in quick mode)")
      ->check(CLI::Range(64, 1 << 22))
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for random metrics")->capture_default_str();
  verify->add_option("--check", cfg.checks, "run only these checks")->check(CLI::IsMember(verification_checks()));
  add_output_flags(verify, cfg);

  auto* sweep = app.add_subcommand("sweep", "lambda_1, bounds, diameter and A over a parameter grid");
  sweep->add_option("--family", cfg.family, "base family for the swept parameter");
  sweep->add_option("--grid", cfg.grid, "name=v1,v2,... with name in mu, rho, nu, aspect, alpha")->required();
  sweep->add_option("--n", cfg.n, "mesh size")->check(CLI::Range(64, 1 << 22))->capture_default_str();
  sweep->add_option("--threads", cfg.threads, "worker threads (0 = auto)")->capture_default_str();
  add_output_flags(sweep, cfg, "csv");

  auto* profile = app.add_subcommand("profile", "generating curve (t,p,q) of a metric as CSV");
  add_source_flags(profile, cfg);
  profile->add_option("--samples", cfg.samples, "number of samples")->check(CLI::Range(3, 1 << 22))->capture_default_str();
  profile->add_option("--out", cfg.out, "output path (default stdout)");

  auto* hardy = app.add_subcommand("hardy", "Hardy constants for weight (1-x^2)^(2p)");
  hardy->add_option("--p", cfg.p, "exponent p in [0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  hardy->add_option("--n", cfg.n, "mesh size")->check(CLI::Range(64, 1 << 22))->capture_default_str();
  hardy->add_option("--out", cfg.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (cfg.format.empty()) cfg.format = sweep->parsed() ? "csv" : "json";

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (profile->parsed()) return cmd_profile(cfg);
    if (hardy->parsed()) return cmd_hardy(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
