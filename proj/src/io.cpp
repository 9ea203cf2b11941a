#include "invspec/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "invspec/errors.hpp"

namespace invspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

// Rows of a numeric CSV with the given header; line numbers in errors.
std::vector<std::vector<double>> read_table(std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  int lineno = 0;
  bool seen_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (!seen_header) {
      if (cells != header) {
        std::string want;
        for (std::size_t i = 0; i < header.size(); ++i) want += (i ? "," : "") + header[i];
        throw InputError("CSV header must be '" + want + "' (line " + std::to_string(lineno) + ")");
      }
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size())
      throw InputError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) + " fields");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size() || !std::isfinite(v))
        throw InputError("CSV line " + std::to_string(lineno) + ": malformed number '" + c + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw InputError("CSV input is empty");
  return rows;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return in;
}

nlohmann::ordered_json num(double v) { return round12(v); }

}  // namespace

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(format12(v).c_str(), nullptr); }

ProfileCurve read_profile_csv(std::istream& in) {
  const auto rows = read_table(in, {"t", "p", "q"});
  ProfileCurve prof;
  for (const auto& r : rows) prof.samples.push_back({r[0], r[1], r[2]});
  if (prof.samples.size() < 3) throw InputError("profile CSV needs at least 3 rows");
  if (prof.samples.front().t != 0.0) throw InputError("profile CSV: t must start at 0");
  for (std::size_t i = 0; i + 1 < prof.samples.size(); ++i)
    if (!(prof.samples[i + 1].t > prof.samples[i].t)) throw InputError("profile CSV: t must be strictly increasing");
  prof.length = prof.samples.back().t;
  return prof;
}

ProfileCurve read_profile_csv(const std::string& path) {
  auto in = open_input(path);
  return read_profile_csv(in);
}

void write_profile_csv(std::ostream& out, const ProfileCurve& profile) {
  out << "t,p,q\n";
  for (const auto& s : profile.samples) out << format12(s.t) << ',' << format12(s.p) << ',' << format12(s.q) << '\n';
}

InvariantMetric read_metric_csv(std::istream& in) {
  const auto rows = read_table(in, {"x", "gbar"});
  std::vector<double> x, g;
  for (const auto& r : rows) {
    x.push_back(r[0]);
    g.push_back(r[1]);
  }
  return InvariantMetric::sampled(std::move(x), std::move(g));
}

InvariantMetric read_metric_csv(const std::string& path) {
  auto in = open_input(path);
  return read_metric_csv(in);
}

void write_metric_csv(std::ostream& out, const std::vector<double>& x, const std::vector<double>& gbar) {
  out << "x,gbar\n";
  for (std::size_t i = 0; i < x.size(); ++i) out << format12(x[i]) << ',' << format12(gbar[i]) << '\n';
}

std::string family_label(const FamilyKind& kind) {
  const std::string d = describe_family(kind);
  return d.substr(0, d.find(':'));
}

nlohmann::ordered_json family_params(const FamilyKind& kind) {
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  std::visit(overloaded{
                 [](const family::Standard&) {},
                 [](const family::Tent&) {},
                 [&](const family::Mu& f) { p["mu"] = num(f.mu); },
                 [&](const family::Rho& f) { p["rho"] = num(f.rho); },
                 [&](const family::Nu& f) { p["nu"] = num(f.nu); },
                 [&](const family::Ellipsoid& f) { p["aspect"] = num(f.aspect); },
                 [&](const family::ExampleSmall& f) {
                   p["mu"] = num(f.mu);
                   p["alpha"] = num(f.alpha);
                 },
                 [&](const family::ExampleLarge& f) { p["mu"] = num(f.mu); },
                 [&](const family::Perturbed& f) {
                   auto c = nlohmann::ordered_json::array();
                   for (double v : f.coeffs) c.push_back(num(v));
                   p["coeffs"] = c;
                 },
             },
             kind);
  return p;
}

nlohmann::ordered_json spectrum_json(const std::string& family, const nlohmann::ordered_json& params,
                                     const SpectrumResult& s) {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["params"] = params;
  j["mode"] = s.mode;
  j["N"] = s.mesh_size;
  auto ev = nlohmann::ordered_json::array(), er = nlohmann::ordered_json::array(),
       pa = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    ev.push_back(num(s.eigenvalues[i]));
    er.push_back(num(s.error_estimates[i]));
    pa.push_back(i < s.parity.size() ? to_string(s.parity[i]) : "none");
  }
  j["eigenvalues"] = ev;
  j["error_estimates"] = er;
  j["parity"] = pa;
  return j;
}

void write_spectrum_csv(std::ostream& out, const std::string& family, const SpectrumResult& s) {
  out << "family,mode,N,index,eigenvalue,error_estimate,parity\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    out << family << ',' << s.mode << ',' << s.mesh_size << ',' << (i + 1) << ',' << format12(s.eigenvalues[i]) << ','
        << format12(s.error_estimates[i]) << ',' << (i < s.parity.size() ? to_string(s.parity[i]) : "none") << '\n';
}

}  // namespace invspec
