#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "invspec/metric.hpp"

namespace invspec {

struct CheckItem {
  std::string label;
  double value = 0.0;
  std::string relation;  // ">=", "<", "<=", "=", ">"
  double bound = 0.0;
  double tolerance = 0.0;  // slack granted to the relation
  bool passed = false;
};

struct Check {
  std::string name;
  bool passed = true;
  std::vector<CheckItem> items;
};

struct VerificationReport {
  int N = 0;
  std::uint64_t seed = 0;
  bool quick = false;  // N < 1024: coarse mesh, looser tolerances
  std::vector<Check> checks;
  bool passed = true;
};

/// Names accepted by run_verification's filter.
const std::vector<std::string>& verification_checks();

/// Runs the named checks (all when `only` is empty). Deterministic in
/// (N, seed).
VerificationReport run_verification(int N, std::uint64_t seed, const std::vector<std::string>& only = {});

nlohmann::ordered_json verification_json(const VerificationReport& report);
void write_verification_csv(std::ostream& out, const VerificationReport& report);

struct SweepRow {
  std::string param;
  double value = 0.0;
  std::string family;
  double lambda1 = 0.0;
  double lambda1_error = 0.0;
  double bound = 0.0;  // NaN when the family has no closed-form bound
  std::string bound_direction;
  double diameter = 0.0;
  double A = 0.0;  // NaN for metrics that are not even
  double A_lower = 0.0;
  double A_upper = 0.0;
  std::string error;  // non-empty when this row failed numerically
};

/// One row per value, in input order, computed on up to `threads` workers.
std::vector<SweepRow> run_sweep(const FamilyKind& base, const std::string& param, const std::vector<double>& values,
                                int N, unsigned threads);

/// Column order of write_sweep_csv.
const std::vector<std::string>& sweep_columns();
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
nlohmann::ordered_json sweep_json(const std::vector<SweepRow>& rows);

}  // namespace invspec
