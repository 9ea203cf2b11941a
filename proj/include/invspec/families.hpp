#pragma once

#include <cstdint>
#include <string>

#include "invspec/metric.hpp"

namespace invspec {

/// Analytic metric of a named family. Throws ParameterError out of range.
InvariantMetric make_family(const FamilyKind& kind);

/// Parses `standard | mu:<v> | rho:<v> | nu:<v> | tent | ellipsoid:<aspect> |
/// ex-small:<mu>,<alpha> | ex-large:<mu> | perturbed:<c0>,..,<c4>`.
FamilyKind parse_family(const std::string& spec);
std::string format_family(const FamilyKind& kind);

/// Replace (or introduce) one named parameter: mu, rho, nu, aspect or alpha.
FamilyKind with_parameter(const FamilyKind& base, const std::string& name, double value);

enum class BoundDirection { Lower, Upper };

struct BoundReport {
  std::string family;
  double parameter = 0.0;
  double value = 0.0;
  BoundDirection direction = BoundDirection::Lower;
  std::string formula;
};

BoundReport bound_lambda1_mu(double mu);    // lambda_1 >= mu + 2
BoundReport bound_lambda1_rho(double rho);  // lambda_1 >= sqrt(4 + 2 rho)
BoundReport bound_lambda1_nu(double nu);    // lambda_1 <  pi^2 / (4 nu)

/// A = sup over (0, 1) of (1 - x) * integral_0^x g, with the induced bracket
/// 1/(2A) <= lambda_1 <= 1/A for even metrics.
struct AFunctionalReport {
  double A = 0.0;
  double argmax = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Throws ParityError for metrics that are not even.
AFunctionalReport a_functional(const InvariantMetric& metric);

/// Deterministic smooth embeddable perturbation of the round metric.
InvariantMetric random_embeddable(std::uint64_t seed);

}  // namespace invspec
