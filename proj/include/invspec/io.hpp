#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "invspec/geometry.hpp"
#include "invspec/metric.hpp"
#include "invspec/spectrum.hpp"

namespace invspec {

// Reports carry 12 significant digits.
std::string format12(double v);
double round12(double v);

/// CSV with header `t,p,q`, t strictly increasing from 0.
ProfileCurve read_profile_csv(std::istream& in);
ProfileCurve read_profile_csv(const std::string& path);
void write_profile_csv(std::ostream& out, const ProfileCurve& profile);

/// CSV with header `x,gbar`, x strictly increasing from -1 to 1.
InvariantMetric read_metric_csv(std::istream& in);
InvariantMetric read_metric_csv(const std::string& path);
void write_metric_csv(std::ostream& out, const std::vector<double>& x, const std::vector<double>& gbar);

/// Family name and parameter object, e.g. ("mu", {"mu": 10}).
std::string family_label(const FamilyKind& kind);
nlohmann::ordered_json family_params(const FamilyKind& kind);

nlohmann::ordered_json spectrum_json(const std::string& family, const nlohmann::ordered_json& params,
                                     const SpectrumResult& s);
void write_spectrum_csv(std::ostream& out, const std::string& family, const SpectrumResult& s);

}  // namespace invspec
