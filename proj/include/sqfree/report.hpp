#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sqfree/congruence.hpp"
#include "sqfree/counting.hpp"
#include "sqfree/density.hpp"

namespace sqfree {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Every number is written as a decimal string so that values survive
// parsers that read JSON numbers as doubles.

json to_json(const RootSet& r);
json to_json(const PrimeClassification& c);
json to_json(const SupportQuery& q);
json to_json(const DensityEstimate& e);
json to_json(const DensityVariant& v);
json to_json(const Interval& iv);
json to_json(const SieveResult& s);
json to_json(const CountReport& r);
json to_json(const ScanRow& r);
json to_json(const EmpiricalDensity& e);
json to_json(const Adjudication& a);

RootSet root_set_from_json(const json& j);
PrimeClassification classification_from_json(const json& j);
DensityEstimate density_from_json(const json& j);
Interval interval_from_json(const json& j);
SieveResult sieve_from_json(const json& j);
CountReport count_report_from_json(const json& j);
ScanRow scan_row_from_json(const json& j);

/// {"schema": 1, "kind": kind, <body fields>}.
json envelope(const std::string& kind, const json& body);

inline const char* kCountCsvHeader = "x,count,main,error,predicted,deviation,normalized";

std::string scan_csv(const std::vector<ScanRow>& rows);
/// One row in the scan layout; main/error come from the sieve when it ran,
/// otherwise from the prediction.
std::string count_csv(const CountReport& r, double epsilon = 0.1);
std::string classify_csv(const std::vector<PrimeClassification>& rows);

}  // namespace sqfree
