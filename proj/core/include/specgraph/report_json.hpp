#pragma once

#include <string>

#include "specgraph/json_value.hpp"
#include "specgraph/protocol.hpp"
#include "specgraph/simulation.hpp"

namespace specgraph {

/// Version of the report layout; bumped on any incompatible change.
constexpr int kReportSchemaVersion = 1;

json::Value to_json(const DeviationQuantile& q);
json::Value to_json(const SubspaceRegion& region);
json::Value to_json(const CentralityBand& band);
json::Value to_json(const StabilityCertificate& cert);
json::Value to_json(const ClusterRegion& region);
json::Value to_json(const FairnessOutput& fairness);
json::Value to_json(const FiltrationOutput& filtration);
json::Value to_json(const FiltrationReport& report);
json::Value to_json(const DiagnosticReport& report);
json::Value to_json(const CoverageResult& result);
json::Value to_json(const AuditCounter& audit);
json::Value to_json(const ModulusAudit& audit);

/// Full document with "schema_version" and "kind" leading.
std::string report_document(const std::string& kind, json::Value body);

/// One CSV row per claim, then one per audit.
std::string coverage_csv(const CoverageResult& result);

}  // namespace specgraph
