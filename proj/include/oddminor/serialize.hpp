#pragma once

#include <string>

#include <json.hpp>

#include "oddminor/appendix.hpp"
#include "oddminor/audit.hpp"
#include "oddminor/construction.hpp"
#include "oddminor/montecarlo.hpp"
#include "oddminor/odd_minor.hpp"
#include "oddminor/pairing.hpp"

namespace oddminor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "oddminor-forge/1";

/// Library version, as recorded in every result record.
std::string artifact_version();

Json to_json(const ConstructionParams& params);
Json to_json(const ConstructionTrace& trace);
/// Throws MalformedInput (offset 0) on a missing field or wrong schema.
ConstructionTrace trace_from_json(const Json& j);

Json to_json(const Pairing& pairing);
Pairing pairing_from_json(const Json& j);

Json to_json(const MinorModel& model);
MinorModel model_from_json(const Json& j);

Json to_json(const BoundCheck& check);
Json to_json(const EventReport& report);
Json to_json(const TraceVerification& verification);
Json to_json(const FrequencyEstimate& estimate);
Json to_json(const SweepRecord& record);
Json to_json(const CertificateReport& report);

const char* to_string(SearchStatus status);

/// Parses JSON text, turning parse errors into MalformedInput with the byte
/// offset reported by the parser.
Json parse_json(const std::string& text);

/// Appends one compact JSON line to the file.
void append_jsonl(const std::string& path, const Json& record);

}  // namespace oddminor
