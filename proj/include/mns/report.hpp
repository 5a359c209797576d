#pragma once

// The versioned JSON report shared by every CLI command.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "mns/freeness.hpp"

namespace mns {

inline constexpr const char* kReportSchema = "mns-report/1";

struct Report {
  std::string command;
  std::string kind;
  std::string verdict;  // a verdict_name, or "computed"
  /// extra top-level fields placed after verdict (classify puts "type" here)
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  Bounds bounds;
  nlohmann::ordered_json witness;  // null unless there is one
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  double elapsed_ms = 0;

  static Report from(const std::string& command, const FreenessReport& r);
};

/// FNV-1a (64 bit) of a byte string.
std::uint64_t fnv1a64(const std::string& bytes);

/// {schema, command, kind, verdict, <summary fields>, bounds:{L,D,N}, witness, result,
///  elapsed_ms, digest}. The digest covers the serialization without
/// elapsed_ms and digest, so it is stable across runs.
nlohmann::ordered_json report_json(const Report& r);
std::string report_digest(const Report& r);

/// Human-readable form without timing, for --format text.
std::string report_text(const Report& r);

}  // namespace mns
