#include "mns/report.hpp"

#include <cstdio>

namespace mns {

using nlohmann::ordered_json;

Report Report::from(const std::string& command, const FreenessReport& r) {
  Report out;
  out.command = command;
  out.kind = r.kind;
  out.verdict = verdict_name(r.verdict);
  out.bounds = r.bounds;
  out.witness = r.witness;
  out.result = r.details;
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

ordered_json bound(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json stable_part(const Report& r) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  j["kind"] = r.kind;
  j["verdict"] = r.verdict;
  for (const auto& [k, v] : r.summary.items()) j[k] = v;
  j["bounds"] = {{"L", bound(r.bounds.L)}, {"D", bound(r.bounds.D)}, {"N", bound(r.bounds.N)}};
  j["witness"] = r.witness;
  j["result"] = r.result;
  return j;
}

}  // namespace

std::string report_digest(const Report& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(stable_part(r).dump())));
  return buf;
}

ordered_json report_json(const Report& r) {
  ordered_json j = stable_part(r);
  j["elapsed_ms"] = static_cast<std::int64_t>(r.elapsed_ms * 1000) / 1000.0;
  j["digest"] = report_digest(r);
  return j;
}

std::string report_text(const Report& r) {
  std::string s;
  s += "command: " + r.command + "\n";
  s += "kind: " + r.kind + "\n";
  s += "verdict: " + r.verdict + "\n";
  for (const auto& [k, v] : r.summary.items()) s += k + ": " + v.dump() + "\n";
  s += "bounds:";
  if (r.bounds.L) s += " L=" + std::to_string(*r.bounds.L);
  if (r.bounds.D) s += " D=" + std::to_string(*r.bounds.D);
  if (r.bounds.N) s += " N=" + std::to_string(*r.bounds.N);
  s += "\n";
  if (!r.witness.is_null()) s += "witness: " + r.witness.dump() + "\n";
  if (r.result.contains("series") && r.result["series"].is_string())
    s += r.result["series"].get<std::string>();
  else if (!r.result.empty())
    s += "result: " + r.result.dump() + "\n";
  s += "digest: " + report_digest(r) + "\n";
  return s;
}

}  // namespace mns
