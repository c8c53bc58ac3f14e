#include "sptq/report.hpp"

#include <chrono>

#include <nlohmann/json.hpp>

namespace sptq {

std::string to_json_line(const VerificationReport& r) {
  // ordered_json keeps insertion order, giving every line the same key layout
  nlohmann::ordered_json j;
  j["task_id"] = r.task_id;
  if (r.ell)
    j["ell"] = *r.ell;
  else
    j["ell"] = nullptr;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["truncation"] = r.truncation;
  j["status"] = r.pass ? "pass" : "fail";
  if (r.first_failure) {
    nlohmann::ordered_json f;
    f["index"] = r.first_failure->index;
    f["expected"] = r.first_failure->expected;
    f["actual"] = r.first_failure->actual;
    j["first_failure"] = f;
  } else {
    j["first_failure"] = nullptr;
  }
  j["runtime_ms"] = r.runtime_ms;
  return j.dump();
}

Stopwatch::Stopwatch()
    : start_ns_(std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count()) {}

long Stopwatch::elapsed_ms() const {
  long long now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count();
  return static_cast<long>((now - start_ns_) / 1000000);
}

}  // namespace sptq
