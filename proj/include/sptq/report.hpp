#ifndef SPTQ_REPORT_HPP
#define SPTQ_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sptq {

struct FailureDetail {
  long index = 0;          // failing exponent / n / (i,j) encoded by the task
  std::string expected;    // decimal; values can exceed any machine word
  std::string actual;
};

// One verification outcome.  Serialized as a single JSON line with fixed key
// order: task_id, ell, params, truncation, status, first_failure, runtime_ms.
struct VerificationReport {
  std::string task_id;
  std::optional<long> ell;
  std::vector<std::pair<std::string, std::string>> params;
  int truncation = 0;
  bool pass = true;
  std::optional<FailureDetail> first_failure;
  long runtime_ms = 0;

  void fail(long index, std::string expected, std::string actual) {
    if (pass) {
      pass = false;
      first_failure = FailureDetail{index, std::move(expected), std::move(actual)};
    }
  }
  void param(const std::string& k, const std::string& v) {
    params.emplace_back(k, v);
  }
};

std::string to_json_line(const VerificationReport& r);

class Stopwatch {
 public:
  Stopwatch();
  long elapsed_ms() const;

 private:
  long long start_ns_;
};

}  // namespace sptq

#endif
