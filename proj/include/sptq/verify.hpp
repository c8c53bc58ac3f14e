#ifndef SPTQ_VERIFY_HPP
#define SPTQ_VERIFY_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sptq/report.hpp"
#include "sptq/sptcore.hpp"

namespace sptq {

// fast: trimmed ranges for quick iteration; standard: the documented
// verification parameters; full: extended ranges (bigger tables, longer
// series).  An explicit trunc overrides the suite's default series length.
enum class Suite { kFast, kStandard, kFull };

struct VerifyOptions {
  Suite suite = Suite::kStandard;
  int trunc = 0;             // 0: use the suite default (100 / 500 / 2000)
  std::string cache_dir;     // empty: no on-disk table cache
};

struct VerifyContext {
  VerifyOptions opt;
  int trunc = 0;             // resolved series length
  int table_order = 0;       // resolved table size

  // Lazily built (or loaded from cache_dir) on first use.
  const SptTables& tab();

 private:
  std::shared_ptr<const SptTables> tables_;
};

VerifyContext make_context(const VerifyOptions& opt);

using TaskFn = VerificationReport (*)(VerifyContext&);

struct TaskInfo {
  const char* id;
  TaskFn fn;
};

// Fixed-order task table; ids are stable across releases.
const std::vector<TaskInfo>& task_registry();
std::vector<std::string> task_ids();
bool has_task(const std::string& id);

// Run the named tasks (all of them when ids is empty) in registry order.
// A task that throws is reported as a failure, never a crash.  on_report,
// when set, is called after each task (for streaming output).
std::vector<VerificationReport> run_tasks(
    const VerifyOptions& opt, const std::vector<std::string>& ids,
    const std::function<void(const VerificationReport&)>& on_report = nullptr);

}  // namespace sptq

#endif
