#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "sptq/modeq.hpp"
#include "sptq/sptcore.hpp"
#include "sptq/verify.hpp"

namespace {

int run_compute(bool want_p, bool want_spt, bool want_n2, bool want_a,
                long max_n) {
  int picked = int(want_p) + int(want_spt) + int(want_n2) + int(want_a);
  if (picked != 1) {
    std::cerr << "compute: pick exactly one of --p/--spt/--n2/--a\n";
    return 2;
  }
  auto t = sptq::tables_for(static_cast<int>(max_n) + 1);
  const std::vector<sptq::Int>& col =
      want_p ? t->p : want_spt ? t->spt : want_n2 ? t->n2 : t->a;
  for (long n = 0; n <= max_n; ++n)
    std::cout << n << ' ' << col[static_cast<size_t>(n)].get_str() << '\n';
  return 0;
}

int run_verify(const std::string& suite, int trunc,
               const std::vector<std::string>& tasks, const std::string& out,
               const std::string& cache) {
  for (const std::string& id : tasks)
    if (!sptq::has_task(id)) {
      std::cerr << "unknown task: " << id << "\n";
      std::cerr << "known tasks:";
      for (const std::string& t : sptq::task_ids()) std::cerr << ' ' << t;
      std::cerr << '\n';
      return 2;
    }
  sptq::VerifyOptions opt;
  opt.suite = suite == "fast" ? sptq::Suite::kFast
              : suite == "full" ? sptq::Suite::kFull
                                : sptq::Suite::kStandard;
  opt.trunc = trunc;
  opt.cache_dir = cache;
  std::ofstream os;
  if (!out.empty()) {
    os.open(out);
    if (!os) {
      std::cerr << "cannot open " << out << " for writing\n";
      return 2;
    }
  }
  long failed = 0;
  auto reps = sptq::run_tasks(opt, tasks, [&](const sptq::VerificationReport& r) {
    std::string line = sptq::to_json_line(r);
    std::cout << line << std::endl;
    if (os.is_open()) os << line << '\n';
    if (!r.pass) ++failed;
  });
  std::cerr << reps.size() << " tasks, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

int run_dump(const std::string& which, long ell, int rows) {
  auto print_rows = [](const std::map<int, std::map<long, sptq::Int>>& m,
                       int row_hi) {
    for (const auto& [i, row] : m) {
      if (i >= row_hi) break;
      for (const auto& [j, v] : row)
        if (v != 0)
          std::cout << i << ' ' << j << ' ' << v.get_str() << '\n';
    }
  };
  sptq::MMatrix m = sptq::base_rows(ell);
  if (which == "M") {
    sptq::extend_rows(m, rows - 1);
    print_rows(m.rows, rows);
    return 0;
  }
  int stride = sptq::ab_stride(ell);
  sptq::extend_rows(m, stride * (rows - 1) + 1);
  sptq::ABMatrices ab = sptq::ab_matrices(m, rows - 1);
  print_rows(which == "A" ? ab.a : ab.b, rows);
  return 0;
}

int run_report(const std::vector<std::string>& files) {
  long total = 0, failed = 0;
  for (const std::string& path : files) {
    std::ifstream is(path);
    if (!is) {
      std::cerr << "cannot read " << path << '\n';
      return 2;
    }
    std::string line;
    long file_total = 0, file_failed = 0;
    for (long lineno = 1; std::getline(is, line); ++lineno) {
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        std::cerr << path << ':' << lineno << ": " << e.what() << '\n';
        return 2;
      }
      ++file_total;
      if (j.value("status", "") != "pass") {
        ++file_failed;
        std::cout << "FAIL " << j.value("task_id", "?");
        if (j.contains("first_failure") && !j["first_failure"].is_null())
          std::cout << " at index " << j["first_failure"].value("index", 0L)
                    << ": expected " << j["first_failure"].value("expected", "")
                    << ", got " << j["first_failure"].value("actual", "");
        std::cout << '\n';
      }
    }
    std::cout << path << ": " << file_total << " tasks, " << file_failed
              << " failed\n";
    total += file_total;
    failed += file_failed;
  }
  if (files.size() > 1)
    std::cout << "total: " << total << " tasks, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series computations for spt congruence families"};
  app.require_subcommand(1);

  auto* comp = app.add_subcommand("compute", "print an exact table column");
  bool want_p = false, want_spt = false, want_n2 = false, want_a = false;
  long max_n = 100;
  comp->add_flag("--p", want_p, "partition numbers");
  comp->add_flag("--spt", want_spt, "smallest-parts counts");
  comp->add_flag("--n2", want_n2, "second rank moments");
  comp->add_flag("--a", want_a, "12*spt(n) + (24n-1)*p(n)");
  comp->add_option("--max", max_n, "largest n to print")
      ->check(CLI::Range(0L, 2000000L));

  auto* ver = app.add_subcommand("verify", "run verification tasks, one JSON line each");
  std::string suite = "default";
  int trunc = 0;
  std::vector<std::string> tasks;
  std::string out, cache;
  ver->add_option("--suite", suite, "default, fast, or full")
      ->check(CLI::IsMember({"default", "fast", "full"}));
  ver->add_option("--trunc", trunc, "series truncation override (terms)")
      ->check(CLI::Range(0, 100000));
  ver->add_option("--task", tasks, "task id (repeatable); all tasks if omitted");
  ver->add_option("--out", out, "also write the JSON lines here");
  ver->add_option("--cache", cache, "directory for cached coefficient tables");

  auto* dmp = app.add_subcommand("dump", "print matrix entries as 'i j value'");
  std::string which = "M";
  long ell = 5;
  int rows = 10;
  dmp->add_option("--matrix", which, "M, A, or B")
      ->check(CLI::IsMember({"M", "A", "B"}));
  dmp->add_option("--ell", ell, "level: 5, 7, or 13")
      ->check(CLI::IsMember({5, 7, 13}));
  dmp->add_option("--rows", rows, "row indices below this bound")
      ->check(CLI::Range(1, 200));

  auto* rpt = app.add_subcommand("report", "summarize JSON-lines verification output");
  std::vector<std::string> files;
  rpt->add_option("files", files, "JSON-lines files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (comp->parsed()) return run_compute(want_p, want_spt, want_n2, want_a, max_n);
    if (ver->parsed()) return run_verify(suite, trunc, tasks, out, cache);
    if (dmp->parsed()) return run_dump(which, ell, rows);
    if (rpt->parsed()) return run_report(files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
