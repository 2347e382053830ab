#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <vector>

#include "fglforge/report.hpp"

namespace fglforge {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
};
// the twelve acceptance criteria; id 0 collects supplementary checks
const std::vector<Criterion>& criteria();

struct SuiteJob {
  int criterion;
  std::string name;
  std::function<Report()> run;
};

struct JobResult {
  int criterion = 0;
  std::string name;
  bool ran = false;
  bool verified = false;
  double seconds = 0;
  Report report;
  std::string error;  // set when the job threw
};

// profile: "quick" or "full"
std::vector<SuiteJob> suite_jobs(const std::string& profile);

// FGL_FORGE_THREADS, else hardware concurrency (at least 1)
int default_threads();

// Runs jobs on up to `threads` workers. Once *stop becomes true no new job is
// started; unstarted jobs come back with ran = false. Results keep job order.
std::vector<JobResult> run_jobs(const std::vector<SuiteJob>& jobs, int threads, const std::atomic<bool>* stop = nullptr);

json results_to_json(const std::string& profile, const std::vector<JobResult>& results, bool interrupted);

// Individual checks that do not belong to a single module.
Report verify_araki_universal(int k_max, int X);
Report verify_witt_suite(int d, int N);
Report verify_groebner_crossval(int n, int max_degree);
// all t-collapse instances with r <= K (both generator conventions); instances
// violating r > 2^k m are listed separately with their computed membership
Report t_collapse_instances(int n, int m, int K);
// v_r in I_{h+1} for h < r <= K, both conventions
Report v_collapse_instances(int n, int m, int K);
Report combine_reports(const std::string& claim, const std::vector<Report>& parts, json params = json::object());

}  // namespace fglforge
