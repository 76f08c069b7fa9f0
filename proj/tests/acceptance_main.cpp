// Acceptance gate: one PASS/FAIL line per required behavior, each run at its
// stated bound and time budget. Exits nonzero when any line fails.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ultralevels/checker.hpp"

namespace ul = ultralevels;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
  if (!pass) ++g_failures;
}

std::string seconds_str(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fs", s);
  return buf;
}

std::string describe(const ul::SuiteResult& r, double limit) {
  std::string d = std::to_string(r.cases_run) + " cases, " +
                  std::to_string(r.refuted) + " refuted, " +
                  seconds_str(r.wall_seconds);
  if (limit > 0.0)
    d += " (limit " + std::to_string(static_cast<int>(limit)) + "s)";
  if (!r.failures.empty()) d += " | first failure: " + r.failures.front();
  return d;
}

// One criterion backed by one property suite: it must refute nothing, cover
// at least the stated number of cases, and finish inside the budget
// (limit <= 0 means no stated budget).
void suite_criterion(const std::string& name, const std::string& suite,
                     const ul::SuiteParams& params, double limit,
                     std::uint64_t min_cases) {
  ul::SuiteResult r = ul::run_suite(suite, params);
  bool pass = r.ok() && r.cases_run >= min_cases &&
              (limit <= 0.0 || r.wall_seconds < limit);
  report(name, pass, describe(r, limit));
}

}  // namespace

int main() {
  ul::SuiteParams defaults;  // bound=10000 max_level=50 chain_len=8 seed=0

  suite_criterion("level-partition", "level-partition", defaults, 5.0,
                  10'000);
  suite_criterion("signature-partition", "signature-partition", defaults,
                  5.0, 9'000);
  suite_criterion("omega-additivity", "omega-additivity", defaults, 30.0,
                  4'000'000);
  suite_criterion("quotient-law", "quotient-law", defaults, 60.0, 9'000);

  {
    ul::SuiteParams p = defaults;
    p.bound = 100'000;  // every enumerated generator element up to 1e5
    suite_criterion("falpha-level", "falpha-level", p, 30.0, 103);
  }

  suite_criterion("principal-tilde-divisibility",
                  "principal-tilde-divisibility", defaults, 10.0, 90'000);
  suite_criterion("tilde-prime", "tilde-prime", defaults, 0.0, 10'000);
  suite_criterion("decomposition", "decomposition", defaults, 30.0, 19'998);
  suite_criterion("pushforward-divides", "pushforward-divides", defaults,
                  0.0, 8'000);

  {
    ul::SuiteResult ev = ul::run_suite("I-evidence", defaults);
    ul::SuiteResult pr = ul::run_suite("I-product", defaults);
    ul::SuiteResult tt = ul::run_suite("three-two-pushforward", defaults);
    double wall = ev.wall_seconds + pr.wall_seconds + tt.wall_seconds;
    bool pass = ev.ok() && pr.ok() && tt.ok() && wall < 30.0;
    std::string detail =
        std::to_string(ev.cases_run + pr.cases_run + tt.cases_run) +
        " cases, " +
        std::to_string(ev.refuted + pr.refuted + tt.refuted) + " refuted, " +
        seconds_str(wall) + " (limit 30s)";
    for (const auto* r : {&ev, &pr, &tt})
      if (!r->failures.empty()) {
        detail += " | first failure: " + r->failures.front();
        break;
      }
    report("I-suite", pass, detail);
  }

  {
    ul::SuiteParams p1 = defaults;
    p1.jobs = 1;
    std::vector<ul::SuiteResult> a = ul::run_all(p1);
    double wall = 0.0;
    bool all_ok = true;
    std::uint64_t cases = 0;
    for (const auto& r : a) {
      wall += r.wall_seconds;
      cases += r.cases_run;
      if (!r.ok()) all_ok = false;
    }
    ul::SuiteParams p4 = defaults;
    p4.jobs = 4;
    std::vector<ul::SuiteResult> b = ul::run_all(p4);
    bool stable = ul::render_machine(a) == ul::render_machine(b) &&
                  ul::render_markdown(a) == ul::render_markdown(b);
    bool pass = all_ok && stable && wall < 120.0;
    report("full-check", pass,
           std::to_string(a.size()) + " suites, " + std::to_string(cases) +
               " cases, " + seconds_str(wall) + " (limit 120s), reports " +
               (stable ? "byte-identical" : "UNSTABLE") +
               " across jobs 1/4");
  }

  if (g_failures > 0) {
    std::cout << g_failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
