// Runs the verification suite with the default configuration and prints one
// PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.

#include <cstdio>
#include <map>
#include <vector>

#include "dbscale_suite/suite.hpp"

int main() {
  using namespace dbscale::suite;
  const RunConfig config;
  const std::vector<CheckRecord> records = run_verify(config);

  std::map<int, std::vector<const CheckRecord*>> by_criterion;
  for (const auto& r : records) by_criterion[r.criterion].push_back(&r);

  int failed = 0;
  for (const auto& c : criteria()) {
    const bool ok = criterion_passed(records, c.id);
    const auto& recs = by_criterion[c.id];
    std::printf("%s criterion %d: %s (%zu records)\n", ok ? "PASS" : "FAIL", c.id, c.title, recs.size());
    if (!ok) {
      ++failed;
      for (const CheckRecord* r : recs) {
        if (!r->pass) {
          std::printf("    %s: err %.3e tol %.3e %s\n", r->check_id.c_str(), r->max_abs_err, r->tol,
                      r->note.c_str());
        }
      }
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria().size()) - failed, criteria().size());
  return failed == 0 ? 0 : 1;
}
