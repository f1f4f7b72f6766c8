// Runs every property check at full size and prints one PASS/FAIL line
// per check. With --expect-fail, the exit status is 0 exactly when the
// failing checks are the listed ones, so a check that is known to be false
// stays visible as FAIL without breaking the test run, and a change in
// either direction is reported.

#include <chrono>
#include <iostream>
#include <set>
#include <vector>

#include "CLI11.hpp"

#include "lqg/verify.hpp"

int main(int argc, char** argv) {
  CLI::App         app{"Full-size property checks"};
  std::vector<int> expected;
  app.add_option("--expect-fail", expected, "Ids of checks known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  lqg::Corpus   corpus;
  std::set<int> failed;
  for (auto fn : lqg::all_criteria()) {
    auto const                          t0 = std::chrono::steady_clock::now();
    lqg::CriterionResult const          r  = fn(corpus, std::nullopt);
    std::chrono::duration<double> const dt = std::chrono::steady_clock::now() - t0;
    if (!r.pass()) {
      failed.insert(r.id);
    }
    std::cout << (r.pass() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " ("
              << r.instances << " instances, " << r.checks << " checks, " << dt.count()
              << " s)";
    if (!r.note.empty()) {
      std::cout << ": " << r.note;
    }
    std::cout << '\n';
    for (auto const& f : r.failures) {
      std::cout << "  [" << r.id << "] " << f << '\n';
    }
    std::cout.flush();
  }

  std::set<int> const want(expected.begin(), expected.end());
  std::cout << failed.size() << " of " << lqg::all_criteria().size() << " checks failed";
  if (failed == want) {
    std::cout << (want.empty() ? "\n" : ", all of them expected\n");
    return 0;
  }
  for (int id : failed) {
    if (!want.count(id)) {
      std::cout << "\nunexpected failure [" << id << "]";
    }
  }
  for (int id : want) {
    if (!failed.count(id)) {
      std::cout << "\nexpected failure [" << id << "] now passes";
    }
  }
  std::cout << '\n';
  return 1;
}
