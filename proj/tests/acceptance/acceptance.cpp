#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "bmlab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app("Acceptance criteria, one line per criterion", "acceptance");
  std::vector<int> only;
  bmlab::VerifyOptions opt;
  app.add_option("--only", only, "Criterion numbers to run (all when omitted)")->check(CLI::Range(1, 10));
  app.add_option("--seed", opt.seed, "Corpus seed")->capture_default_str();
  app.add_option("--trials", opt.trials, "Instances per check (criterion defaults when omitted)")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  if (only.empty())
    for (int i = 1; i <= 10; ++i) only.push_back(i);
  int failed = 0;
  for (int id : only) {
    try {
      const auto r = bmlab::run_criterion(id, opt);
      std::cout << bmlab::format_result(r) << std::endl;
      failed += r.pass ? 0 : 1;
    } catch (const std::exception& e) {
      std::cout << "criterion " << id << " FAIL: " << e.what() << std::endl;
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
