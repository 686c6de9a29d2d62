// One line per acceptance criterion; exit status 1 when any criterion fails.
#include "stabpair/verify/criteria.hpp"

#include <cstdio>

int main() {
  stabpair::VerifyOptions opts;
  int failed = 0;
  for (int id = 1; id <= 13; ++id) {
    auto r = stabpair::run_criterion(id, opts);
    std::printf("%s\n", stabpair::format_line(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d of 13 criteria passed\n", 13 - failed);
  return failed ? 1 : 0;
}
