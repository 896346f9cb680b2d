// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "carith/suites.hpp"

int main(int argc, char** argv) {
  carith::RunConfig cfg;
  if (argc > 1) cfg.corpus = argv[1];
  if (const char* s = std::getenv("CARITH_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= carith::kNumCriteria; ++id) {
    auto r = carith::run_criterion(id, cfg);
    std::printf("[%s] criterion %2d: %s (%.2f s) -- %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %d criteria passed\n", carith::kNumCriteria - failed, carith::kNumCriteria);
  return failed == 0 ? 0 : 1;
}
