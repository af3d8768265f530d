// Acceptance gate: one line per criterion, machine-checkable exit status.
// Every criterion compares an end-to-end computation against an independent
// route or a frozen constant at the tolerance printed on its line.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "specdet/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    }
  }

  const specdet::AcceptanceReport rep = specdet::run_acceptance(seed);
  for (const auto& c : rep.results) {
    std::printf("[%s] %-28s value=%.3e tol=%.0e  %s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance,
                c.detail.c_str());
  }
  std::printf("seed=%" PRIu64 " criteria=%zu all_pass=%d\n", rep.seed,
              rep.results.size(), rep.all_pass ? 1 : 0);
  return rep.all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
