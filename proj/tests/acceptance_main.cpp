// Acceptance suite driver: one pass/fail line per criterion, nonzero exit on
// any failure.  ctest runs this as the "acceptance" test; `ffspecial selftest`
// wraps the same suite with a machine-readable report.

#include <cstring>
#include <iostream>

#include "ffs/acceptance.hpp"

int main(int argc, char** argv) {
  ffsv::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) opts.seed = std::strtoull(argv[++i], nullptr, 10);
    if (!std::strcmp(argv[i], "--floor") && i + 1 < argc) opts.v_floor = std::strtoll(argv[++i], nullptr, 10);
  }
  auto results = ffsv::run_acceptance(opts, &std::cout);
  bool pass = true;
  for (auto& c : results) {
    for (auto& p : c.parts)
      if (!p.pass)
        std::cout << "  detail: " << p.name << (p.detail.empty() ? "" : " -- " + p.detail)
                  << "\n";
    if (!c.pass) pass = false;
  }
  std::cout << (pass ? "acceptance: all criteria passed" : "acceptance: FAILURES above") << "\n";
  return pass ? 0 : 1;
}
