// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <cstdlib>
#include <iostream>
#include <string>

#include "padyn/selftest.hpp"

int main(int argc, char** argv) {
  padyn::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::stoull(argv[++i]);
    } else {
      opts.only.push_back(std::stoi(arg));
    }
  }
  bool all = true;
  for (const auto& r : padyn::run_acceptance(opts)) {
    std::cout << padyn::format_result(r) << " (" << static_cast<long>(r.seconds * 1000) << " ms)" << std::endl;
    all = all && r.passed;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
