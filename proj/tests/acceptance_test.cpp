// Full-size acceptance run: one scorecard line per criterion.

#include <cstdlib>
#include <iostream>

#include "isoplab/acceptance.hpp"
#include "isoplab/error.hpp"

int main(int argc, char** argv) {
  isoplab::AcceptanceOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);

  try {
    auto results = isoplab::run_acceptance(opts);
    bool all = true;
    for (const auto& r : results) {
      std::cout << r.scorecard_line() << '\n';
      for (const auto& m : r.messages) std::cout << "    " << m << '\n';
      all = all && r.passed;
    }
    std::cout << (all ? "ACCEPTED" : "REJECTED") << " (seed " << opts.seed << ")\n";
    return all ? 0 : 1;
  } catch (const isoplab::Error& e) {
    std::cout << "acceptance aborted: " << e.what() << '\n';
    return 1;
  }
}
