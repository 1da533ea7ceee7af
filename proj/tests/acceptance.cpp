// Runs one acceptance criterion and prints its pass/fail row.
// Usage: acceptance <id> [cli-path]
#include <cstdlib>
#include <iostream>
#include <string>

#include "wilton/validation.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <id 1-" << wilton::kCriterionCount << "> [cli-path]\n";
    return 2;
  }
  const int id = std::atoi(argv[1]);
  if (id < 1 || id > wilton::kCriterionCount) {
    std::cerr << "criterion id out of range: " << argv[1] << '\n';
    return 2;
  }
  wilton::ValidationOptions opts;
  if (argc > 2) opts.cli_path = argv[2];
  const auto row = wilton::run_criterion(id, opts);
  std::cout << wilton::format_row(row);
  return row.passed ? 0 : 1;
}
