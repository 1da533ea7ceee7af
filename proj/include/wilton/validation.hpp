#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wilton {

struct ValidationOptions {
  std::vector<int> ks{2, 3, 4, 5, 6};
  std::vector<double> a_grid{1e-2, 5e-3, 2.5e-3};
  std::vector<int> orders{1, 2, 3};
  // CLI executable used by the payload-determinism check; when empty the
  // payloads are generated twice in-process instead.
  std::filesystem::path cli_path;
  // Where the figure check writes its panels; a temporary directory if empty.
  std::filesystem::path fig_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

// Runs one acceptance criterion (1..10). Internal errors become failed rows.
CriterionResult run_criterion(int id, const ValidationOptions& opts = {});
std::vector<CriterionResult> run_all(const ValidationOptions& opts = {});

std::string format_row(const CriterionResult& r);

}  // namespace wilton
