#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wilton/cosine_series.hpp"
#include "wilton/solver.hpp"

namespace wilton {

// One profile panel: Newton profile divided by a against the leading-order
// shape cos x + b1 cos Kx.
struct FigurePanel {
  std::string id;  // "a", "b", "c"
  std::string title;
  double beta = 0.0;
  int K = 0;
  std::string branch;
  SolveResult solution;
  CosineSeries<double> normalized;
  CosineSeries<double> leading;
  double deviation = 0.0;  // sup |u/a - leading| on a 4N grid
};

struct Figure1 {
  double a = 0.0;
  std::vector<FigurePanel> panels;
};

// Panels: Stokes wave at beta = 1/2, K = 2 "plus", K = 3 `k3_branch`.
Figure1 compute_fig1(double a, const std::string& k3_branch = "3");

std::string panel_svg(const FigurePanel& panel, double a);
// Columns panel, x, numeric, leading on a 201-point grid over [-pi, pi].
std::string fig1_csv(const Figure1& fig);

// Writes fig1a.svg, fig1b.svg, fig1c.svg and fig1.csv into `dir` (created
// if missing). Returns the written paths.
std::vector<std::filesystem::path> write_fig1(const Figure1& fig, const std::filesystem::path& dir);

}  // namespace wilton
