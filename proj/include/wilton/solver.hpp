#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wilton/cosine_series.hpp"
#include "wilton/kawahara_config.hpp"
#include "wilton/plseries.hpp"

namespace wilton {

// Galerkin truncation of (c+L)u + u^2 = 0 to cosine modes 0..N with the
// amplitude constraint u_1 = a. Unknowns: u_0, u_2..u_N and c.
struct GalerkinProblem {
  KawaharaConfig<double> cfg{0, 0.0};
  std::size_t N = 32;
  double a = 0.0;
  std::string branch;

  static std::size_t min_degree(const KawaharaConfig<double>& cfg);
  // Throws InvalidArgument unless N >= max(4K, 32) and a is finite.
  void validate() const;
};

struct SolveResult {
  CosineSeries<double> profile;
  double velocity = 0.0;
  double a = 0.0;
  double residual_sup = 0.0;  // continuous residual on the 4N grid
  double residual_l2 = 0.0;
  int newton_iters = 0;
  std::size_t N = 0;
  std::string branch;
  int K = 0;
  double measured_b = 0.0;  // cos(Kx) coefficient; 0 for Stokes waves
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iters = 25;
  int max_halvings = 8;
  bool allow_regrid = true;  // double N once when |u_N| > 1e-13
};

// Mode-k Galerkin residual (c + symbol(k)) u_k + (u*u)_k for k = 0..N. The
// product is formed to degree 2N and truncated.
Eigen::VectorXd residual(const CosineSeries<double>& u, double c, const GalerkinProblem& prob);

// (N+1) x (N+2) Jacobian: columns u_0..u_N then c.
Eigen::MatrixXd jacobian(const CosineSeries<double>& u, double c, const GalerkinProblem& prob);

SolveResult newton_solve(const CosineSeries<double>& u0, double c0, const GalerkinProblem& prob,
                         const NewtonOptions& opts = {});

struct ContinuationStep {
  double a = 0.0;
  double step = 0.0;
  int iters = 0;
  int halvings = 0;
  bool accepted = false;
};

struct BranchPath {
  int K = 0;
  std::string branch;
  std::vector<SolveResult> results;
  std::vector<ContinuationStep> diagnostics;
};

// Natural-parameter continuation on a = a_max/steps, 2 a_max/steps, ..., a_max.
// The predictor adds the series increment PL(a_new) - PL(a_old) to the last
// converged profile.
BranchPath continue_branch(int K, const std::string& label, double a_max, int steps, std::size_t N = 0,
                           const NewtonOptions& opts = {}, int seed_order = 3);

// Single solve on a branch, seeded by the order-`seed_order` series.
SolveResult solve_branch(int K, const std::string& label, double a, std::size_t N = 0, int seed_order = 3,
                         const NewtonOptions& opts = {});

// Stokes wave for non-resonant beta, seeded with a cos x and c = 1 - beta.
SolveResult stokes_solve(double beta, double a, std::size_t N = 32, const NewtonOptions& opts = {});

struct AsymptoticError {
  double sup_error = 0.0;
  double l2_error = 0.0;
  double velocity_error = 0.0;
};

template <class S>
AsymptoticError compare_asymptotic(const SolveResult& result, const PLSeries<S>& series);

}  // namespace wilton
