#include "wilton/solver.hpp"

#include <algorithm>
#include <cmath>

#include "wilton/asymptotics.hpp"

namespace wilton {

namespace {

constexpr double kTailBound = 1e-13;

CosineSeries<double> padded(const CosineSeries<double>& u, std::size_t N) {
  CosineSeries<double> out = truncate(u, N);
  out.resize(N);
  return out;
}

double l2(const Eigen::VectorXd& r) { return r.norm(); }

SolveResult finish(const CosineSeries<double>& u, double c, const GalerkinProblem& prob, int iters) {
  SolveResult out;
  out.profile = u;
  out.velocity = c;
  out.a = prob.a;
  out.N = prob.N;
  out.branch = prob.branch;
  out.K = prob.cfg.resonant_mode();
  out.newton_iters = iters;
  CosineSeries<double> r = apply_shifted_operator(u, c, prob.cfg) + multiply(u, u);
  out.residual_sup = sup_on_grid(r, 4 * prob.N);
  out.residual_l2 = norms(r).l2;
  out.measured_b = out.K >= 2 ? u.coeff(static_cast<std::size_t>(out.K)) : 0.0;
  return out;
}

SolveResult newton_fixed_degree(CosineSeries<double> u, double c, const GalerkinProblem& prob,
                                const NewtonOptions& opts) {
  const std::size_t N = prob.N;
  u = padded(u, N);
  u.set(1, prob.a);
  auto converged = [&](const CosineSeries<double>& v, double cv) {
    return continuous_residual_sup(v, cv, prob.cfg, 4 * N) <= opts.tol;
  };

  Eigen::VectorXd r = residual(u, c, prob);
  // A seed that already meets the tolerance still gets one Newton step, so
  // the result never degenerates to the seed itself.
  const bool exact_seed = r.isZero(0.0);
  for (int iter = 0;; ++iter) {
    if ((iter > 0 || exact_seed) && converged(u, c)) return finish(u, c, prob, iter);
    if (iter == opts.max_iters) {
      throw Error(ErrorCode::Diverged, "Newton did not converge in " + std::to_string(opts.max_iters) +
                                           " iterations at a = " + format17(prob.a) + " (residual sup " +
                                           format17(continuous_residual_sup(u, c, prob.cfg, 4 * N)) + ")");
    }
    Eigen::MatrixXd full = jacobian(u, c, prob);
    // Drop the u_1 column: the amplitude is fixed.
    Eigen::MatrixXd J(N + 1, N + 1);
    J.col(0) = full.col(0);
    J.rightCols(N) = full.rightCols(N);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::SingularSystem, "Galerkin Jacobian is singular at a = " + format17(prob.a));
    }
    Eigen::VectorXd delta = lu.solve(-r);

    const double r0 = l2(r);
    double t = 1.0;
    CosineSeries<double> trial;
    double c_trial = c;
    Eigen::VectorXd r_trial;
    for (int h = 0;; ++h) {
      trial = u;
      trial.set(0, u.coeff(0) + t * delta(0));
      for (std::size_t k = 2; k <= N; ++k) trial.set(k, u.coeff(k) + t * delta(static_cast<Eigen::Index>(k - 1)));
      c_trial = c + t * delta(static_cast<Eigen::Index>(N));
      r_trial = residual(trial, c_trial, prob);
      if (l2(r_trial) < r0 || h == opts.max_halvings) break;
      t *= 0.5;
    }
    u = trial;
    c = c_trial;
    r = r_trial;
  }
}

}  // namespace

std::size_t GalerkinProblem::min_degree(const KawaharaConfig<double>& cfg) {
  return std::max<std::size_t>(4 * static_cast<std::size_t>(std::max(cfg.resonant_mode(), 0)), 32);
}

void GalerkinProblem::validate() const {
  if (N < min_degree(cfg)) {
    throw Error(ErrorCode::InvalidArgument,
                "truncation N = " + std::to_string(N) + " is below " + std::to_string(min_degree(cfg)));
  }
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "amplitude must be finite");
}

Eigen::VectorXd residual(const CosineSeries<double>& u, double c, const GalerkinProblem& prob) {
  if (u.degree() > prob.N) throw Error(ErrorCode::InvalidArgument, "profile degree exceeds N");
  CosineSeries<double> r = apply_shifted_operator(u, c, prob.cfg) + multiply(u, u);
  Eigen::VectorXd out(static_cast<Eigen::Index>(prob.N + 1));
  for (std::size_t k = 0; k <= prob.N; ++k) out(static_cast<Eigen::Index>(k)) = r.coeff(k);
  return out;
}

Eigen::MatrixXd jacobian(const CosineSeries<double>& u, double c, const GalerkinProblem& prob) {
  if (u.degree() > prob.N) throw Error(ErrorCode::InvalidArgument, "profile degree exceeds N");
  const std::size_t N = prob.N;
  const auto n = static_cast<Eigen::Index>(N + 1);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n + 1);
  for (std::size_t j = 0; j <= N; ++j) {
    CosineSeries<double> col = multiply(u, CosineSeries<double>::mode(j, 2.0));
    const auto jj = static_cast<Eigen::Index>(j);
    for (std::size_t k = 0; k <= N; ++k) J(static_cast<Eigen::Index>(k), jj) = col.coeff(k);
    J(jj, jj) += c + prob.cfg.symbol(j);
  }
  for (std::size_t k = 0; k <= N; ++k) J(static_cast<Eigen::Index>(k), n) = u.coeff(k);
  return J;
}

SolveResult newton_solve(const CosineSeries<double>& u0, double c0, const GalerkinProblem& prob,
                         const NewtonOptions& opts) {
  prob.validate();
  SolveResult out = newton_fixed_degree(u0, c0, prob, opts);
  if (opts.allow_regrid && std::fabs(out.profile.coeff(prob.N)) > kTailBound) {
    GalerkinProblem wider = prob;
    wider.N = 2 * prob.N;
    SolveResult again = newton_fixed_degree(out.profile, out.velocity, wider, opts);
    again.newton_iters += out.newton_iters;
    out = again;
  }
  return out;
}

namespace {

GalerkinProblem branch_problem(int K, const BranchConstants& branch, double a, std::size_t N) {
  GalerkinProblem prob;
  prob.cfg = to_float(resonant_config(K));
  prob.N = N == 0 ? GalerkinProblem::min_degree(prob.cfg) : N;
  prob.a = a;
  prob.branch = branch.label;
  return prob;
}

}  // namespace

SolveResult solve_branch(int K, const std::string& label, double a, std::size_t N, int seed_order,
                         const NewtonOptions& opts) {
  const BranchConstants branch = find_branch(K, label);
  GalerkinProblem prob = branch_problem(K, branch, a, N);
  prob.validate();
  Evaluation seed = evaluate(expand<double>(K, branch.label, seed_order), a);
  return newton_solve(truncate(seed.profile, prob.N), seed.velocity, prob, opts);
}

BranchPath continue_branch(int K, const std::string& label, double a_max, int steps, std::size_t N,
                           const NewtonOptions& opts, int seed_order) {
  if (!(a_max > 0.0) || !std::isfinite(a_max)) {
    throw Error(ErrorCode::InvalidArgument, "a_max must be positive, got " + format17(a_max));
  }
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "steps must be >= 2");
  const BranchConstants branch = find_branch(K, label);
  const PLSeries<double> series = expand<double>(K, branch.label, seed_order);
  constexpr int kMaxHalvings = 4;

  BranchPath path;
  path.K = K;
  path.branch = branch.label;
  double a_prev = 0.0;
  CosineSeries<double> u_prev;
  double c_prev = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double target = a_max * i / steps;
    while (a_prev < target) {
      double step = target - a_prev;
      bool done = false;
      for (int h = 0; h <= kMaxHalvings && !done; ++h, step *= 0.5) {
        const double a = a_prev + step;
        GalerkinProblem prob = branch_problem(K, branch, a, N);
        Evaluation next = evaluate(series, a);
        CosineSeries<double> seed = next.profile;
        double c_seed = next.velocity;
        if (!path.results.empty()) {
          Evaluation prev = evaluate(series, a_prev);
          seed = u_prev + (next.profile - prev.profile);
          c_seed = c_prev + (next.velocity - prev.velocity);
        }
        ContinuationStep diag{a, step, 0, h, false};
        try {
          SolveResult res = newton_solve(truncate(seed, prob.N), c_seed, prob, opts);
          diag.iters = res.newton_iters;
          diag.accepted = true;
          a_prev = a;
          u_prev = res.profile;
          c_prev = res.velocity;
          if (a == target) path.results.push_back(std::move(res));
          done = true;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Diverged && e.code() != ErrorCode::SingularSystem) throw;
        }
        path.diagnostics.push_back(diag);
      }
      if (!done) {
        throw Error(ErrorCode::BranchLost, "branch " + branch.label + " lost at a = " + format17(target) +
                                               " after " + std::to_string(kMaxHalvings) + " step halvings");
      }
    }
  }
  return path;
}

SolveResult stokes_solve(double beta, double a, std::size_t N, const NewtonOptions& opts) {
  if (int K = detect_resonance(beta); K != 0) {
    throw Error(ErrorCode::ResonantBeta, "beta = " + format17(beta) + " is resonant with K = " +
                                             std::to_string(K) + "; use the Wilton-ripple branches");
  }
  GalerkinProblem prob;
  prob.cfg = KawaharaConfig<double>(0, beta);
  prob.N = N;
  prob.a = a;
  prob.branch = "stokes";
  return newton_solve(CosineSeries<double>::mode(1, a), 1.0 - beta, prob, opts);
}

template <class S>
AsymptoticError compare_asymptotic(const SolveResult& result, const PLSeries<S>& series) {
  if (result.K != series.K || result.branch != series.branch) {
    throw Error(ErrorCode::InvalidArgument, "solution (K = " + std::to_string(result.K) + ", " + result.branch +
                                                ") does not match series (K = " + std::to_string(series.K) +
                                                ", " + series.branch + ")");
  }
  Evaluation e = evaluate(series, result.a);
  CosineSeries<double> diff = result.profile - e.profile;
  AsymptoticError out;
  out.sup_error = sup_on_grid(diff, 4 * std::max(result.N, diff.degree()));
  out.l2_error = norms(diff).l2;
  out.velocity_error = std::fabs(result.velocity - e.velocity);
  return out;
}

template AsymptoticError compare_asymptotic<double>(const SolveResult&, const PLSeries<double>&);
template AsymptoticError compare_asymptotic<Rational>(const SolveResult&, const PLSeries<Rational>&);

}  // namespace wilton
