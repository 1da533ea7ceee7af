#include "wilton/plseries.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "wilton/asymptotics.hpp"
#include "wilton/symbolic.hpp"

namespace wilton {

namespace {

// Solves the hierarchy
//   (c0+L) u_n + sum_{m<n} c_m u_{n-m} + sum_{j<n} u_j u_{n-j} = 0
// order by order. Scalars not yet fixed (the newest velocity coefficient and
// the cos(Kx) amplitude of each u_n) are carried as symbols; the kernel
// projections of each order append linear equations, and any symbol the
// accumulated system pins down is substituted everywhere.
template <class S>
class Hierarchy {
  using T = ScalarTraits<S>;
  using Sym = SymbolicSeries<S>;

 public:
  Hierarchy(KawaharaConfig<S> cfg, CosineSeries<S> u1) : cfg_(std::move(cfg)) {
    u_.push_back(Sym(std::move(u1)));
  }

  void preset_velocity(int n, const S& value) {
    if (c_.size() < static_cast<std::size_t>(n)) c_.resize(static_cast<std::size_t>(n));
    c_[static_cast<std::size_t>(n - 1)] = Sym(CosineSeries<S>::constant(value));
  }

  // Runs orders 2, 3, ... until u_1..u_M and c_1..c_M are free of symbols.
  PLSeries<S> run(int M) {
    const int max_order = M + 6;
    int n = 1;
    while (!resolved_through(M)) {
      ++n;
      if (n > max_order) {
        throw Error(ErrorCode::DegenerateBranch,
                    "hierarchy left unknowns unresolved through order " + std::to_string(max_order));
      }
      solve_order(n);
    }
    PLSeries<S> out;
    out.order = M;
    out.cfg = cfg_;
    out.horizon = n;
    out.projection_residuals = residuals_;
    for (int i = 0; i < M; ++i) {
      out.u.push_back(trim(u_[static_cast<std::size_t>(i)].constant_part()));
      const auto& ci = c_[static_cast<std::size_t>(i)];
      out.c.push_back(ci->constant_part().coeff(0));
    }
    return out;
  }

 private:
  bool resolved_through(int M) const {
    if (u_.size() < static_cast<std::size_t>(M) || c_.size() < static_cast<std::size_t>(M)) return false;
    for (int i = 0; i < M; ++i) {
      if (!u_[static_cast<std::size_t>(i)].is_concrete()) return false;
      const auto& ci = c_[static_cast<std::size_t>(i)];
      if (!ci || !ci->is_concrete()) return false;
    }
    return true;
  }

  int fresh_symbol() { return next_symbol_++; }

  const Sym& velocity(int m) {
    if (c_.size() < static_cast<std::size_t>(m)) c_.resize(static_cast<std::size_t>(m));
    auto& slot = c_[static_cast<std::size_t>(m - 1)];
    if (!slot) slot = Sym::symbol(fresh_symbol(), CosineSeries<S>::constant(S(1)));
    return *slot;
  }

  double activity_tolerance(double scale) const { return T::exact ? 0.0 : 1e-11 * scale; }

  void solve_order(int n) {
    Sym forcing;
    for (int m = 1; m < n; ++m) forcing += multiply(velocity(m), u_[static_cast<std::size_t>(n - m - 1)]);
    for (int j = 1; j < n; ++j) {
      forcing += multiply(u_[static_cast<std::size_t>(j - 1)], u_[static_cast<std::size_t>(n - j - 1)]);
    }

    for (std::size_t k : cfg_.kernel_modes()) {
      SymbolicScalar<S> eq = forcing.mode_coefficient(k);
      if (!eq.empty()) pending_.push_back(std::move(eq));
    }

    double residual = 0.0;
    for (const auto& [id, value] : eliminate(n, residual)) {
      forcing = forcing.substitute(id, value);
      for (auto& u : u_) u = u.substitute(id, value);
      for (auto& c : c_) {
        if (c) c = c->substitute(id, value);
      }
      for (auto& eq : pending_) eq = substitute(eq, id, value);
    }
    residuals_.push_back(residual);

    Sym un = forcing.map([&](const CosineSeries<S>& f) {
      return invert_on_complement(-project_off_kernel(f, cfg_), cfg_);
    });
    if (cfg_.is_resonant()) {
      un += Sym::symbol(fresh_symbol(), CosineSeries<S>::mode(static_cast<std::size_t>(cfg_.resonant_mode())));
    }
    u_.push_back(std::move(un));
  }

  // Row-reduces the pending linear equations. Returns the symbols that are
  // fully determined; rows that still couple free symbols stay pending.
  // `residual` receives the largest constant left in symbol-free rows.
  std::vector<std::pair<int, S>> eliminate(int n, double& residual) {
    std::set<int> symbols;
    double scale = 0.0;
    for (const auto& eq : pending_) {
      for (const auto& [m, v] : eq) {
        if (m.size() > 1) {
          throw Error(ErrorCode::FailedOrder,
                      "kernel projection at order " + std::to_string(n) + " is nonlinear in unknowns");
        }
        if (m.size() == 1) {
          symbols.insert(m.front());
          scale = std::max(scale, T::to_double(T::abs(v)));
        }
      }
    }
    const std::vector<int> cols(symbols.begin(), symbols.end());
    const std::size_t nc = cols.size();
    std::vector<std::vector<S>> rows;  // [coeffs..., constant]
    for (const auto& eq : pending_) {
      std::vector<S> row(nc + 1, S(0));
      for (const auto& [m, v] : eq) {
        if (m.empty()) {
          row[nc] = v;
        } else {
          auto pos = std::lower_bound(cols.begin(), cols.end(), m.front()) - cols.begin();
          row[static_cast<std::size_t>(pos)] = v;
        }
      }
      rows.push_back(std::move(row));
    }

    const double tol = activity_tolerance(scale);
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < nc && rank < rows.size(); ++col) {
      std::size_t best = rank;
      for (std::size_t r = rank; r < rows.size(); ++r) {
        if (T::abs(rows[r][col]) > T::abs(rows[best][col])) best = r;
      }
      if (T::is_zero(rows[best][col], tol)) continue;
      std::swap(rows[rank], rows[best]);
      S inv = S(1) / rows[rank][col];
      for (auto& x : rows[rank]) x *= inv;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == rank || rows[r][col] == S(0)) continue;
        S f = rows[r][col];
        for (std::size_t j = 0; j <= nc; ++j) rows[r][j] -= f * rows[rank][j];
        rows[r][col] = S(0);
      }
      pivot_col.push_back(col);
      ++rank;
    }

    const double consistency = T::exact ? 0.0 : 1e-10;
    std::vector<std::pair<int, S>> solved;
    std::vector<SymbolicScalar<S>> still_pending;
    residual = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r >= rank) {
        // Symbol-free row: a consistency condition.
        double v = T::to_double(T::abs(rows[r][nc]));
        residual = std::max(residual, v);
        if (!T::is_zero(rows[r][nc], consistency)) {
          throw Error(ErrorCode::DegenerateBranch, "kernel projections at order " + std::to_string(n) +
                                                       " are inconsistent (residual " + format17(v) + ")");
        }
        continue;
      }
      bool coupled = false;
      for (std::size_t j = 0; j < nc; ++j) {
        if (j != pivot_col[r] && !T::is_zero(rows[r][j], tol)) coupled = true;
      }
      if (!coupled) {
        solved.emplace_back(cols[pivot_col[r]], -rows[r][nc]);
        continue;
      }
      SymbolicScalar<S> eq;
      for (std::size_t j = 0; j < nc; ++j) {
        if (!T::is_zero(rows[r][j], tol)) eq[Monomial{cols[j]}] = rows[r][j];
      }
      if (!(rows[r][nc] == S(0))) eq[Monomial{}] = rows[r][nc];
      still_pending.push_back(std::move(eq));
    }
    pending_ = std::move(still_pending);
    return solved;
  }

  KawaharaConfig<S> cfg_;
  std::vector<Sym> u_;
  std::vector<std::optional<Sym>> c_;
  std::vector<SymbolicScalar<S>> pending_;
  std::vector<double> residuals_;
  int next_symbol_ = 0;
};

template <class S>
S exact_or_float(const std::optional<Rational>& exact, double approx, const std::string& what) {
  if constexpr (ScalarTraits<S>::exact) {
    if (!exact) throw Error(ErrorCode::ModeUnsupported, what + " is irrational; use float mode");
    return *exact;
  } else {
    return exact ? to_double(*exact) : approx;
  }
}

}  // namespace

template <class S>
PLSeries<S> expand(int K, const std::string& label, int M) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "order must be >= 1");
  const BranchConstants branch = find_branch(K, label);
  if constexpr (ScalarTraits<S>::exact) {
    if (K < 4) {
      throw Error(ErrorCode::ModeUnsupported,
                  "K = " + std::to_string(K) + " branch constants are irrational; use float mode");
    }
  }
  KawaharaConfig<S> cfg = [&] {
    if constexpr (ScalarTraits<S>::exact) {
      return resonant_config(K);
    } else {
      return to_float(resonant_config(K));
    }
  }();

  // K = 2 amplitudes carry a 1/sqrt2 factor, so only K >= 3 can use the exact b~0.
  S b1 = exact_or_float<S>(K == 2 ? std::nullopt : branch.b_tilde0_exact, branch.leading_kernel_amplitude(), "b~0");
  CosineSeries<S> u1 = CosineSeries<S>::mode(static_cast<std::size_t>(K), b1);
  u1.set(1, S(1));

  Hierarchy<S> hierarchy(cfg, u1);
  if (K == 2) {
    hierarchy.preset_velocity(1, static_cast<S>(branch.velocity_c1()));
  } else {
    hierarchy.preset_velocity(2, exact_or_float<S>(branch.c_tilde0_exact, branch.c_tilde0, "c~0"));
  }
  PLSeries<S> out = hierarchy.run(M);
  out.K = K;
  out.branch = branch.label;
  return out;
}

template <class S>
PLSeries<S> expand_stokes(const S& beta, int M) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "order must be >= 1");
  double b = ScalarTraits<S>::to_double(beta);
  if (int K = detect_resonance(b); K != 0) {
    throw Error(ErrorCode::ResonantBeta, "beta = " + ScalarTraits<S>::to_string(beta) +
                                             " resonates with K = " + std::to_string(K));
  }
  KawaharaConfig<S> cfg(0, beta);
  Hierarchy<S> hierarchy(cfg, CosineSeries<S>::mode(1));
  PLSeries<S> out = hierarchy.run(M);
  out.K = 0;
  out.branch = "stokes";
  return out;
}

template PLSeries<double> expand<double>(int, const std::string&, int);
template PLSeries<Rational> expand<Rational>(int, const std::string&, int);
template PLSeries<double> expand_stokes<double>(const double&, int);
template PLSeries<Rational> expand_stokes<Rational>(const Rational&, int);

AnyPLSeries expand_any(int K, const std::string& label, int M, ScalarMode mode) {
  if (mode == ScalarMode::Rational) return expand<Rational>(K, label, M);
  return expand<double>(K, label, M);
}

PLSeries<double> to_float(const PLSeries<Rational>& series) {
  PLSeries<double> out;
  out.K = series.K;
  out.branch = series.branch;
  out.order = series.order;
  out.cfg = to_float(series.cfg);
  for (const auto& u : series.u) out.u.push_back(convert(u));
  for (const auto& c : series.c) out.c.push_back(to_double(c));
  out.projection_residuals = series.projection_residuals;
  out.horizon = series.horizon;
  return out;
}

template <class S>
Evaluation evaluate(const PLSeries<S>& series, double a) {
  Evaluation out;
  CosineSeries<double> acc;
  double c_acc = 0.0;
  for (int n = series.order; n >= 1; --n) {
    acc = a * acc + convert(series.u_at(n));
    c_acc = a * c_acc + ScalarTraits<S>::to_double(series.c_at(n));
  }
  out.profile = trim(a * acc);
  out.velocity = ScalarTraits<S>::to_double(series.cfg.c0()) + a * c_acc;
  if (a != 0.0 && series.order >= 2) {
    double first = std::fabs(a) * sup_on_grid(convert(series.u_at(1)));
    double last = std::pow(std::fabs(a), series.order) * sup_on_grid(convert(series.u_at(series.order)));
    out.terms_decrease = last <= first;
  }
  return out;
}

template Evaluation evaluate<double>(const PLSeries<double>&, double);
template Evaluation evaluate<Rational>(const PLSeries<Rational>&, double);

Onset kmode_onset(const PLSeries<Rational>& series) {
  if (series.K < 2) throw Error(ErrorCode::InvalidArgument, "onset order needs a resonant expansion");
  for (int n = 1; n <= series.order; ++n) {
    Rational v = series.u_at(n).coeff(static_cast<std::size_t>(series.K));
    if (sgn(v) != 0) return {n, v};
  }
  throw Error(ErrorCode::InconclusiveOrder, "F_K[u_n] vanishes for all n <= " + std::to_string(series.order) +
                                                "; raise the order");
}

double continuous_residual_sup(const CosineSeries<double>& u, double c, const KawaharaConfig<double>& cfg,
                               std::size_t points) {
  CosineSeries<double> r = apply_shifted_operator(u, c, cfg) + multiply(u, u);
  if (points == 0) points = std::max<std::size_t>(4, 4 * r.degree());
  return sup_on_grid(r, points);
}

template <class S>
ResidualOrder measure_residual_order(const PLSeries<S>& series, const std::vector<double>& amplitudes) {
  if (amplitudes.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "residual order needs at least two amplitudes");
  }
  const KawaharaConfig<double> cfg = to_float(series.cfg);
  ResidualOrder out;
  out.amplitudes = amplitudes;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double a : amplitudes) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "amplitudes must be positive");
    Evaluation e = evaluate(series, a);
    double r = continuous_residual_sup(e.profile, e.velocity, cfg);
    out.residuals.push_back(r);
    double x = std::log2(a);
    double y = std::log2(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(amplitudes.size());
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

template <class S>
ResidualOrder residual_order(const PLSeries<S>& series, const std::vector<double>& amplitudes) {
  ResidualOrder out = measure_residual_order(series, amplitudes);
  const double required = series.order + 1 - 0.2;
  if (!(out.slope >= required)) {
    std::string data;
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
      data += " (" + format17(out.amplitudes[i]) + ", " + format17(out.residuals[i]) + ")";
    }
    throw Error(ErrorCode::FailedOrder, "residual slope " + format17(out.slope) + " < " + format17(required) +
                                            " for order " + std::to_string(series.order) + ":" + data);
  }
  return out;
}

template ResidualOrder measure_residual_order<double>(const PLSeries<double>&, const std::vector<double>&);
template ResidualOrder measure_residual_order<Rational>(const PLSeries<Rational>&, const std::vector<double>&);
template ResidualOrder residual_order<double>(const PLSeries<double>&, const std::vector<double>&);
template ResidualOrder residual_order<Rational>(const PLSeries<Rational>&, const std::vector<double>&);

}  // namespace wilton
