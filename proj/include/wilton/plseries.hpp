#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wilton/cosine_series.hpp"
#include "wilton/kawahara_config.hpp"
#include "wilton/scalar.hpp"

namespace wilton {

// Order-by-order expansion  u = sum_{n>=1} a^n u_n,  c = c0 + sum_{n>=1} a^n c_n
// of one branch. The cos(x) amplitude is normalized to a exactly, so
// F_1[u_1] = 1 and F_1[u_n] = 0 for n >= 2.
template <class S>
struct PLSeries {
  int K = 0;  // resonant mode; 0 for a Stokes (non-resonant) expansion
  std::string branch;
  int order = 0;
  KawaharaConfig<S> cfg{0, S(0)};
  std::vector<CosineSeries<S>> u;  // u[n-1] = u_n
  std::vector<S> c;                // c[n-1] = c_n
  // Largest |kernel projection| left after solving order n, for n = 2..horizon.
  std::vector<double> projection_residuals;
  int horizon = 0;  // highest order the hierarchy had to reach

  static constexpr ScalarMode scalar_mode() noexcept { return ScalarTraits<S>::mode; }
  const CosineSeries<S>& u_at(int n) const { return u.at(static_cast<std::size_t>(n - 1)); }
  const S& c_at(int n) const { return c.at(static_cast<std::size_t>(n - 1)); }
};

// Expands the branch `label` of the K-resonant problem to order M >= 1.
// Rational mode needs rational branch constants (K >= 4); K = 2 and K = 3
// throw ModeUnsupported there.
template <class S>
PLSeries<S> expand(int K, const std::string& label, int M);

// Stokes expansion for non-resonant beta.
template <class S>
PLSeries<S> expand_stokes(const S& beta, int M);

extern template PLSeries<double> expand<double>(int, const std::string&, int);
extern template PLSeries<Rational> expand<Rational>(int, const std::string&, int);
extern template PLSeries<double> expand_stokes<double>(const double&, int);
extern template PLSeries<Rational> expand_stokes<Rational>(const Rational&, int);

using AnyPLSeries = std::variant<PLSeries<double>, PLSeries<Rational>>;

AnyPLSeries expand_any(int K, const std::string& label, int M, ScalarMode mode);

PLSeries<double> to_float(const PLSeries<Rational>& series);

struct Evaluation {
  CosineSeries<double> profile;
  double velocity = 0.0;
  // False when |a^M u_M| exceeds |a u_1| in sup norm (a is too large).
  bool terms_decrease = true;
};

template <class S>
Evaluation evaluate(const PLSeries<S>& series, double a);

// Smallest n with F_K[u_n] != 0 (exact test) and that coefficient.
struct Onset {
  int order = 0;
  Rational coeff;
};
Onset kmode_onset(const PLSeries<Rational>& series);

struct ResidualOrder {
  std::vector<double> amplitudes;
  std::vector<double> residuals;  // sup of (c+L)u + u^2 on a 4*deg grid
  double slope = 0.0;             // least-squares slope of log2 r against log2 a
};

// Sup norm of the continuous residual (c+L)u + u^2 on a uniform grid.
double continuous_residual_sup(const CosineSeries<double>& u, double c, const KawaharaConfig<double>& cfg,
                               std::size_t points = 0);

template <class S>
ResidualOrder measure_residual_order(const PLSeries<S>& series, const std::vector<double>& amplitudes);

// As measure_residual_order, but throws FailedOrder when the slope is below
// order + 1 - 0.2.
template <class S>
ResidualOrder residual_order(const PLSeries<S>& series, const std::vector<double>& amplitudes);

}  // namespace wilton
