#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wilton/error.hpp"
#include "wilton/scalar.hpp"

namespace wilton {

// Normalized steady Kawahara problem  c u + u'' + beta u'''' + u^2 = 0.
//
// The linear part acts on cos(kx) with eigenvalue symbol(k) = -k^2 + beta k^4.
// A resonant configuration has beta = 1/(1+K^2), so that cos(x) and cos(Kx)
// share the phase speed c0 = 1 - beta and span the kernel of c0 + L. A
// non-resonant (Stokes) configuration has resonant_mode() == 0 and the
// one-dimensional kernel spanned by cos(x).
template <class S>
class KawaharaConfig {
 public:
  KawaharaConfig(int resonant_mode, S beta)
      : resonant_mode_(resonant_mode), beta_(std::move(beta)), c0_(S(1) - beta_) {}

  int resonant_mode() const noexcept { return resonant_mode_; }
  bool is_resonant() const noexcept { return resonant_mode_ >= 2; }
  const S& beta() const noexcept { return beta_; }
  const S& c0() const noexcept { return c0_; }

  // Relative tolerance on kernel-mode content accepted by invert_on_complement
  // (float mode only).
  double range_tolerance = 1e-13;
  // Smallest |c0 + symbol(k)| accepted as a divisor off the kernel (float mode).
  double resonance_guard = 1e-10;

  S symbol(std::size_t k) const {
    S kk = S(static_cast<long>(k)) * S(static_cast<long>(k));
    return beta_ * kk * kk - kk;
  }

  bool is_kernel_mode(std::size_t k) const noexcept {
    return k == 1 || (is_resonant() && k == static_cast<std::size_t>(resonant_mode_));
  }

  std::vector<std::size_t> kernel_modes() const {
    if (is_resonant()) return {1, static_cast<std::size_t>(resonant_mode_)};
    return {1};
  }

  // c0 + symbol(k), evaluated in the factored form (k^2-1)(beta(k^2+1)-1)
  // and pinned to exact zero on kernel modes.
  S shifted_symbol(std::size_t k) const {
    if (is_kernel_mode(k)) return S(0);
    S kk = S(static_cast<long>(k)) * S(static_cast<long>(k));
    return (kk - S(1)) * (beta_ * (kk + S(1)) - S(1));
  }

 private:
  int resonant_mode_;
  S beta_;
  S c0_;
};

// Exact resonant configuration: beta = 1/(1+K^2), c0 = K^2/(1+K^2).
inline KawaharaConfig<Rational> resonant_config(int K) {
  if (K < 2) throw Error(ErrorCode::InvalidArgument, "K must be >= 2, got " + std::to_string(K));
  Rational beta(1, static_cast<unsigned long>(K) * static_cast<unsigned long>(K) + 1);
  beta.canonicalize();
  return KawaharaConfig<Rational>(K, beta);
}

template <class S>
KawaharaConfig<double> to_float(const KawaharaConfig<S>& cfg) {
  KawaharaConfig<double> out(cfg.resonant_mode(), ScalarTraits<S>::to_double(cfg.beta()));
  out.range_tolerance = cfg.range_tolerance;
  out.resonance_guard = cfg.resonance_guard;
  return out;
}

// Returns K >= 2 when beta lies within tol of 1/(1+K^2), otherwise 0.
inline int detect_resonance(double beta, double tol = 1e-9) {
  if (!(beta > 0.0)) return 0;
  // beta = 1/(1+K^2)  <=>  K = sqrt(1/beta - 1)
  double k_guess = std::sqrt(std::max(0.0, 1.0 / beta - 1.0));
  for (long k = std::max(2L, static_cast<long>(k_guess) - 1); k <= static_cast<long>(k_guess) + 2; ++k) {
    double resonant = 1.0 / (1.0 + static_cast<double>(k * k));
    if (std::fabs(beta - resonant) <= tol) return static_cast<int>(k);
  }
  return 0;
}

}  // namespace wilton
