#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wilton/error.hpp"
#include "wilton/kawahara_config.hpp"
#include "wilton/scalar.hpp"

namespace wilton {

// Even 2*pi-periodic function  sum_{k=0}^{N} coeffs[k] cos(kx).
// coeffs[0] multiplies the constant 1 (the mean). Entries past the degree
// are zero; equality compares zero-padded sequences.
template <class S>
class CosineSeries {
 public:
  using Scalar = S;

  CosineSeries() : coeffs_(1, S(0)) {}
  explicit CosineSeries(std::size_t degree) : coeffs_(degree + 1, S(0)) {}
  explicit CosineSeries(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, S(0));
  }

  static CosineSeries mode(std::size_t k, S value = S(1)) {
    CosineSeries f(k);
    f.coeffs_[k] = std::move(value);
    return f;
  }
  static CosineSeries constant(S value) { return CosineSeries(std::vector<S>{std::move(value)}); }

  static constexpr ScalarMode scalar_mode() noexcept { return ScalarTraits<S>::mode; }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<S>& coeffs() const noexcept { return coeffs_; }

  S coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : S(0); }

  void set(std::size_t k, S value) {
    if (k >= coeffs_.size()) coeffs_.resize(k + 1, S(0));
    coeffs_[k] = std::move(value);
  }

  void resize(std::size_t degree) { coeffs_.resize(degree + 1, S(0)); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& x) { return x == S(0); });
  }

  friend bool operator==(const CosineSeries& f, const CosineSeries& g) {
    std::size_t n = std::max(f.coeffs_.size(), g.coeffs_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!(f.coeff(k) == g.coeff(k))) return false;
    }
    return true;
  }

  CosineSeries& operator+=(const CosineSeries& g) {
    if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < g.coeffs_.size(); ++k) coeffs_[k] += g.coeffs_[k];
    return *this;
  }
  CosineSeries& operator-=(const CosineSeries& g) {
    if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size(), S(0));
    for (std::size_t k = 0; k < g.coeffs_.size(); ++k) coeffs_[k] -= g.coeffs_[k];
    return *this;
  }
  CosineSeries& operator*=(const S& s) {
    for (auto& x : coeffs_) x *= s;
    return *this;
  }

  friend CosineSeries operator+(CosineSeries f, const CosineSeries& g) { return f += g; }
  friend CosineSeries operator-(CosineSeries f, const CosineSeries& g) { return f -= g; }
  friend CosineSeries operator-(CosineSeries f) {
    for (auto& x : f.coeffs_) x = -x;
    return f;
  }
  friend CosineSeries operator*(const S& s, CosineSeries f) { return f *= s; }

 private:
  std::vector<S> coeffs_;
};

template <class S>
std::pair<S, CosineSeries<S>> term(S weight, CosineSeries<S> f) {
  return {std::move(weight), std::move(f)};
}

// Coefficient-wise sum of weight * series; degree is the largest input degree.
template <class S>
CosineSeries<S> linear_combine(const std::vector<std::pair<S, CosineSeries<S>>>& terms) {
  std::size_t degree = 0;
  for (const auto& [w, f] : terms) degree = std::max(degree, f.degree());
  CosineSeries<S> out(degree);
  for (const auto& [w, f] : terms) {
    for (std::size_t k = 0; k <= f.degree(); ++k) out.set(k, out.coeff(k) + w * f.coeffs()[k]);
  }
  return out;
}

// Exact product, degree deg(f) + deg(g), from
//   cos(mx) cos(nx) = 1/2 cos((m+n)x) + 1/2 cos(|m-n|x).
// With coeffs[0] multiplying 1 this rule needs no special mean-mode case.
template <class S>
CosineSeries<S> multiply(const CosineSeries<S>& f, const CosineSeries<S>& g) {
  std::vector<S> out(f.degree() + g.degree() + 1, S(0));
  const auto& fc = f.coeffs();
  const auto& gc = g.coeffs();
  const S half = S(1) / S(2);
  for (std::size_t m = 0; m < fc.size(); ++m) {
    if (fc[m] == S(0)) continue;
    for (std::size_t n = 0; n < gc.size(); ++n) {
      if (gc[n] == S(0)) continue;
      S w = half * fc[m] * gc[n];
      out[m + n] += w;
      out[m > n ? m - n : n - m] += w;
    }
  }
  return CosineSeries<S>(std::move(out));
}

template <class S>
CosineSeries<S> truncate(const CosineSeries<S>& f, std::size_t degree) {
  std::vector<S> out(degree + 1, S(0));
  for (std::size_t k = 0; k <= std::min(degree, f.degree()); ++k) out[k] = f.coeffs()[k];
  return CosineSeries<S>(std::move(out));
}

// Drops trailing exact zeros (keeps at least the mean entry).
template <class S>
CosineSeries<S> trim(const CosineSeries<S>& f) {
  std::vector<S> c = f.coeffs();
  while (c.size() > 1 && c.back() == S(0)) c.pop_back();
  return CosineSeries<S>(std::move(c));
}

// (c + L) f, i.e. coeffs[k] scaled by c + symbol(k).
template <class S>
CosineSeries<S> apply_shifted_operator(const CosineSeries<S>& f, const S& c, const KawaharaConfig<S>& cfg) {
  CosineSeries<S> out(f.degree());
  const S shift = c - cfg.c0();
  for (std::size_t k = 0; k <= f.degree(); ++k) {
    out.set(k, (shift + cfg.shifted_symbol(k)) * f.coeffs()[k]);
  }
  return out;
}

// Complementary projection Q: zero the kernel modes.
template <class S>
CosineSeries<S> project_off_kernel(CosineSeries<S> f, const KawaharaConfig<S>& cfg) {
  for (std::size_t k : cfg.kernel_modes()) {
    if (k <= f.degree()) f.set(k, S(0));
  }
  return f;
}

// Inverse of Q(c0 + L) on the kernel complement. Rejects kernel content
// (exactly in rational mode, relative to the largest coefficient in float
// mode) and divisors that vanish off the kernel.
template <class S>
CosineSeries<S> invert_on_complement(const CosineSeries<S>& f, const KawaharaConfig<S>& cfg) {
  using T = ScalarTraits<S>;
  double scale = 0.0;
  if constexpr (!T::exact) {
    for (const auto& x : f.coeffs()) scale = std::max(scale, T::to_double(T::abs(x)));
  }
  for (std::size_t k : cfg.kernel_modes()) {
    S v = f.coeff(k);
    if (!T::is_zero(v, cfg.range_tolerance * scale)) {
      throw Error(ErrorCode::NotInRange,
                  "kernel mode " + std::to_string(k) + " carries " + T::to_string(v));
    }
  }
  CosineSeries<S> out(f.degree());
  for (std::size_t k = 0; k <= f.degree(); ++k) {
    if (cfg.is_kernel_mode(k)) continue;
    const S& fk = f.coeffs()[k];
    if (fk == S(0)) continue;
    S divisor = cfg.shifted_symbol(k);
    if (T::is_zero(divisor, cfg.resonance_guard)) {
      throw Error(ErrorCode::NearResonance, "c0 + symbol(" + std::to_string(k) + ") = " +
                                                T::to_string(divisor) + " off the kernel");
    }
    out.set(k, fk / divisor);
  }
  return out;
}

template <class S>
S fourier_coeff(const CosineSeries<S>& f, long k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative mode index " + std::to_string(k));
  return f.coeff(static_cast<std::size_t>(k));
}

template <class S>
double eval(const CosineSeries<S>& f, double x) {
  double sum = 0.0;
  for (std::size_t k = f.degree() + 1; k-- > 0;) {
    sum += ScalarTraits<S>::to_double(f.coeffs()[k]) * std::cos(static_cast<double>(k) * x);
  }
  return sum;
}

struct Norms {
  double l2 = 0.0;
  double h4 = 0.0;
  double sup = 0.0;
};

// Uniform grid on [0, 2pi) with `points` nodes.
inline std::vector<double> uniform_grid(std::size_t points) {
  std::vector<double> x(points);
  for (std::size_t j = 0; j < points; ++j) {
    x[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
  }
  return x;
}

// Max |f| over a uniform grid of `points` nodes (default 4N, at least 4).
template <class S>
double sup_on_grid(const CosineSeries<S>& f, std::size_t points = 0) {
  if (points == 0) points = std::max<std::size_t>(4, 4 * f.degree());
  double best = 0.0;
  for (double x : uniform_grid(points)) best = std::max(best, std::fabs(eval(f, x)));
  return best;
}

template <class S>
Norms norms(const CosineSeries<S>& f) {
  Norms out;
  double l2sq = 0.0;
  double h4sq = 0.0;
  for (std::size_t k = 0; k <= f.degree(); ++k) {
    double v = ScalarTraits<S>::to_double(f.coeffs()[k]);
    l2sq += (k == 0 ? 2.0 : 1.0) * v * v;
    double w = 1.0 + static_cast<double>(k * k);
    h4sq += w * w * w * w * v * v;
  }
  out.l2 = std::sqrt(std::numbers::pi * l2sq);
  out.h4 = std::sqrt(h4sq);
  out.sup = sup_on_grid(f);
  return out;
}

template <class From, class To = double>
CosineSeries<To> convert(const CosineSeries<From>& f) {
  std::vector<To> out;
  out.reserve(f.degree() + 1);
  for (const auto& x : f.coeffs()) {
    if constexpr (std::is_same_v<To, double>) {
      out.push_back(ScalarTraits<From>::to_double(x));
    } else {
      out.push_back(To(x));
    }
  }
  return CosineSeries<To>(std::move(out));
}

}  // namespace wilton
