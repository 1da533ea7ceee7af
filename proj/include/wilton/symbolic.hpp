#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "wilton/cosine_series.hpp"

namespace wilton {

// Sorted multiset of symbol ids; {0, 0, 2} is s0^2 s2. Empty is the unit.
using Monomial = std::vector<int>;

inline Monomial monomial_product(const Monomial& x, const Monomial& y) {
  Monomial out;
  out.reserve(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

// Polynomial in symbols with scalar coefficients.
template <class S>
using SymbolicScalar = std::map<Monomial, S>;

// Polynomial in symbols with cosine-series coefficients. Terms whose series
// is identically zero are dropped.
template <class S>
class SymbolicSeries {
 public:
  using Terms = std::map<Monomial, CosineSeries<S>>;

  SymbolicSeries() = default;
  explicit SymbolicSeries(CosineSeries<S> constant) { add(Monomial{}, constant); }

  static SymbolicSeries symbol(int id, CosineSeries<S> coefficient) {
    SymbolicSeries out;
    out.add(Monomial{id}, coefficient);
    return out;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  void add(const Monomial& m, const CosineSeries<S>& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }

  SymbolicSeries& operator+=(const SymbolicSeries& g) {
    for (const auto& [m, f] : g.terms_) add(m, f);
    return *this;
  }
  friend SymbolicSeries operator+(SymbolicSeries f, const SymbolicSeries& g) { return f += g; }

  friend SymbolicSeries operator*(const S& s, const SymbolicSeries& f) {
    SymbolicSeries out;
    for (const auto& [m, series] : f.terms_) out.add(m, s * series);
    return out;
  }

  friend SymbolicSeries multiply(const SymbolicSeries& f, const SymbolicSeries& g) {
    SymbolicSeries out;
    for (const auto& [mf, sf] : f.terms_) {
      for (const auto& [mg, sg] : g.terms_) out.add(monomial_product(mf, mg), multiply(sf, sg));
    }
    return out;
  }

  // Applies a linear map to every coefficient series.
  template <class Fn>
  SymbolicSeries map(Fn&& fn) const {
    SymbolicSeries out;
    for (const auto& [m, f] : terms_) out.add(m, fn(f));
    return out;
  }

  SymbolicSeries substitute(int id, const S& value) const {
    SymbolicSeries out;
    for (const auto& [m, f] : terms_) {
      Monomial rest;
      S factor(1);
      for (int s : m) {
        if (s == id) {
          factor *= value;
        } else {
          rest.push_back(s);
        }
      }
      out.add(rest, factor * f);
    }
    return out;
  }

  SymbolicScalar<S> mode_coefficient(std::size_t k) const {
    SymbolicScalar<S> out;
    for (const auto& [m, f] : terms_) {
      S v = f.coeff(k);
      if (!(v == S(0))) out.emplace(m, v);
    }
    return out;
  }

  CosineSeries<S> constant_part() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? CosineSeries<S>() : it->second;
  }

  bool is_concrete() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  std::set<int> symbols() const {
    std::set<int> out;
    for (const auto& [m, f] : terms_) out.insert(m.begin(), m.end());
    return out;
  }

 private:
  Terms terms_;
};

template <class S>
SymbolicScalar<S> substitute(const SymbolicScalar<S>& p, int id, const S& value) {
  SymbolicScalar<S> out;
  for (const auto& [m, v] : p) {
    Monomial rest;
    S factor = v;
    for (int s : m) {
      if (s == id) {
        factor *= value;
      } else {
        rest.push_back(s);
      }
    }
    out[rest] += factor;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (it->second == S(0)) ? out.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace wilton
