#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "wilton/error.hpp"

namespace wilton {

using Rational = mpq_class;

enum class ScalarMode { Rational, Float };

inline const char* to_string(ScalarMode mode) noexcept {
  return mode == ScalarMode::Rational ? "rational" : "float";
}

// Formats a double with 17 significant digits (round-trip exact).
inline std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Nearest double to q (mpq_class::get_d truncates).
inline double to_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0;
  mpz_class num = abs(q.get_num());
  const mpz_class& den = q.get_den();
  // Scale so the integer quotient has 55..56 bits; fold the remainder into
  // a sticky low bit so the single uint64 -> double rounding is exact.
  long shift = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class scaled = num;
  mpz_class d = den;
  if (shift >= 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_class quot, rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), d.get_mpz_t());
  auto m = static_cast<std::uint64_t>(mpz_get_ui(quot.get_mpz_t()));
  if (rem != 0) m |= 1;
  double out = std::ldexp(static_cast<double>(m), static_cast<int>(-shift));
  return sgn(q) < 0 ? -out : out;
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarMode mode = ScalarMode::Float;
  static constexpr bool exact = false;

  static double from_rational(const Rational& q) { return wilton::to_double(q); }
  static double from_int(long n) { return static_cast<double>(n); }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x, double tol = 0.0) { return std::fabs(x) <= tol; }
  static bool is_finite(double x) { return std::isfinite(x); }
  static std::string to_string(double x) { return format17(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarMode mode = ScalarMode::Rational;
  static constexpr bool exact = true;

  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long n) { return Rational(n); }
  static double to_double(const Rational& q) { return wilton::to_double(q); }
  static Rational abs(const Rational& q) { return ::abs(q); }
  // Exact zero test; the tolerance argument is ignored.
  static bool is_zero(const Rational& q, double = 0.0) { return sgn(q) == 0; }
  static bool is_finite(const Rational&) { return true; }
  static std::string to_string(const Rational& q) { return q.get_str(); }
};

// Parses "p/q", "p" or a plain decimal such as "-0.125" into a canonical
// rational (decimals are taken exactly).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  Rational q;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+" || digits.find_first_not_of("+-0123456789") != std::string::npos) {
      throw bad();
    }
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q = Rational(num, den);
  } else if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw bad();
  }
  q.canonicalize();
  return q;
}

}  // namespace wilton
