#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "wilton/asymptotics.hpp"
#include "wilton/plseries.hpp"

using namespace wilton;
using Catch::Approx;
using Q = Rational;

namespace {

Q shifted(int K, int k) {
  Q beta(1, K * K + 1);
  Q kk = k * k;
  return (1 - beta) - kk + beta * kk * kk;
}

// With u1 = cos x the order-two equation (c0+L)u2 + c1 u1 + u1^2 = 0 has the
// off-kernel solution A + B cos 2x, A = -1/(2 c0), B = -1/(2 (c0+symbol(2))),
// and the cos x projection of order three gives c2 = -(2A + B).
struct OrderTwo {
  Q A, B, c2;
};

OrderTwo order_two(const Q& c0, const Q& shifted2) {
  OrderTwo o;
  o.A = Q(-1, 2) / c0;
  o.B = Q(-1, 2) / shifted2;
  o.c2 = -(2 * o.A + o.B);
  return o;
}

}  // namespace

TEST_CASE("order-one term and normalization") {
  for (int K : {2, 3, 4, 7}) {
    for (const auto& br : branch_constants(K)) {
      auto s = expand<double>(K, br.label, 3);
      REQUIRE(s.u.size() == 3);
      REQUIRE(s.c.size() == 3);
      CHECK(s.u_at(1).coeff(1) == 1.0);
      CHECK(s.u_at(1).coeff(static_cast<std::size_t>(K)) == Approx(br.leading_kernel_amplitude()).margin(1e-14));
      for (int n = 2; n <= 3; ++n) CHECK(s.u_at(n).coeff(1) == 0.0);
      for (int n = 1; n <= 3; ++n) CHECK(s.u_at(n).degree() <= static_cast<std::size_t>(n * std::max(2, K) + K));
    }
  }
}

TEST_CASE("K = 2 first velocity correction") {
  auto plus = expand<double>(2, "plus", 2);
  auto minus = expand<double>(2, "minus", 2);
  CHECK(plus.c_at(1) == Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-13));
  CHECK(minus.c_at(1) == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-13));
  CHECK(plus.u_at(1).coeff(2) == Approx(1.0 / std::numbers::sqrt2).epsilon(1e-13));
  CHECK(minus.u_at(1).coeff(2) == Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-13));
}

TEST_CASE("K >= 4 order two against an independent oracle") {
  for (int K : {4, 5, 6, 8, 11}) {
    INFO("K=" << K);
    auto s = expand<Rational>(K, "unique", 3);
    auto cfg = resonant_config(K);
    auto o = order_two(cfg.c0(), shifted(K, 2));
    CHECK(s.u_at(1) == CosineSeries<Q>::mode(1));
    CHECK(s.c_at(1) == 0);
    CHECK(s.u_at(2).coeff(0) == o.A);
    CHECK(s.u_at(2).coeff(2) == o.B);
    CHECK(s.c_at(2) == o.c2);
    CHECK(s.c_at(2) == -derive_bifurcation_coefficients(K).v300());
    if (K == 4) CHECK(s.c_at(2) == Q(119, 144));
  }
}

TEST_CASE("K = 3 branch velocities") {
  const double c2[] = {4.27863, 1.48289, 0.373955};
  for (int i = 0; i < 3; ++i) {
    auto s = expand<double>(3, std::to_string(i + 1), 3);
    CHECK(s.c_at(1) == Approx(0.0).margin(1e-13));
    CHECK(s.c_at(2) == Approx(c2[i]).margin(2e-5));
    CHECK(s.c_at(3) == Approx(0.0).margin(1e-10));
  }
}

TEST_CASE("Stokes expansion") {
  auto s = expand_stokes<Rational>(Q(1, 2), 3);
  auto o = order_two(Q(1, 2), Q(1, 2) - 4 + Q(1, 2) * 16);
  CHECK(s.c_at(2) == o.c2);
  CHECK(s.c_at(2) == Q(19, 9));
  CHECK(to_double(s.c_at(2)) == Approx(2.1111).margin(1e-4));
  CHECK_THROWS_AS(expand_stokes<double>(0.2, 3), Error);
}

TEST_CASE("exact and float engines agree") {
  for (int K : {4, 5, 6}) {
    auto e = to_float(expand<Rational>(K, "unique", 4));
    auto f = expand<double>(K, "unique", 4);
    for (int n = 1; n <= 4; ++n) {
      CHECK(f.c_at(n) == Approx(e.c_at(n)).epsilon(1e-10).margin(1e-12));
      auto d = f.u_at(n) - e.u_at(n);
      CHECK(sup_on_grid(d) <= 1e-9 * std::max(1.0, sup_on_grid(e.u_at(n))));
    }
  }
}

TEST_CASE("cos Kx onset") {
  struct Row {
    int K;
    int order;
    Q coeff;
  };
  const Row rows[] = {{4, 2, Q(425, 48)}, {5, 3, Q(9295, 36288)}, {6, 4, Q("188986343/5948080128")}};
  for (const auto& r : rows) {
    INFO("K=" << r.K);
    auto s = expand<Rational>(r.K, "unique", r.order + 1);
    auto onset = kmode_onset(s);
    CHECK(onset.order == r.order);
    CHECK(onset.coeff == r.coeff);
    for (int n = 1; n < r.order; ++n) CHECK(s.u_at(n).coeff(static_cast<std::size_t>(r.K)) == 0);
  }
  CHECK_THROWS_AS(kmode_onset(expand<Rational>(6, "unique", 3)), Error);
}

TEST_CASE("evaluate") {
  auto s = expand<double>(4, "unique", 3);
  auto zero = evaluate(s, 0.0);
  CHECK(zero.profile.is_zero());
  CHECK(zero.velocity == s.cfg.c0());

  auto k2 = expand<double>(2, "plus", 1);
  const double a = 0.01;
  auto e = evaluate(k2, a);
  CHECK(e.profile.coeff(1) == Approx(a));
  CHECK(e.profile.coeff(2) == Approx(a / std::numbers::sqrt2));
  CHECK(e.velocity == Approx(0.8 - a / std::numbers::sqrt2));
  CHECK(e.terms_decrease);

  // c_n vanishes for odd n when K >= 4, so the velocity is even in a.
  CHECK(evaluate(s, 0.02).velocity == Approx(evaluate(s, -0.02).velocity).epsilon(1e-14));
  CHECK_FALSE(evaluate(expand<double>(4, "unique", 4), 1.0).terms_decrease);
}

TEST_CASE("residual order") {
  const std::vector<double> amps{1e-2, 5e-3, 2.5e-3};
  for (int M = 1; M <= 3; ++M) {
    auto r = residual_order(expand<double>(2, "plus", M), amps);
    CHECK(r.slope == Approx(M + 1).margin(0.2));
    auto r4 = residual_order(expand<double>(5, "unique", M), amps);
    CHECK(r4.slope == Approx(M + 1).margin(0.2));
  }
  CHECK_THROWS_AS(measure_residual_order(expand<double>(2, "plus", 2), {1e-2}), Error);
}

TEST_CASE("unsupported exact mode and bad arguments") {
  try {
    (void)expand<Rational>(3, "1", 2);
    FAIL("expected ModeUnsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModeUnsupported);
  }
  CHECK_THROWS_AS(expand<Rational>(2, "plus", 2), Error);
  CHECK_THROWS_AS(expand<double>(3, "4", 2), Error);
  CHECK_THROWS_AS(expand<double>(3, "1", 0), Error);
  CHECK(std::holds_alternative<PLSeries<Rational>>(expand_any(4, "unique", 2, ScalarMode::Rational)));
}
