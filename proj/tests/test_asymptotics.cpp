#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "wilton/asymptotics.hpp"

using namespace wilton;
using Catch::Approx;
using Q = Rational;

namespace {

Q shifted(int K, int k) {
  Q beta(1, K * K + 1);
  Q kk = k * k;
  return (1 - beta) - kk + beta * kk * kk;
}

Q closed_c_tilde(int K) {
  Q K2 = K * K;
  Q out = (K2 + 1) * (5 * K2 - 24) / (6 * K2 * (K2 - 4));
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("config") {
  CHECK(config(2).beta() == Q(1, 5));
  CHECK(config(2).c0() == Q(4, 5));
  CHECK(config(3).beta() == Q(1, 10));
  CHECK(config(3).c0() == Q(9, 10));
  CHECK(config(10).beta() == Q(1, 101));
  CHECK(config(10).c0() == Q(100, 101));
  CHECK_THROWS_AS(config(1), Error);
}

TEST_CASE("second-order corrections: K = 2 values") {
  auto c = second_order_corrections(2);
  CHECK(c.at(2, 0, 0) == CosineSeries<Q>::constant(-1 / (2 * Q(4, 5))));
  CHECK(c.at(2, 0, 0) == CosineSeries<Q>::constant(Q(-5, 8)));
  CHECK(c.at(1, 1, 0) == CosineSeries<Q>::mode(3, -1 / shifted(2, 3)));
  CHECK(c.at(1, 1, 0) == CosineSeries<Q>::mode(3, Q(-1, 8)));
  CosineSeries<Q> u020 = CosineSeries<Q>::mode(4, Q(-1, 72));
  u020.set(0, Q(-5, 8));
  CHECK(c.at(0, 2, 0) == u020);
}

TEST_CASE("second-order corrections: K = 3 value") {
  CHECK(shifted(3, 2) == Q(-3, 2));
  CosineSeries<Q> u200 = CosineSeries<Q>::mode(2, Q(1, 3));
  u200.set(0, Q(-5, 9));
  CHECK(second_order_corrections(3).at(2, 0, 0) == u200);
}

TEST_CASE("second-order corrections: structure and defining equations") {
  for (int K : {2, 3, 4, 5, 7, 12, 20}) {
    auto cfg = config(K);
    auto corr = second_order_corrections(K);
    auto rhs = second_order_forcing(K);
    for (const auto& [e, u] : corr.entries) {
      INFO("K=" << K << " (" << e[0] << "," << e[1] << "," << e[2] << ")");
      CHECK(u.coeff(1) == 0);
      CHECK(u.coeff(static_cast<std::size_t>(K)) == 0);
      if (e[0] + e[1] + e[2] == 1 || e[2] > 0) CHECK(u.is_zero());
      CHECK(apply_shifted_operator(u, cfg.c0(), cfg) == rhs.at(e));
    }
  }
  // K = 2: (c0 + L) u(1,1,0) = -cos 3x.
  CHECK(second_order_forcing(2).at({1, 1, 0}) == CosineSeries<Q>::mode(3, -1));
}

TEST_CASE("general K >= 3 formulas are singular at K = 2") {
  CHECK_THROWS_AS(second_order_corrections_general(2), Error);
  for (int K : {3, 4, 9}) CHECK(second_order_corrections_general(K).entries == second_order_corrections(K).entries);
}

TEST_CASE("bifurcation oracle: K = 2 and K = 3 tables") {
  auto k2 = derive_bifurcation_coefficients(2);
  CHECK(k2.kind == BifurcationCase::K2);
  CHECK(k2.coeff(0, 1, 1, 0) == 1);
  CHECK(k2.coeff(0, 1, 0, 1) == 1);
  CHECK(k2.coeff(0, 3, 0, 0) == Q(-5, 4));
  CHECK(k2.coeff(0, 1, 2, 0) == Q(-11, 8));
  CHECK(k2.coeff(1, 2, 0, 0) == Q(1, 2));
  CHECK(k2.coeff(1, 0, 1, 1) == 1);
  CHECK(k2.coeff(1, 2, 1, 0) == Q(-11, 8));
  CHECK(k2.coeff(1, 0, 3, 0) == Q(-91, 72));
  CHECK(k2 == tabulated_bifurcation_coefficients(2));

  auto k3 = derive_bifurcation_coefficients(3);
  CHECK(k3.coeff(0, 1, 0, 1) == 1);
  CHECK(k3.coeff(0, 3, 0, 0) == Q(-7, 9));
  CHECK(k3.coeff(0, 2, 1, 0) == 1);
  CHECK(k3.coeff(0, 1, 2, 0) == Q(-34, 63));
  CHECK(k3.coeff(1, 0, 1, 1) == 1);
  CHECK(k3.coeff(1, 3, 0, 0) == Q(1, 3));
  CHECK(k3.coeff(1, 2, 1, 0) == Q(-34, 63));
  CHECK(k3.coeff(1, 0, 3, 0) == Q(-211, 189));
  CHECK(k3 == tabulated_bifurcation_coefficients(3));
}

TEST_CASE("bifurcation oracle: K >= 4 closed forms") {
  auto k5 = derive_bifurcation_coefficients(5);
  CHECK(k5.v300() == Q(-1313, 1575));
  for (int K = 4; K <= 30; ++K) {
    INFO("K=" << K);
    auto d = derive_bifurcation_coefficients(K);
    Q K2 = K * K;
    Q v300 = -(K2 + 1) * (5 * K2 - 24) / (6 * K2 * (K2 - 4));
    Q v120 = -(K2 + 1) * (4 * K2 * K2 - 27 * K2 + 4) / (K2 * (K2 - 4) * (4 * K2 - 1));
    Q w030 = -(K2 + 1) * (24 * K2 - 5) / (6 * K2 * (4 * K2 - 1));
    v300.canonicalize();
    v120.canonicalize();
    w030.canonicalize();
    CHECK(d.v300() == v300);
    CHECK(d.v120() == v120);
    CHECK(d.w210() == d.v120());
    CHECK(d.w030() == w030);
    CHECK(d == tabulated_bifurcation_coefficients(K));
    CHECK(nontrivial_root_square_closed_form(K) < 0);
  }
}

TEST_CASE("branch constants: K = 2") {
  auto b = branch_constants(2);
  REQUIRE(b.size() == 2);
  CHECK(b[0].label == "plus");
  CHECK(b[1].label == "minus");
  CHECK(b[0].b_tilde0_exact == Q(1));
  CHECK(b[0].c_tilde0_exact == Q(1));
  CHECK(b[1].b_tilde0_exact == Q(-1));
  CHECK(b[1].c_tilde0_exact == Q(-1));
  // With b = (a/sqrt2) b~, c_r = -(a/sqrt2) c~ the a^2 terms are
  // (b~ - c~)/sqrt2 and (1 - b~ c~)/2.
  for (const auto& x : b) {
    CHECK(x.b_tilde0 - x.c_tilde0 == 0.0);
    CHECK(1.0 - x.b_tilde0 * x.c_tilde0 == 0.0);
    auto r = leading_system(2, x.b_tilde0, x.c_tilde0);
    CHECK(std::fabs(r[0]) <= 1e-12);
    CHECK(std::fabs(r[1]) <= 1e-12);
  }
  CHECK(find_branch(2, "+").label == "plus");
  CHECK(find_branch(2, "-").label == "minus");
  CHECK_THROWS_AS(find_branch(2, "sideways"), Error);
}

TEST_CASE("branch constants: K = 3") {
  auto b = branch_constants(3);
  REQUIRE(b.size() == 3);
  const double b_ref[] = {-1.78374, -0.54488, 0.59468};
  const double c_ref[] = {4.27863, 1.48289, 0.37396};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(b[i].label == std::to_string(i + 1));
    CHECK(b[i].b_tilde0 == Approx(b_ref[i]).margin(1e-4));
    CHECK(b[i].c_tilde0 == Approx(c_ref[i]).margin(1e-4));
    const double bt = b[i].b_tilde0, ct = b[i].c_tilde0;
    // Leading system written out directly.
    CHECK(std::fabs(-7.0 / 9 + ct + bt - 34.0 / 63 * bt * bt) <= 1e-12);
    CHECK(std::fabs(1.0 / 3 - 34.0 / 63 * bt + bt * ct - 211.0 / 189 * bt * bt * bt) <= 1e-12);
    CHECK(std::fabs(109.0 / 189 * bt * bt * bt + bt * bt - 5.0 / 21 * bt - 1.0 / 3) <= 1e-12);
    auto r = leading_system(3, bt, ct);
    CHECK(std::fabs(r[0]) <= 1e-12);
    CHECK(std::fabs(r[1]) <= 1e-12);
  }
  CHECK(b[0].b_tilde0 < b[1].b_tilde0);
  CHECK(b[1].b_tilde0 < b[2].b_tilde0);
  auto cubic = leading_cubic(3);
  REQUIRE(cubic.size() == 4);
  CHECK(cubic[3] / cubic[2] == Q(109, 189));
}

TEST_CASE("branch constants: K >= 4") {
  CHECK(branch_constants(4).at(0).c_tilde0_exact == Q(119, 144));
  for (int K = 4; K <= 30; ++K) {
    auto b = branch_constants(K);
    REQUIRE(b.size() == 1);
    CHECK(b[0].label == "unique");
    CHECK(b[0].b_tilde0_exact == Q(0));
    CHECK(b[0].c_tilde0_exact == closed_c_tilde(K));
    CHECK(*b[0].c_tilde0_exact == -derive_bifurcation_coefficients(K).v300());
    CHECK(*b[0].c_tilde0_exact > 0);
  }
}

TEST_CASE("jacobian certificates") {
  auto k2 = branch_constants(2);
  CHECK(jacobian_certificate(2, k2[0]) == Approx(-std::numbers::sqrt2));
  CHECK(jacobian_certificate(2, k2[1]) == Approx(std::numbers::sqrt2));
  for (const auto& b : branch_constants(3)) {
    CHECK(jacobian_certificate(3, b) == Approx(b.b_tilde0 + 34.0 / 63));
  }
  CHECK(jacobian_det_closed_form(4) == Q(17, 1512));
  CHECK(jacobian_certificate(4, branch_constants(4)[0]) == Approx(17.0 / 1512));
  for (int K = 4; K <= 30; ++K) {
    Q K2 = K * K;
    Q det = (K2 + 1) * (4 * K2 - 61) / (6 * (K2 - 4) * (4 * K2 - 1));
    det.canonicalize();
    CHECK(jacobian_det_closed_form(K) == det);
    CHECK(det > 0);
    CHECK(jacobian_certificate(K, branch_constants(K)[0]) == Approx(to_double(det)).epsilon(1e-14));
  }
}

TEST_CASE("reduced Jacobian matches finite differences of the leading system") {
  for (int K : {2, 3, 4, 6}) {
    for (const auto& b : branch_constants(K)) {
      auto J = reduced_jacobian(K, b);
      const double h = 1e-6;
      for (int col = 0; col < 2; ++col) {
        double db = col == 0 ? h : 0.0, dc = col == 1 ? h : 0.0;
        auto p = leading_system(K, b.b_tilde0 + db, b.c_tilde0 + dc);
        auto m = leading_system(K, b.b_tilde0 - db, b.c_tilde0 - dc);
        for (int row = 0; row < 2; ++row) {
          CHECK(J[row][col] == Approx((p[row] - m[row]) / (2 * h)).margin(1e-7));
        }
      }
      CHECK(J[0][0] * J[1][1] - J[0][1] * J[1][0] != Approx(0.0).margin(1e-10));
    }
  }
}

TEST_CASE("real_roots") {
  // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
  auto r = real_roots({6, -5, -2, 1});
  REQUIRE(r.size() == 3);
  CHECK(r[0] == Approx(-2.0).margin(1e-14));
  CHECK(r[1] == Approx(1.0).margin(1e-14));
  CHECK(r[2] == Approx(3.0).margin(1e-14));
  CHECK(real_roots({1, 0, 1}).empty());
}
