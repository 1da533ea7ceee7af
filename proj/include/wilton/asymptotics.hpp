#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wilton/cosine_series.hpp"
#include "wilton/kawahara_config.hpp"
#include "wilton/scalar.hpp"

namespace wilton {

// Exact resonant configuration for K (beta = 1/(1+K^2), c0 = 1 - beta).
KawaharaConfig<Rational> config(int K);

// Powers (i, j, k) of (a, b, c_r).
using Exponents = std::array<int, 3>;

// Second-order Taylor coefficients u_r^{(i,j,k)} of the auxiliary-equation
// solution, for every i+j+k in {1, 2}.
struct SecondOrderCorrections {
  int K = 0;
  std::map<Exponents, CosineSeries<Rational>> entries;

  const CosineSeries<Rational>& at(int i, int j, int k) const;
};

SecondOrderCorrections second_order_corrections(int K);

// The K >= 3 closed forms taken literally. At K = 2 two of its divisors
// vanish and this throws NearResonance; second_order_corrections() never
// routes K = 2 here.
SecondOrderCorrections second_order_corrections_general(int K);

// Right-hand sides of (c0 + L) u^{(i,j,k)} = rhs, built from kernel-mode
// products (-Q of cos^2 x, 2 cos x cos Kx, cos^2 Kx).
std::map<Exponents, CosineSeries<Rational>> second_order_forcing(int K);

enum class BifurcationCase { K2, K3, KAtLeast4 };

const char* to_string(BifurcationCase c) noexcept;
BifurcationCase bifurcation_case(int K);

// Coefficients of the reduced bifurcation map through cubic order in
// (a, b, c_r). components[0] is the cos(x) projection, components[1] the
// cos(Kx) projection.
struct BifurcationCoefficients {
  int K = 0;
  BifurcationCase kind = BifurcationCase::K2;
  std::array<std::map<Exponents, Rational>, 2> components;

  Rational coeff(int component, int i, int j, int k) const;

  Rational v300() const { return coeff(0, 3, 0, 0); }
  Rational v120() const { return coeff(0, 1, 2, 0); }
  Rational w210() const { return coeff(1, 2, 1, 0); }
  Rational w030() const { return coeff(1, 0, 3, 0); }

  friend bool operator==(const BifurcationCoefficients&, const BifurcationCoefficients&) = default;
};

// Brute-force route: solves the auxiliary equation to second order by
// inverting Q(c0+L) on -Q((a cos x + b cos Kx)^2), then projects
// (a cos x + b cos Kx + u_r)^2 onto cos x and cos Kx with symbolic monomial
// bookkeeping and adds the c_r terms.
BifurcationCoefficients derive_bifurcation_coefficients(int K);

// Stored closed forms: the K = 2 and K = 3 tables and the K >= 4 functions
// v300, v120 = w210, w030.
BifurcationCoefficients tabulated_bifurcation_coefficients(int K);

Rational v300_closed_form(int K);
Rational v120_closed_form(int K);
Rational w030_closed_form(int K);
// (K^2+1)(4K^2-61) / (6 (K^2-4)(4K^2-1))
Rational jacobian_det_closed_form(int K);
// -K^2 (4K^2-61) / (61 K^2 - 4): square of the nontrivial K >= 4 roots.
Rational nontrivial_root_square_closed_form(int K);

enum class BranchScaling {
  // b = (a/sqrt2) b~(a),  c_r = -(a/sqrt2) c~_r(a)
  HalfRootTwo,
  // b = a b~(a),  c_r = a^2 c~_r(a)
  Quadratic,
};

struct BranchConstants {
  int K = 0;
  std::string label;
  double b_tilde0 = 0.0;
  double c_tilde0 = 0.0;
  std::optional<Rational> b_tilde0_exact;
  std::optional<Rational> c_tilde0_exact;
  BranchScaling scaling = BranchScaling::Quadratic;

  std::string b_scaling() const;
  std::string c_scaling() const;

  // Kernel cos(Kx) amplitude of the order-a profile term (b / a at a = 0).
  double leading_kernel_amplitude() const;
  // c1 and c2 in c = c0 + c1 a + c2 a^2 + ... implied by the scaling; for
  // K = 2 only c1 is fixed at leading order.
  double velocity_c1() const;
  std::optional<double> velocity_c2() const;
};

// K = 2: labels "plus", "minus" (ordered by sign). K = 3: "1", "2", "3"
// (ascending b~0). K >= 4: "unique".
std::vector<BranchConstants> branch_constants(int K);

// Accepts the canonical labels plus "+" / "-" for K = 2.
BranchConstants find_branch(int K, const std::string& label);

std::vector<std::string> branch_labels(int K);

// Leading-order rescaled bifurcation system at a = 0 evaluated at (b~, c~).
std::array<double, 2> leading_system(int K, double b_tilde, double c_tilde);

// Exact partial derivatives of the leading-order rescaled system with
// respect to (b~, c~) at the branch point, row-major.
std::array<std::array<double, 2>, 2> reduced_jacobian(int K, const BranchConstants& branch);

// Determinant of the invertibility certificate matrix for the branch:
//   K = 2:  [[1/sqrt2, -1/sqrt2], [-b~0, -b~0]]
//   K = 3:  [[1, 1], [w210, b~0]]
//   K >= 4: [[0, 1], [w210 - v300, 0]]
// Throws DegenerateBranch when |det| < 1e-10.
double jacobian_certificate(int K, const BranchConstants& branch);

// Real roots in [lo, hi] of a polynomial (coefficients in ascending powers):
// sign changes on a uniform grid, bisection, then Newton polishing.
std::vector<double> real_roots(const std::vector<double>& poly, double lo = -10.0, double hi = 10.0,
                               int grid = 10000);

// Cubic in b~ obtained by eliminating c~ from the leading-order system
// (ascending powers). K >= 3 only.
std::vector<Rational> leading_cubic(int K);

}  // namespace wilton
