#include "wilton/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wilton/symbolic.hpp"

namespace wilton {

namespace {

constexpr int kSymA = 0;
constexpr int kSymB = 1;
constexpr int kSymC = 2;

Exponents to_exponents(const Monomial& m) {
  Exponents e{0, 0, 0};
  for (int s : m) ++e[static_cast<std::size_t>(s)];
  return e;
}

void require_k(int K) {
  if (K < 2) throw Error(ErrorCode::InvalidArgument, "K must be >= 2, got " + std::to_string(K));
}

Rational kk(int K) { return Rational(static_cast<long>(K) * K); }

const std::vector<Exponents>& taylor_indices() {
  static const std::vector<Exponents> indices = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}, {1, 1, 0},
      {0, 2, 0}, {0, 1, 1}, {0, 0, 2}, {1, 0, 1},
  };
  return indices;
}

SecondOrderCorrections zero_corrections(int K) {
  SecondOrderCorrections out;
  out.K = K;
  for (const auto& e : taylor_indices()) out.entries[e] = CosineSeries<Rational>();
  return out;
}

Rational nonzero_divisor(const Rational& d, int mode) {
  if (sgn(d) == 0) {
    throw Error(ErrorCode::NearResonance,
                "divisor c0 + symbol(" + std::to_string(mode) + ") vanishes");
  }
  return d;
}

// Evaluates sum_j poly[j] x^j.
double horner(const std::vector<double>& poly, double x) {
  double acc = 0.0;
  for (std::size_t j = poly.size(); j-- > 0;) acc = acc * x + poly[j];
  return acc;
}

double horner_derivative(const std::vector<double>& poly, double x) {
  double acc = 0.0;
  for (std::size_t j = poly.size(); j-- > 1;) acc = acc * x + static_cast<double>(j) * poly[j];
  return acc;
}

struct LeadingScale {
  double sb;
  double sc;
  bool quadratic;  // i+j+2k == 3 selection (K >= 3); otherwise i+j+k == 2
};

LeadingScale leading_scale(int K) {
  if (K == 2) return {1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2, false};
  return {1.0, 1.0, true};
}

bool in_leading_system(const Exponents& e, bool quadratic) {
  return quadratic ? (e[0] + e[1] + 2 * e[2] == 3) : (e[0] + e[1] + e[2] == 2);
}

}  // namespace

KawaharaConfig<Rational> config(int K) { return resonant_config(K); }

const CosineSeries<Rational>& SecondOrderCorrections::at(int i, int j, int k) const {
  auto it = entries.find(Exponents{i, j, k});
  if (it == entries.end()) {
    throw Error(ErrorCode::InvalidArgument, "no correction stored for (" + std::to_string(i) + "," +
                                                std::to_string(j) + "," + std::to_string(k) + ")");
  }
  return it->second;
}

SecondOrderCorrections second_order_corrections(int K) {
  require_k(K);
  if (K >= 3) return second_order_corrections_general(K);

  const auto cfg = config(K);
  const Rational& c0 = cfg.c0();
  const Rational& beta = cfg.beta();
  SecondOrderCorrections out = zero_corrections(K);
  Rational half_mean = -Rational(1) / (Rational(2) * c0);
  out.entries[{2, 0, 0}] = CosineSeries<Rational>::constant(half_mean);
  Rational d3 = nonzero_divisor(c0 - 9 + 81 * beta, 3);
  out.entries[{1, 1, 0}] = CosineSeries<Rational>::mode(3, -Rational(1) / d3);
  Rational d4 = nonzero_divisor(c0 - 16 + 256 * beta, 4);
  CosineSeries<Rational> u020 = CosineSeries<Rational>::mode(4, -Rational(1) / (Rational(2) * d4));
  u020.set(0, half_mean);
  out.entries[{0, 2, 0}] = u020;
  return out;
}

SecondOrderCorrections second_order_corrections_general(int K) {
  require_k(K);
  const auto cfg = config(K);
  const Rational& c0 = cfg.c0();
  const Rational& beta = cfg.beta();
  auto divisor = [&](int k) {
    Rational k2 = kk(k);
    return nonzero_divisor(c0 - k2 + beta * k2 * k2, k);
  };

  SecondOrderCorrections out = zero_corrections(K);
  Rational half_mean = -Rational(1) / (Rational(2) * c0);

  CosineSeries<Rational> u200 = CosineSeries<Rational>::mode(2, -Rational(1) / (Rational(2) * divisor(2)));
  u200.set(0, half_mean);
  out.entries[{2, 0, 0}] = u200;

  auto km = static_cast<std::size_t>(K - 1);
  auto kp = static_cast<std::size_t>(K + 1);
  CosineSeries<Rational> u110 = CosineSeries<Rational>::mode(kp, -Rational(1) / divisor(K + 1));
  u110.set(km, u110.coeff(km) - Rational(1) / divisor(K - 1));
  out.entries[{1, 1, 0}] = u110;

  CosineSeries<Rational> u020 =
      CosineSeries<Rational>::mode(static_cast<std::size_t>(2 * K), -Rational(1) / (Rational(2) * divisor(2 * K)));
  u020.set(0, half_mean);
  out.entries[{0, 2, 0}] = u020;
  return out;
}

std::map<Exponents, CosineSeries<Rational>> second_order_forcing(int K) {
  require_k(K);
  const auto cfg = config(K);
  const auto cos1 = CosineSeries<Rational>::mode(1);
  const auto cosk = CosineSeries<Rational>::mode(static_cast<std::size_t>(K));
  std::map<Exponents, CosineSeries<Rational>> out;
  for (const auto& e : taylor_indices()) out[e] = CosineSeries<Rational>();
  out[{2, 0, 0}] = -project_off_kernel(multiply(cos1, cos1), cfg);
  out[{1, 1, 0}] = -project_off_kernel(Rational(2) * multiply(cos1, cosk), cfg);
  out[{0, 2, 0}] = -project_off_kernel(multiply(cosk, cosk), cfg);
  return out;
}

const char* to_string(BifurcationCase c) noexcept {
  switch (c) {
    case BifurcationCase::K2: return "K=2";
    case BifurcationCase::K3: return "K=3";
    case BifurcationCase::KAtLeast4: return "K>=4";
  }
  return "?";
}

BifurcationCase bifurcation_case(int K) {
  require_k(K);
  if (K == 2) return BifurcationCase::K2;
  if (K == 3) return BifurcationCase::K3;
  return BifurcationCase::KAtLeast4;
}

Rational BifurcationCoefficients::coeff(int component, int i, int j, int k) const {
  const auto& m = components.at(static_cast<std::size_t>(component));
  auto it = m.find(Exponents{i, j, k});
  return it == m.end() ? Rational(0) : it->second;
}

BifurcationCoefficients derive_bifurcation_coefficients(int K) {
  require_k(K);
  const auto cfg = config(K);
  const auto ks = static_cast<std::size_t>(K);

  using Sym = SymbolicSeries<Rational>;
  Sym kernel = Sym::symbol(kSymA, CosineSeries<Rational>::mode(1)) +
               Sym::symbol(kSymB, CosineSeries<Rational>::mode(ks));
  Sym square = multiply(kernel, kernel);
  // Second-order auxiliary solution: Q(c0+L) u_r2 = -Q(kernel^2).
  Sym correction = square.map([&](const CosineSeries<Rational>& f) {
    return invert_on_complement(-project_off_kernel(f, cfg), cfg);
  });
  Sym through_cubic = square + Rational(2) * multiply(kernel, correction);

  BifurcationCoefficients out;
  out.K = K;
  out.kind = bifurcation_case(K);
  const std::array<std::size_t, 2> modes{1, ks};
  const std::array<int, 2> partner{kSymA, kSymB};
  for (std::size_t comp = 0; comp < 2; ++comp) {
    for (const auto& [m, v] : through_cubic.mode_coefficient(modes[comp])) {
      out.components[comp][to_exponents(m)] += v;
    }
    Monomial cterm{partner[comp], kSymC};
    std::sort(cterm.begin(), cterm.end());
    out.components[comp][to_exponents(cterm)] += Rational(1);
    std::erase_if(out.components[comp], [](const auto& kv) { return sgn(kv.second) == 0; });
  }
  return out;
}

Rational v300_closed_form(int K) {
  Rational k2 = kk(K);
  Rational v = -((k2 + 1) * (5 * k2 - 24)) / (6 * k2 * (k2 - 4));
  return v;
}

Rational v120_closed_form(int K) {
  Rational k2 = kk(K);
  Rational v = -((k2 + 1) * (4 * k2 * k2 - 27 * k2 + 4)) / (k2 * (k2 - 4) * (4 * k2 - 1));
  return v;
}

Rational w030_closed_form(int K) {
  Rational k2 = kk(K);
  Rational v = -((k2 + 1) * (24 * k2 - 5)) / (6 * k2 * (4 * k2 - 1));
  return v;
}

Rational jacobian_det_closed_form(int K) {
  Rational k2 = kk(K);
  Rational v = ((k2 + 1) * (4 * k2 - 61)) / (6 * (k2 - 4) * (4 * k2 - 1));
  return v;
}

Rational nontrivial_root_square_closed_form(int K) {
  Rational k2 = kk(K);
  Rational v = -(k2 * (4 * k2 - 61)) / (61 * k2 - 4);
  return v;
}

BifurcationCoefficients tabulated_bifurcation_coefficients(int K) {
  require_k(K);
  BifurcationCoefficients out;
  out.K = K;
  out.kind = bifurcation_case(K);
  auto& c1 = out.components[0];
  auto& cK = out.components[1];
  switch (out.kind) {
    case BifurcationCase::K2:
      c1[{1, 1, 0}] = 1;
      c1[{1, 0, 1}] = 1;
      c1[{3, 0, 0}] = Rational(-5, 4);
      c1[{1, 2, 0}] = Rational(-11, 8);
      cK[{2, 0, 0}] = Rational(1, 2);
      cK[{0, 1, 1}] = 1;
      cK[{2, 1, 0}] = Rational(-11, 8);
      cK[{0, 3, 0}] = Rational(-91, 72);
      break;
    case BifurcationCase::K3:
      c1[{1, 0, 1}] = 1;
      c1[{3, 0, 0}] = Rational(-7, 9);
      c1[{2, 1, 0}] = 1;
      c1[{1, 2, 0}] = Rational(-34, 63);
      cK[{0, 1, 1}] = 1;
      cK[{3, 0, 0}] = Rational(1, 3);
      cK[{2, 1, 0}] = Rational(-34, 63);
      cK[{0, 3, 0}] = Rational(-211, 189);
      break;
    case BifurcationCase::KAtLeast4:
      c1[{1, 0, 1}] = 1;
      c1[{3, 0, 0}] = v300_closed_form(K);
      c1[{1, 2, 0}] = v120_closed_form(K);
      cK[{0, 1, 1}] = 1;
      cK[{2, 1, 0}] = v120_closed_form(K);
      cK[{0, 3, 0}] = w030_closed_form(K);
      break;
  }
  for (auto& comp : out.components) {
    for (auto& [e, v] : comp) v.canonicalize();
  }
  return out;
}

std::string BranchConstants::b_scaling() const {
  return scaling == BranchScaling::HalfRootTwo ? "b = (a/sqrt(2)) * b_tilde(a)" : "b = a * b_tilde(a)";
}

std::string BranchConstants::c_scaling() const {
  return scaling == BranchScaling::HalfRootTwo ? "c_r = -(a/sqrt(2)) * c_tilde(a)" : "c_r = a^2 * c_tilde(a)";
}

double BranchConstants::leading_kernel_amplitude() const {
  return scaling == BranchScaling::HalfRootTwo ? b_tilde0 / std::numbers::sqrt2 : b_tilde0;
}

double BranchConstants::velocity_c1() const {
  return scaling == BranchScaling::HalfRootTwo ? -c_tilde0 / std::numbers::sqrt2 : 0.0;
}

std::optional<double> BranchConstants::velocity_c2() const {
  if (scaling == BranchScaling::HalfRootTwo) return std::nullopt;
  return c_tilde0;
}

std::vector<Rational> leading_cubic(int K) {
  require_k(K);
  if (K == 2) throw Error(ErrorCode::InvalidArgument, "the leading cubic applies to K >= 3");
  const auto bc = derive_bifurcation_coefficients(K);
  for (int comp = 0; comp < 2; ++comp) {
    for (const Exponents& e : {Exponents{2, 0, 0}, Exponents{1, 1, 0}, Exponents{0, 2, 0}, Exponents{0, 0, 1}}) {
      if (sgn(bc.coeff(comp, e[0], e[1], e[2])) != 0) {
        throw Error(ErrorCode::DegenerateBranch, "quadratic bifurcation term present for K = " + std::to_string(K));
      }
    }
  }
  if (sgn(bc.coeff(0, 0, 1, 1)) != 0 || sgn(bc.coeff(0, 1, 0, 1)) == 0) {
    throw Error(ErrorCode::DegenerateBranch, "first component is not solvable for c~");
  }
  // Component i at a = 0:  A_i(b) + c (L_i0 + L_i1 b),  with A_i = sum_j p_i(3-j, j, 0) b^j.
  auto cubic_part = [&](int comp) {
    std::vector<Rational> a(4);
    for (int j = 0; j <= 3; ++j) a[static_cast<std::size_t>(j)] = bc.coeff(comp, 3 - j, j, 0);
    return a;
  };
  std::vector<Rational> a0 = cubic_part(0);
  std::vector<Rational> a1 = cubic_part(1);
  Rational l0 = bc.coeff(0, 1, 0, 1);
  Rational l10 = bc.coeff(1, 1, 0, 1);
  Rational l11 = bc.coeff(1, 0, 1, 1);
  // c = -A_0(b) / l0; substitute into component 2.
  std::vector<Rational> out(5);
  for (std::size_t j = 0; j < 4; ++j) out[j] += a1[j];
  for (std::size_t j = 0; j < 4; ++j) {
    Rational cj = -a0[j] / l0;
    out[j] += l10 * cj;
    out[j + 1] += l11 * cj;
  }
  while (out.size() > 1 && sgn(out.back()) == 0) out.pop_back();
  return out;
}

std::vector<double> real_roots(const std::vector<double>& poly, double lo, double hi, int grid) {
  std::vector<double> roots;
  auto p = [&](double x) { return horner(poly, x); };
  const double h = (hi - lo) / grid;
  double x_prev = lo;
  double p_prev = p(lo);
  for (int i = 1; i <= grid; ++i) {
    double x = lo + h * i;
    double px = p(x);
    double root;
    if (p_prev == 0.0) {
      root = x_prev;
    } else if ((p_prev < 0.0) != (px < 0.0) && px != 0.0) {
      double left = x_prev;
      double right = x;
      double pl = p_prev;
      while (right - left > 1e-8) {
        double mid = 0.5 * (left + right);
        double pm = p(mid);
        if ((pm < 0.0) == (pl < 0.0)) {
          left = mid;
          pl = pm;
        } else {
          right = mid;
        }
      }
      root = 0.5 * (left + right);
      for (int it = 0; it < 50; ++it) {
        double d = horner_derivative(poly, root);
        if (d == 0.0) break;
        double step = p(root) / d;
        double next = root - step;
        if (next < x_prev - h || next > x + h) break;
        root = next;
        if (std::fabs(step) <= 1e-14 * std::max(1.0, std::fabs(root))) break;
      }
    } else {
      x_prev = x;
      p_prev = px;
      continue;
    }
    roots.push_back(root);
    x_prev = x;
    p_prev = px;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<BranchConstants> branch_constants(int K) {
  require_k(K);
  std::vector<BranchConstants> out;
  if (K == 2) {
    const auto bc = derive_bifurcation_coefficients(K);
    // Leading order with b = aB, c_r = aC:  p110 B + p101 C = 0,  q200 + q011 B C = 0.
    Rational p110 = bc.coeff(0, 1, 1, 0);
    Rational p101 = bc.coeff(0, 1, 0, 1);
    Rational q200 = bc.coeff(1, 2, 0, 0);
    Rational q011 = bc.coeff(1, 0, 1, 1);
    Rational b_sq = (q200 * p101) / (q011 * p110);
    // b~ = sqrt2 B, c~ = -sqrt2 C = sqrt2 (p110/p101) B.
    Rational bt_sq = 2 * b_sq;
    bt_sq.canonicalize();
    if (sgn(bt_sq) <= 0) throw Error(ErrorCode::DegenerateBranch, "K = 2 leading system has no real roots");
    std::optional<Rational> bt_exact;
    if (mpz_perfect_square_p(bt_sq.get_num_mpz_t()) && mpz_perfect_square_p(bt_sq.get_den_mpz_t())) {
      mpz_class num, den;
      mpz_sqrt(num.get_mpz_t(), bt_sq.get_num_mpz_t());
      mpz_sqrt(den.get_mpz_t(), bt_sq.get_den_mpz_t());
      bt_exact = Rational(num, den);
    }
    Rational ratio = p110 / p101;
    for (int sign : {+1, -1}) {
      BranchConstants b;
      b.K = K;
      b.label = sign > 0 ? "plus" : "minus";
      b.scaling = BranchScaling::HalfRootTwo;
      if (bt_exact) {
        b.b_tilde0_exact = sign * *bt_exact;
        b.c_tilde0_exact = *b.b_tilde0_exact * ratio;
        b.b_tilde0 = to_double(*b.b_tilde0_exact);
        b.c_tilde0 = to_double(*b.c_tilde0_exact);
      } else {
        b.b_tilde0 = sign * std::sqrt(to_double(bt_sq));
        b.c_tilde0 = b.b_tilde0 * to_double(ratio);
      }
      out.push_back(b);
    }
    return out;
  }

  const auto bc = derive_bifurcation_coefficients(K);
  Rational l0 = bc.coeff(0, 1, 0, 1);
  auto c_of_b = [&](double b) {
    double a0 = 0.0;
    for (int j = 3; j >= 0; --j) a0 = a0 * b + to_double(bc.coeff(0, 3 - j, j, 0));
    return -a0 / to_double(l0);
  };

  if (K >= 4) {
    // b~ = 0 is an exact root; the remaining quadratic factor has no real roots.
    BranchConstants b;
    b.K = K;
    b.label = "unique";
    b.scaling = BranchScaling::Quadratic;
    b.b_tilde0_exact = Rational(0);
    Rational c = -bc.coeff(0, 3, 0, 0) / l0;
    c.canonicalize();
    b.c_tilde0_exact = c;
    b.b_tilde0 = 0.0;
    b.c_tilde0 = to_double(c);
    out.push_back(b);
    return out;
  }

  std::vector<Rational> cubic = leading_cubic(K);
  std::vector<double> poly;
  for (const auto& q : cubic) poly.push_back(to_double(q));
  std::vector<double> roots = real_roots(poly);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    BranchConstants b;
    b.K = K;
    b.label = std::to_string(i + 1);
    b.scaling = BranchScaling::Quadratic;
    b.b_tilde0 = roots[i];
    b.c_tilde0 = c_of_b(roots[i]);
    out.push_back(b);
  }
  return out;
}

std::vector<std::string> branch_labels(int K) {
  if (K == 2) return {"plus", "minus"};
  if (K == 3) return {"1", "2", "3"};
  require_k(K);
  return {"unique"};
}

BranchConstants find_branch(int K, const std::string& label) {
  std::string canonical = label;
  if (K == 2 && label == "+") canonical = "plus";
  if (K == 2 && label == "-") canonical = "minus";
  for (auto& b : branch_constants(K)) {
    if (b.label == canonical) return b;
  }
  std::string known;
  for (const auto& l : branch_labels(K)) known += (known.empty() ? "" : ", ") + l;
  throw Error(ErrorCode::InvalidArgument,
              "unknown branch '" + label + "' for K = " + std::to_string(K) + " (expected " + known + ")");
}

std::array<double, 2> leading_system(int K, double b_tilde, double c_tilde) {
  const auto bc = derive_bifurcation_coefficients(K);
  const auto scale = leading_scale(K);
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t comp = 0; comp < 2; ++comp) {
    for (const auto& [e, v] : bc.components[comp]) {
      if (!in_leading_system(e, scale.quadratic)) continue;
      out[comp] += to_double(v) * std::pow(scale.sb * b_tilde, e[1]) * std::pow(scale.sc * c_tilde, e[2]);
    }
  }
  return out;
}

std::array<std::array<double, 2>, 2> reduced_jacobian(int K, const BranchConstants& branch) {
  const auto bc = derive_bifurcation_coefficients(K);
  const auto scale = leading_scale(K);
  const double b = branch.b_tilde0;
  const double c = branch.c_tilde0;
  std::array<std::array<double, 2>, 2> jac{};
  for (std::size_t comp = 0; comp < 2; ++comp) {
    for (const auto& [e, v] : bc.components[comp]) {
      if (!in_leading_system(e, scale.quadratic)) continue;
      const int j = e[1];
      const int k = e[2];
      double p = to_double(v);
      if (j > 0) {
        jac[comp][0] += p * j * std::pow(scale.sb, j) * std::pow(b, j - 1) * std::pow(scale.sc * c, k);
      }
      if (k > 0) {
        jac[comp][1] += p * k * std::pow(scale.sc, k) * std::pow(c, k - 1) * std::pow(scale.sb * b, j);
      }
    }
  }
  return jac;
}

double jacobian_certificate(int K, const BranchConstants& branch) {
  require_k(K);
  double det = 0.0;
  if (K == 2) {
    const double r = 1.0 / std::numbers::sqrt2;
    det = r * (-branch.b_tilde0) - (-r) * (-branch.b_tilde0);
  } else if (K == 3) {
    const auto bc = derive_bifurcation_coefficients(K);
    det = branch.b_tilde0 - to_double(bc.w210());
  } else {
    const auto bc = derive_bifurcation_coefficients(K);
    Rational d = bc.v300() - bc.w210();
    det = to_double(d);
  }
  if (std::fabs(det) < 1e-10) {
    throw Error(ErrorCode::DegenerateBranch,
                "K = " + std::to_string(K) + " branch " + branch.label + " has determinant " + format17(det));
  }
  return det;
}

}  // namespace wilton
