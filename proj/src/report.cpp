#include "wilton/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "wilton/asymptotics.hpp"

namespace wilton {

namespace {

Json scalar_json(double x) { return x; }
Json scalar_json(const Rational& q) { return q.get_str(); }

std::string csv_field(double x) { return format17(x); }
std::string csv_field(const Rational& q) { return q.get_str(); }

double reduced_det(int K, const BranchConstants& b) {
  auto J = reduced_jacobian(K, b);
  return J[0][0] * J[1][1] - J[0][1] * J[1][0];
}

template <class S>
std::string expand_csv_impl(const PLSeries<S>& series) {
  std::ostringstream out;
  out << "n,c_n,k,coeff\n";
  for (int n = 1; n <= series.order; ++n) {
    const auto& u = series.u_at(n);
    for (std::size_t k = 0; k <= u.degree(); ++k) {
      out << n << ',' << csv_field(series.c_at(n)) << ',' << k << ',' << csv_field(u.coeff(k)) << '\n';
    }
  }
  return out.str();
}

}  // namespace

Json to_json(const CosineSeries<double>& f) {
  Json coeffs = Json::array();
  for (double x : f.coeffs()) coeffs.push_back(x);
  return Json{{"degree", f.degree()}, {"mode", "float"}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const CosineSeries<Rational>& f) {
  Json coeffs = Json::array();
  for (const auto& q : f.coeffs()) coeffs.push_back(q.get_str());
  return Json{{"degree", f.degree()}, {"mode", "rational"}, {"coeffs", std::move(coeffs)}};
}

Json run_info(const std::string& command, const Json& parameters, ScalarMode mode) {
  return Json{{"command", command},
              {"parameters", parameters},
              {"version", kVersion},
              {"scalar_mode", to_string(mode)}};
}

Json constants_payload(int K) {
  KawaharaConfig<Rational> cfg = resonant_config(K);
  Json branches = Json::array();
  for (const auto& b : branch_constants(K)) {
    Json row{{"label", b.label},
             {"b_tilde0", b.b_tilde0},
             {"c_tilde0", b.c_tilde0},
             {"jacobian_det", jacobian_certificate(K, b)},
             {"reduced_det", reduced_det(K, b)},
             {"b_scaling", b.b_scaling()},
             {"c_scaling", b.c_scaling()}};
    if (b.b_tilde0_exact) row["b_tilde0_exact"] = b.b_tilde0_exact->get_str();
    if (b.c_tilde0_exact) row["c_tilde0_exact"] = b.c_tilde0_exact->get_str();
    branches.push_back(std::move(row));
  }
  return Json{{"K", K},
              {"beta", to_double(cfg.beta())},
              {"c0", to_double(cfg.c0())},
              {"beta_exact", cfg.beta().get_str()},
              {"c0_exact", cfg.c0().get_str()},
              {"branches", std::move(branches)}};
}

template <class S>
Json expand_payload(const PLSeries<S>& series) {
  Json u = Json::array();
  Json c = Json::array();
  Json kernel = Json::array();
  for (int n = 1; n <= series.order; ++n) {
    u.push_back(to_json(series.u_at(n)));
    c.push_back(scalar_json(series.c_at(n)));
    if (series.K >= 2) kernel.push_back(scalar_json(series.u_at(n).coeff(static_cast<std::size_t>(series.K))));
  }
  Json out{{"K", series.K},
           {"branch", series.branch},
           {"order", series.order},
           {"mode", to_string(series.scalar_mode())},
           {"beta", scalar_json(series.cfg.beta())},
           {"c0", scalar_json(series.cfg.c0())},
           {"c", std::move(c)},
           {"u", std::move(u)}};
  if (series.K >= 2) out["kernel_K"] = std::move(kernel);
  out["horizon"] = series.horizon;
  out["projection_residuals"] = series.projection_residuals;
  return out;
}

template Json expand_payload<double>(const PLSeries<double>&);
template Json expand_payload<Rational>(const PLSeries<Rational>&);

Json solve_payload(const SolveResult& r) {
  return Json{{"K", r.K},
              {"branch", r.branch},
              {"a", r.a},
              {"N", r.N},
              {"velocity", r.velocity},
              {"measured_b", r.measured_b},
              {"residual_sup", r.residual_sup},
              {"residual_l2", r.residual_l2},
              {"newton_iters", r.newton_iters},
              {"profile", to_json(r.profile)}};
}

Json sweep_payload(const BranchPath& path) {
  Json results = Json::array();
  for (const auto& r : path.results) {
    results.push_back(Json{{"a", r.a},
                           {"c", r.velocity},
                           {"measured_b", r.measured_b},
                           {"residual_sup", r.residual_sup},
                           {"iters", r.newton_iters},
                           {"N", r.N}});
  }
  Json steps = Json::array();
  for (const auto& d : path.diagnostics) {
    steps.push_back(Json{{"a", d.a}, {"step", d.step}, {"iters", d.iters}, {"halvings", d.halvings},
                         {"accepted", d.accepted}});
  }
  return Json{{"K", path.K}, {"branch", path.branch}, {"results", std::move(results)},
              {"diagnostics", std::move(steps)}};
}

std::string expand_csv(const PLSeries<double>& series) { return expand_csv_impl(series); }
std::string expand_csv(const PLSeries<Rational>& series) { return expand_csv_impl(series); }

std::string solve_csv(const SolveResult& r) {
  std::ostringstream out;
  out << "k,coeff\n";
  for (std::size_t k = 0; k <= r.profile.degree(); ++k) out << k << ',' << format17(r.profile.coeff(k)) << '\n';
  return out.str();
}

std::string sweep_csv(const BranchPath& path) {
  std::ostringstream out;
  out << "a,c,measured_b,residual_sup,iters\n";
  for (const auto& r : path.results) {
    out << format17(r.a) << ',' << format17(r.velocity) << ',' << format17(r.measured_b) << ','
        << format17(r.residual_sup) << ',' << r.newton_iters << '\n';
  }
  return out.str();
}

std::string constants_text(int K) {
  KawaharaConfig<Rational> cfg = resonant_config(K);
  std::ostringstream out;
  out << "K = " << K << "\nbeta = " << cfg.beta().get_str() << "\nc0 = " << cfg.c0().get_str() << '\n';
  out << "label,b_tilde0,c_tilde0,jacobian_det,reduced_det\n";
  for (const auto& b : branch_constants(K)) {
    out << b.label << ',' << format17(b.b_tilde0) << ',' << format17(b.c_tilde0) << ','
        << format17(jacobian_certificate(K, b)) << ',' << format17(reduced_det(K, b)) << '\n';
  }
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot write " + path.string() + ": " + ec.message());
  }
}

void write_manifest(const std::filesystem::path& path, const Json& run) {
  Json manifest = run;
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  manifest["timestamp"] = buf;
  std::filesystem::path side = path;
  side += ".manifest.json";
  write_atomic(side, manifest.dump(2) + "\n");
}

}  // namespace wilton
