// wilton: command-line front end for the Kawahara traveling-wave toolkit.
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wilton/asymptotics.hpp"
#include "wilton/error.hpp"
#include "wilton/figure.hpp"
#include "wilton/plseries.hpp"
#include "wilton/report.hpp"
#include "wilton/solver.hpp"
#include "wilton/validation.hpp"

namespace fs = std::filesystem;
using namespace wilton;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3 };

struct Globals {
  bool json = false;
  bool csv = false;
  std::string out;
  int seed_order = 3;
  bool exact = false;
  double tol = 1e-12;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ModeMismatch:
    case ErrorCode::ModeUnsupported:
    case ErrorCode::ResonantBeta:
      return kUsage;
    default:
      return kNumerical;
  }
}

enum class Format { Text, Json, Csv };

Format pick(const Globals& g, Format fallback) {
  if (g.json && g.csv) throw Error(ErrorCode::InvalidArgument, "--json and --csv are exclusive");
  if (g.json) return Format::Json;
  if (g.csv) return Format::Csv;
  return fallback;
}

void emit(const Globals& g, const std::string& payload, const Json& run) {
  if (g.out.empty()) {
    std::cout << payload;
    return;
  }
  write_atomic(g.out, payload);
  write_manifest(g.out, run);
}

std::string dump(Json payload, const Json& run) {
  Json doc;
  doc["run"] = run;
  for (auto& [k, v] : payload.items()) doc[k] = std::move(v);
  return doc.dump(2) + "\n";
}

NewtonOptions newton(const Globals& g) {
  NewtonOptions o;
  o.tol = g.tol;
  return o;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      int lo = std::stoi(item.substr(0, dash));
      int hi = std::stoi(item.substr(dash + 1));
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wilton ripples and Stokes waves of the normalized Kawahara equation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_option("--out", g.out, "Output path (file, or directory for fig1)");
  app.add_option("--seed-order", g.seed_order, "Series order used to seed Newton")->check(CLI::PositiveNumber);
  app.add_flag("--exact", g.exact, "Exact rational arithmetic where supported");
  app.add_option("--tol", g.tol, "Newton residual tolerance")->check(CLI::PositiveNumber);

  int K = 0;
  std::string branch;
  int order = 2;
  double a = 0.01;
  std::size_t N = 0;
  double a_max = 0.05;
  int steps = 10;
  std::string beta_text = "1/2";
  std::string ks_text = "2,3,4,5,6";
  std::string a_grid_text = "0.01,0.005,0.0025";
  std::string orders_text = "1,2,3";
  int criterion = 0;
  std::string k3_branch = "3";

  auto* constants = app.add_subcommand("constants", "Branch constants and Jacobian determinants");
  constants->add_option("--K", K, "Resonant mode")->required();

  auto* expand_cmd = app.add_subcommand("expand", "Amplitude expansion of one branch");
  expand_cmd->add_option("--K", K)->required();
  expand_cmd->add_option("--branch", branch)->required();
  expand_cmd->add_option("--order", order, "Expansion order M")->required();

  auto* solve = app.add_subcommand("solve", "Galerkin-Newton solve on one branch");
  solve->add_option("--K", K)->required();
  solve->add_option("--branch", branch)->required();
  solve->add_option("--a", a, "Amplitude (cos x coefficient)");
  solve->add_option("--N", N, "Truncation degree (default max(4K, 32))");

  auto* sweep = app.add_subcommand("sweep", "Continuation in the amplitude");
  sweep->add_option("--K", K)->required();
  sweep->add_option("--branch", branch)->required();
  sweep->add_option("--a-max", a_max);
  sweep->add_option("--steps", steps);
  sweep->add_option("--N", N);

  auto* stokes = app.add_subcommand("stokes", "Stokes wave for non-resonant beta");
  stokes->add_option("--beta", beta_text, "beta as a decimal or p/q");
  stokes->add_option("--a", a);
  stokes->add_option("--N", N);

  auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
  validate->add_option("--K", ks_text, "K values, e.g. 2,3,4 or 2-6");
  validate->add_option("--a-grid", a_grid_text);
  validate->add_option("--orders", orders_text);
  validate->add_option("--criterion", criterion, "Run only this criterion (1-10)");

  auto* fig1 = app.add_subcommand("fig1", "Profile panels at amplitude a");
  fig1->add_option("--a", a);
  fig1->add_option("--k3-branch", k3_branch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    const auto mode = g.exact ? ScalarMode::Rational : ScalarMode::Float;
    if (*constants) {
      Json run = run_info("constants", Json{{"K", K}}, ScalarMode::Rational);
      if (pick(g, Format::Text) == Format::Json) {
        emit(g, dump(constants_payload(K), run), run);
      } else {
        emit(g, constants_text(K), run);
      }
    } else if (*expand_cmd) {
      Json run = run_info("expand", Json{{"K", K}, {"branch", branch}, {"order", order}}, mode);
      auto series = expand_any(K, branch, order, mode);
      const Format f = pick(g, Format::Json);
      std::string payload = std::visit(
          [&](const auto& s) { return f == Format::Csv ? expand_csv(s) : dump(expand_payload(s), run); }, series);
      emit(g, payload, run);
    } else if (*solve) {
      Json run = run_info("solve",
                          Json{{"K", K}, {"branch", branch}, {"a", a}, {"N", N}, {"seed_order", g.seed_order},
                               {"tol", g.tol}},
                          ScalarMode::Float);
      auto r = solve_branch(K, branch, a, N, g.seed_order, newton(g));
      emit(g, pick(g, Format::Json) == Format::Csv ? solve_csv(r) : dump(solve_payload(r), run), run);
    } else if (*sweep) {
      Json run = run_info("sweep",
                          Json{{"K", K}, {"branch", branch}, {"a_max", a_max}, {"steps", steps}, {"N", N},
                               {"seed_order", g.seed_order}, {"tol", g.tol}},
                          ScalarMode::Float);
      auto path = continue_branch(K, branch, a_max, steps, N, newton(g), g.seed_order);
      emit(g, pick(g, Format::Csv) == Format::Json ? dump(sweep_payload(path), run) : sweep_csv(path), run);
    } else if (*stokes) {
      const double beta = to_double(parse_rational(beta_text));
      const std::size_t n = N == 0 ? 32 : N;
      Json run = run_info("stokes", Json{{"beta", beta_text}, {"a", a}, {"N", n}, {"tol", g.tol}},
                          ScalarMode::Float);
      auto r = stokes_solve(beta, a, n, newton(g));
      emit(g, pick(g, Format::Json) == Format::Csv ? solve_csv(r) : dump(solve_payload(r), run), run);
    } else if (*validate) {
      ValidationOptions opts;
      opts.ks = parse_ints(ks_text);
      opts.a_grid = parse_doubles(a_grid_text);
      opts.orders = parse_ints(orders_text);
      if (opts.ks.empty()) throw Error(ErrorCode::InvalidArgument, "empty K range");
      if (opts.a_grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "a-grid needs at least two values");
      if (opts.orders.empty()) throw Error(ErrorCode::InvalidArgument, "empty order list");
      for (int k : opts.ks) {
        if (k < 2) throw Error(ErrorCode::InvalidArgument, "K must be >= 2");
      }
      std::error_code ec;
      opts.cli_path = fs::read_symlink("/proc/self/exe", ec);
      if (ec) opts.cli_path = argv[0];
      std::vector<CriterionResult> rows;
      if (criterion != 0) {
        rows.push_back(run_criterion(criterion, opts));
      } else {
        rows = run_all(opts);
      }
      bool ok = true;
      Json run = run_info("validate",
                          Json{{"K", opts.ks}, {"a_grid", opts.a_grid}, {"orders", opts.orders},
                               {"criterion", criterion}},
                          ScalarMode::Float);
      if (pick(g, Format::Text) == Format::Json) {
        Json arr = Json::array();
        for (const auto& r : rows) {
          ok = ok && r.passed;
          arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
        }
        emit(g, dump(Json{{"criteria", arr}, {"passed", ok}}, run), run);
      } else {
        std::string text;
        for (const auto& r : rows) {
          ok = ok && r.passed;
          text += format_row(r);
        }
        text += ok ? "all criteria passed\n" : "some criteria failed\n";
        emit(g, text, run);
      }
      return ok ? kOk : kValidationFailed;
    } else if (*fig1) {
      const fs::path dir = g.out.empty() ? fs::path("fig1") : fs::path(g.out);
      Figure1 fig = compute_fig1(a, k3_branch);
      auto written = write_fig1(fig, dir);
      Json run = run_info("fig1", Json{{"a", a}, {"k3_branch", k3_branch}}, ScalarMode::Float);
      write_manifest(dir / "fig1", run);
      for (const auto& p : fig.panels) {
        std::cout << "panel " << p.id << " (" << p.title << "): sup |u/a - leading| = " << format17(p.deviation)
                  << ", residual " << format17(p.solution.residual_sup) << '\n';
      }
      for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
