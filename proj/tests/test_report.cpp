#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "wilton/figure.hpp"
#include "wilton/report.hpp"

using namespace wilton;
using Catch::Approx;
using Q = Rational;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("wilton_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("to_double rounds correctly") {
  CHECK(to_double(Q(1, 10)) == 0.1);
  CHECK(to_double(Q(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Q(-2, 7)) == -2.0 / 7.0);
  CHECK(to_double(Q(119, 144)) == 119.0 / 144.0);
  CHECK(to_double(Q(0)) == 0.0);
  CHECK(to_double(Q(1, 1) / Q(1 << 30) / Q(1 << 30)) == std::ldexp(1.0, -60));
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/2") == Q(1, 2));
  CHECK(parse_rational("0.5") == Q(1, 2));
  CHECK(parse_rational("-0.125") == Q(-1, 8));
  CHECK(parse_rational("3") == Q(3));
  CHECK(parse_rational("6/4") == Q(3, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("series JSON") {
  auto j = to_json(CosineSeries<Q>::mode(2, Q(-1, 72)));
  CHECK(j["degree"] == 2);
  CHECK(j["mode"] == "rational");
  CHECK(j["coeffs"][2] == "-1/72");
  auto f = to_json(CosineSeries<double>::mode(1, 0.25));
  CHECK(f["mode"] == "float");
  CHECK(f["coeffs"][1].get<double>() == 0.25);
}

TEST_CASE("constants payload") {
  auto j = constants_payload(4);
  CHECK(j["K"] == 4);
  CHECK(j["beta_exact"] == "1/17");
  CHECK(j["c0_exact"] == "16/17");
  REQUIRE(j["branches"].size() == 1);
  CHECK(j["branches"][0]["label"] == "unique");
  CHECK(j["branches"][0]["c_tilde0_exact"] == "119/144");
  CHECK(j["branches"][0]["jacobian_det"].get<double>() == Approx(17.0 / 1512));
  CHECK(constants_payload(3)["branches"].size() == 3);
  CHECK(constants_text(2).find("plus") != std::string::npos);
}

TEST_CASE("expand payload") {
  auto j = expand_payload(expand<Rational>(4, "unique", 3));
  CHECK(j["mode"] == "rational");
  CHECK(j["order"] == 3);
  CHECK(j["c"][1] == "119/144");
  CHECK(j["kernel_K"][1] == "425/48");
  CHECK(j["u"].size() == 3);
  auto csv = expand_csv(expand<double>(2, "plus", 2));
  CHECK(csv.rfind("n,c_n,k,coeff\n", 0) == 0);
}

TEST_CASE("solve and sweep payloads are deterministic") {
  auto a = solve_payload(solve_branch(2, "plus", 0.01)).dump();
  auto b = solve_payload(solve_branch(2, "plus", 0.01)).dump();
  CHECK(a == b);
  auto path = continue_branch(2, "plus", 0.02, 2);
  CHECK(sweep_csv(path) == sweep_csv(continue_branch(2, "plus", 0.02, 2)));
  CHECK(sweep_csv(path).rfind("a,c,measured_b,residual_sup,iters\n", 0) == 0);
  CHECK(sweep_payload(path)["results"].size() == 2);
}

TEST_CASE("atomic writes and manifest") {
  auto p = scratch("out.json");
  write_atomic(p, "{}\n");
  CHECK(slurp(p) == "{}\n");
  write_atomic(p, "[1]\n");
  CHECK(slurp(p) == "[1]\n");
  write_manifest(p, run_info("constants", Json{{"K", 2}}, ScalarMode::Rational));
  auto m = Json::parse(slurp(p.string() + ".manifest.json"));
  CHECK(m["command"] == "constants");
  CHECK(m["version"] == kVersion);
  CHECK(m.contains("timestamp"));

  try {
    write_atomic("/proc/wilton/nope.txt", "x");
    FAIL("expected an i/o error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("/proc/wilton/nope.txt") != std::string::npos);
  }
}

TEST_CASE("figure panels") {
  auto fig = compute_fig1(0.01);
  REQUIRE(fig.panels.size() == 3);
  CHECK(fig.panels[0].id == "a");
  CHECK(fig.panels[0].beta == 0.5);
  CHECK(fig.panels[1].K == 2);
  CHECK(fig.panels[2].K == 3);
  for (const auto& p : fig.panels) {
    CHECK(p.deviation < 0.05);
    CHECK(p.solution.residual_sup <= 1e-12);
  }
  auto dir = scratch("fig");
  auto written = write_fig1(fig, dir);
  CHECK(written.size() == 4);
  for (const char* name : {"fig1a.svg", "fig1b.svg", "fig1c.svg", "fig1.csv"}) CHECK(fs::exists(dir / name));
  CHECK(slurp(dir / "fig1a.svg").find("<svg") != std::string::npos);
  std::string csv = fig1_csv(fig);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 201);
  CHECK_THROWS_AS(compute_fig1(0.0), Error);
  fs::remove_all(dir.parent_path());
}
