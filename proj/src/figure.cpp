#include "wilton/figure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wilton/asymptotics.hpp"
#include "wilton/report.hpp"

namespace wilton {

namespace {

constexpr int kPlotPoints = 201;

std::vector<double> plot_grid() {
  std::vector<double> xs;
  for (int i = 0; i < kPlotPoints; ++i) {
    xs.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * i / (kPlotPoints - 1));
  }
  return xs;
}

FigurePanel make_panel(std::string id, std::string title, double beta, int K, SolveResult sol, double b1) {
  FigurePanel p;
  p.id = std::move(id);
  p.title = std::move(title);
  p.beta = beta;
  p.K = K;
  p.branch = sol.branch;
  p.normalized = (1.0 / sol.a) * sol.profile;
  p.leading = CosineSeries<double>::mode(1);
  if (K >= 2) p.leading.set(static_cast<std::size_t>(K), b1);
  p.deviation = sup_on_grid(p.normalized - p.leading, 4 * sol.N);
  p.solution = std::move(sol);
  return p;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

Figure1 compute_fig1(double a, const std::string& k3_branch) {
  if (!(a != 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidArgument, "figure amplitude must be nonzero (profiles are divided by a)");
  }
  Figure1 fig;
  fig.a = a;
  fig.panels.push_back(make_panel("a", "Stokes wave, beta = 1/2", 0.5, 0, stokes_solve(0.5, a), 0.0));
  {
    BranchConstants b = find_branch(2, "plus");
    fig.panels.push_back(make_panel("b", "Wilton ripple K = 2 (" + b.label + "), beta = 1/5", 0.2, 2,
                                    solve_branch(2, b.label, a), b.leading_kernel_amplitude()));
  }
  {
    BranchConstants b = find_branch(3, k3_branch);
    fig.panels.push_back(make_panel("c", "Wilton ripple K = 3 (branch " + b.label + "), beta = 1/10", 0.1, 3,
                                    solve_branch(3, b.label, a), b.leading_kernel_amplitude()));
  }
  return fig;
}

std::string panel_svg(const FigurePanel& panel, double a) {
  constexpr double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
  const auto xs = plot_grid();
  std::vector<double> num_y, lead_y;
  double lo = 0.0, hi = 0.0;
  for (double x : xs) {
    num_y.push_back(eval(panel.normalized, x));
    lead_y.push_back(eval(panel.leading, x));
    lo = std::min({lo, num_y.back(), lead_y.back()});
    hi = std::max({hi, num_y.back(), lead_y.back()});
  }
  const double pad = 0.05 * (hi - lo + 1e-300);
  lo -= pad;
  hi += pad;
  auto px = [&](double x) { return L + (x + std::numbers::pi) / (2 * std::numbers::pi) * (W - L - R); };
  auto py = [&](double y) { return T + (hi - y) / (hi - lo) * (H - T - B); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H << "\" width=\"" << W
    << "\" height=\"" << H << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">("
    << panel.id << ") " << panel.title << ", a = " << format17(a) << "</text>\n";
  s << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (lo < 0 && hi > 0) {
    s << "<line x1=\"" << L << "\" y1=\"" << num(py(0)) << "\" x2=\"" << W - R << "\" y2=\"" << num(py(0))
      << "\" stroke=\"#bbb\"/>\n";
  }
  const char* ticks[] = {"-π", "-π/2", "0", "π/2", "π"};
  for (int i = 0; i < 5; ++i) {
    double x = -std::numbers::pi + i * std::numbers::pi / 2;
    s << "<text x=\"" << num(px(x)) << "\" y=\"" << H - B + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << ticks[i] << "</text>\n";
  }
  for (double y : {lo + pad, 0.5 * (lo + hi), hi - pad}) {
    s << "<text x=\"" << L - 6 << "\" y=\"" << num(py(y) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << num(y) << "</text>\n";
  }
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">x</text>\n";
  s << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">u / a</text>\n";

  s << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? " " : "") << num(px(xs[i])) << ',' << num(py(lead_y[i]));
  s << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); i += 5) {
    s << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\"" << num(py(num_y[i])) << "\" r=\"2.5\" fill=\"blue\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string fig1_csv(const Figure1& fig) {
  std::ostringstream s;
  s << "panel,x,numeric,leading\n";
  const auto xs = plot_grid();
  for (const auto& p : fig.panels) {
    for (double x : xs) {
      s << p.id << ',' << format17(x) << ',' << format17(eval(p.normalized, x)) << ','
        << format17(eval(p.leading, x)) << '\n';
    }
  }
  return s.str();
}

std::vector<std::filesystem::path> write_fig1(const Figure1& fig, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& p : fig.panels) {
    auto path = dir / ("fig1" + p.id + ".svg");
    write_atomic(path, panel_svg(p, fig.a));
    written.push_back(path);
  }
  auto csv = dir / "fig1.csv";
  write_atomic(csv, fig1_csv(fig));
  written.push_back(csv);
  return written;
}

}  // namespace wilton
