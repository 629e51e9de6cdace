// Batch command-line front end.
//
// Exit codes: 0 success (fit: converged), 2 fit stopped at the degree cap,
// 1 invalid input or usage.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "baryrat/baryrat.hpp"
#include "baryrat/io.hpp"

namespace {

using baryrat::Complex;
using baryrat::io::format_double;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kDegreeCapped = 2;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string complex_csv(Complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

/// Writes to `path`, or to stdout when the path is empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

int cmd_fit(const std::string& input, double tol, int max_degree, bool cleanup,
            const std::string& output) {
  const auto samples = baryrat::io::read_samples_csv(input);
  baryrat::AaaConfig config;
  config.rel_tol = tol;
  config.max_support = static_cast<std::size_t>(max_degree) + 1;
  config.cleanup_enabled = cleanup;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = baryrat::aaa_fit(samples, config);
  const double elapsed = seconds_since(t0);

  std::cout << "iteration,support_points,max_error\n";
  for (std::size_t k = 0; k < result.error_history.size(); ++k)
    std::cout << k + 1 << ',' << k + 1 << ',' << format_double(result.error_history[k]) << '\n';
  const double scale = samples.scale();
  std::cout << "# support_points " << result.approximant.size() << '\n'
            << "# degree " << result.approximant.size() - 1 << '\n'
            << "# final_error " << format_double(result.final_error) << '\n'
            << "# relative_error " << format_double(scale > 0 ? result.final_error / scale : 0.0)
            << '\n'
            << "# converged " << (result.converged ? "yes" : "no") << '\n'
            << "# seconds " << format_double(elapsed) << '\n';
  if (!output.empty()) baryrat::io::write_rational(output, result.approximant);
  return result.converged ? kOk : kDegreeCapped;
}

int cmd_polezero(const std::string& input, const std::string& region_path) {
  const auto r = baryrat::io::read_rational(input);
  std::optional<baryrat::BoundaryCurve> region;
  if (!region_path.empty()) region = baryrat::io::read_geometry_csv(region_path);
  const auto rep = baryrat::pole_zero_report(r);

  auto location = [&](Complex z) -> std::string {
    switch (baryrat::classify(*region, z)) {
      case baryrat::Containment::inside:
        return "inside";
      case baryrat::Containment::outside:
        return "outside";
      case baryrat::Containment::on_boundary:
        return "boundary";
    }
    return "outside";
  };
  std::cout << "kind,re,im,residue_re,residue_im" << (region ? ",location" : "") << '\n';
  for (std::size_t k = 0; k < rep.poles.size(); ++k) {
    std::cout << "pole," << complex_csv(rep.poles[k]) << ',' << complex_csv(rep.residues[k]);
    if (region) std::cout << ',' << location(rep.poles[k]);
    std::cout << '\n';
  }
  for (const auto& z : rep.zeros) {
    std::cout << "zero," << complex_csv(z) << ",,";
    if (region) std::cout << ',' << location(z);
    std::cout << '\n';
  }
  if (std::any_of(rep.unreliable_residues.begin(), rep.unreliable_residues.end(),
                  [](bool b) { return b; }))
    std::cerr << "warning: near-multiple poles; their residues are unreliable\n";
  return kOk;
}

int cmd_minimax(const std::string& input, int degree, int max_iters, const std::string& output,
                const std::string& curve_path) {
  if (degree < 0) throw std::invalid_argument("--degree must be non-negative");
  const auto samples = baryrat::io::read_samples_csv(input);
  baryrat::AaaConfig aaa;
  aaa.max_support = static_cast<std::size_t>(degree) + 1;
  aaa.cleanup_enabled = false;
  const auto start = baryrat::aaa_fit(samples, aaa);

  baryrat::LawsonConfig lawson;
  lawson.degree = static_cast<std::size_t>(degree);
  lawson.max_iters = static_cast<std::size_t>(max_iters);
  const auto refined = start.approximant.size() + 1 <= samples.size()
                           ? baryrat::lawson_refine(samples, start.approximant, lawson)
                           : baryrat::LawsonResult{start.approximant, start.final_error, {}};

  std::vector<Complex> errors;
  for (std::size_t i = 0; i < samples.size(); ++i)
    errors.push_back(samples.value(i) - refined.approximant(samples.point(i)));
  with_output(curve_path, [&](std::ostream& out) {
    out << "arg_z,abs_e,re_e,im_e\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
      out << format_double(baryrat::io::phase(samples.point(i))) << ','
          << format_double(std::abs(errors[i])) << ',' << complex_csv(errors[i]) << '\n';
  });

  std::string winding = "undefined";
  const double scale = samples.scale();
  if (refined.max_error > 1e-13 * std::max(scale, 1e-300)) {
    try {
      winding = std::to_string(baryrat::winding_number(errors));
    } catch (const std::domain_error&) {
      winding = "undefined";
    }
  }
  std::cout << "# start_error " << format_double(start.final_error) << '\n'
            << "# max_error " << format_double(refined.max_error) << '\n'
            << "# lawson_iterations "
            << (refined.history.empty() ? 0 : refined.history.size() - 1) << '\n'
            << "# winding " << winding << '\n';
  if (!output.empty()) baryrat::io::write_rational(output, refined.approximant);
  return kOk;
}

int cmd_phaseportrait(const std::string& input, const std::string& grid_text,
                      const std::string& output) {
  const auto r = baryrat::io::read_rational(input);
  const auto grid = baryrat::io::parse_grid(grid_text);
  with_output(output, [&](std::ostream& out) { baryrat::io::write_phase_portrait(out, r, grid); });
  return kOk;
}

double smooth_data(Complex z) { return std::exp(z.real()) * std::sin(2.0 * z.imag()); }

int cmd_laplace(const std::string& geometry, const std::string& data, bool smooth_curve,
                bool cluster, int n_per_side, int poly_degree, double tol,
                const std::string& output, const std::string& grid_text,
                const std::string& grid_out, unsigned seed) {
  const auto curve = baryrat::io::read_geometry_csv(geometry, smooth_curve);
  baryrat::LaplaceConfig config;
  config.tol = tol;
  config.poly_degree = static_cast<std::size_t>(poly_degree);
  if (n_per_side <= 0) n_per_side = curve.has_corners() ? 100 : 300;
  config.n_per_side = static_cast<std::size_t>(n_per_side);
  config.cluster = cluster;

  const auto t0 = std::chrono::steady_clock::now();
  baryrat::HarmonicSolution sol;
  std::vector<double> boundary_values;
  if (data == "constant" || data == "re_z2" || data == "smooth") {
    auto h = [&](Complex z) -> double {
      if (data == "constant") return 1.0;
      if (data == "re_z2") return (z * z).real();
      return smooth_data(z);
    };
    sol = baryrat::solve_dirichlet(curve, h, config);
    for (const auto& z : baryrat::sample_boundary(curve, config.n_per_side, cluster))
      boundary_values.push_back(h(z));
  } else {
    // Custom data: rows re, im, h are the fitting samples themselves.
    auto in = baryrat::io::detail::open_input(data);
    const auto rows = baryrat::io::detail::read_numeric_csv(in, 3, 3);
    baryrat::BoundarySamples samples;
    for (const auto& row : rows) {
      samples.points.emplace_back(row.values[0], row.values[1]);
      samples.data.push_back(row.values[2]);
    }
    if (samples.points.size() < 4) throw baryrat::io::FormatError("need at least 4 data rows");
    sol = baryrat::solve_dirichlet(curve, samples, {}, config);
    boundary_values = samples.data;
  }
  const double elapsed = seconds_since(t0);

  std::cout << "# exterior_poles " << sol.exterior_poles.size() << '\n'
            << "# interior_poles_discarded " << sol.interior_poles << '\n'
            << "# near_boundary_poles_discarded " << sol.near_boundary_poles << '\n'
            << "# aaa_support_points " << sol.aaa_support << '\n'
            << "# boundary_error " << format_double(sol.boundary_error) << '\n'
            << "# training_error " << format_double(sol.training_error) << '\n'
            << "# within_tol " << (sol.boundary_error <= tol ? "yes" : "no") << '\n'
            << "# seconds " << format_double(elapsed) << '\n';

  // Maximum-principle spot check on random interior points.
  {
    double lo = 1e300, hi = -1e300;
    for (const auto& z : curve.outline()) {
      lo = std::min(lo, z.real());
      hi = std::max(hi, z.real());
    }
    double ylo = 1e300, yhi = -1e300;
    for (const auto& z : curve.outline()) {
      ylo = std::min(ylo, z.imag());
      yhi = std::max(yhi, z.imag());
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(lo, hi), uy(ylo, yhi);
    double umin = 1e300, umax = -1e300;
    for (int k = 0, found = 0; k < 20000 && found < 1000; ++k) {
      const Complex z(ux(rng), uy(rng));
      if (!baryrat::inside(curve, z)) continue;
      ++found;
      const double u = baryrat::eval_solution(sol, z);
      umin = std::min(umin, u);
      umax = std::max(umax, u);
    }
    const auto [hmin, hmax] = std::minmax_element(boundary_values.begin(), boundary_values.end());
    std::cout << "# interior_range " << format_double(umin) << ' ' << format_double(umax) << '\n'
              << "# boundary_data_range " << format_double(*hmin) << ' ' << format_double(*hmax)
              << '\n';
  }

  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << baryrat::io::to_json(sol).dump(2) << '\n';
  }
  if (!grid_text.empty()) {
    const auto grid = baryrat::io::parse_grid(grid_text);
    with_output(grid_out, [&](std::ostream& out) {
      out << "re_z,im_z,u,v,inside\n";
      for (std::size_t iy = 0; iy < grid.ny; ++iy)
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
          const Complex z = grid.point(ix, iy);
          const Complex g = baryrat::eval_analytic(sol, z);
          out << complex_csv(z) << ',' << format_double(g.real()) << ',' << format_double(g.imag())
              << ',' << (baryrat::inside(curve, z) ? 1 : 0) << '\n';
        }
    });
  }
  return kOk;
}

int cmd_zeta_demo(const std::string& output, const std::string& samples_out,
                  const std::string& grid_text, const std::string& grid_out) {
  std::vector<Complex> z;
  for (int k = 0; k < 100; ++k) z.emplace_back(4.0, -50.0 + 100.0 * k / 99.0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto samples = baryrat::SampleSet::from_function(z, baryrat::zeta_truncated);
  const auto fit = baryrat::aaa_fit(samples);
  const double elapsed = seconds_since(t0);
  const auto rep = baryrat::pole_zero_report(fit.approximant);

  std::cout << "# degree " << fit.approximant.size() - 1 << '\n'
            << "# final_error " << format_double(fit.final_error) << '\n'
            << "# seconds " << format_double(elapsed) << '\n';
  std::cout << "kind,re,im\n";
  for (const auto& p : rep.poles)
    if (std::abs(p - 1.0) < 0.5) std::cout << "pole_near_1," << complex_csv(p) << '\n';
  std::vector<Complex> upper;
  for (const auto& q : rep.zeros)
    if (q.imag() > 1.0 && std::abs(q.real() - 0.5) < 0.25 && q.imag() < 50.0) upper.push_back(q);
  std::sort(upper.begin(), upper.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  for (const auto& q : upper) std::cout << "critical_line_zero," << complex_csv(q) << '\n';

  if (!output.empty()) baryrat::io::write_rational(output, fit.approximant);
  if (!samples_out.empty())
    with_output(samples_out, [&](std::ostream& out) { baryrat::io::write_samples_csv(out, samples); });
  if (!grid_text.empty()) {
    const auto grid = baryrat::io::parse_grid(grid_text);
    with_output(grid_out, [&](std::ostream& out) {
      baryrat::io::write_phase_portrait(out, fit.approximant, grid);
    });
  }
  return kOk;
}

int cmd_abs_demo(int degree, const std::string& output) {
  if (degree < 0) throw std::invalid_argument("--degree must be non-negative");
  const auto t0 = std::chrono::steady_clock::now();
  const auto fit =
      baryrat::fit_interval([](double x) { return std::abs(x); }, static_cast<std::size_t>(degree),
                            -1.0, 1.0);
  const double elapsed = seconds_since(t0);
  double err = 0.0;
  constexpr int n = 100000;
  for (int k = 0; k <= n; ++k) {
    const double x = -1.0 + 2.0 * k / n;
    err = std::max(err, std::abs(std::abs(x) - fit.approximant(Complex(x, 0.0)).real()));
  }
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& p : baryrat::poles(fit.approximant)) closest = std::min(closest, std::abs(p));
  std::cout << "# degree " << fit.approximant.size() - 1 << '\n'
            << "# evaluations " << fit.evaluations << '\n'
            << "# located_max_error " << format_double(fit.max_error) << '\n'
            << "# grid_max_error " << format_double(std::max(err, 0.0)) << '\n'
            << "# closest_pole_to_0 " << format_double(closest) << '\n'
            << "# seconds " << format_double(elapsed) << '\n';
  if (!output.empty()) baryrat::io::write_rational(output, fit.approximant);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational approximation by the AAA algorithm family"};
  app.require_subcommand(1);
  unsigned seed = 1;
  app.add_option("--seed", seed, "Seed for randomized checks");

  std::string input, output, region, grid, grid_out, curve_out, data = "constant", samples_out;
  double tol = 1e-13;
  int max_degree = 99, degree = 4, max_iters = 20, poly_degree = 10, n_per_side = 0;
  bool no_cleanup = false, cluster = true, smooth = false;

  auto* fit = app.add_subcommand("fit", "AAA fit of CSV samples (re z, im z, re f, im f)");
  fit->add_option("input", input, "Sample CSV")->required();
  fit->add_option("--tol", tol, "Relative tolerance")->capture_default_str();
  fit->add_option("--max-degree", max_degree, "Degree cap")->capture_default_str();
  fit->add_flag("--no-cleanup", no_cleanup, "Skip spurious pole removal");
  fit->add_option("-o,--output", output, "Approximant JSON");

  auto* minimax = app.add_subcommand("minimax", "AAA-Lawson minimax refinement");
  minimax->add_option("input", input, "Sample CSV, ordered along a closed contour")->required();
  minimax->add_option("--degree", degree, "Degree n")->required();
  minimax->add_option("--max-iters", max_iters, "Lawson iterations")->capture_default_str();
  minimax->add_option("-o,--output", output, "Approximant JSON");
  minimax->add_option("--curve", curve_out, "Error curve CSV (default: stdout)");

  auto* polezero = app.add_subcommand("polezero", "Poles, zeros and residues of an approximant");
  polezero->add_option("input", input, "Approximant JSON")->required();
  polezero->add_option("--region", region, "Geometry CSV for inside/outside classification");

  auto* phase = app.add_subcommand("phaseportrait", "Phase portrait grid of an approximant");
  phase->add_option("input", input, "Approximant JSON")->required();
  phase->add_option("--grid", grid, "re_min,re_max,im_min,im_max,nx,ny")->required();
  phase->add_option("-o,--output", output, "CSV output (default: stdout)");

  auto* laplace = app.add_subcommand("laplace", "Dirichlet Laplace solve by rational least squares");
  laplace->add_option("geometry", input, "Boundary vertex CSV (re, im[, corner])")->required();
  laplace->add_option("--seed", seed, "Seed for the interior range sampling");
  laplace->add_option("--data", data, "constant | re_z2 | smooth | CSV of re, im, h")
      ->capture_default_str();
  laplace->add_flag("--cluster,!--no-cluster", cluster, "Cluster samples toward corners");
  laplace->add_flag("--smooth", smooth, "Treat unflagged vertices as a smooth closed curve");
  laplace->add_option("--n-per-side", n_per_side,
                      "Samples per side (default 100; 300 in total on a smooth curve)");
  laplace->add_option("--poly-degree", poly_degree, "Polynomial part degree")->capture_default_str();
  laplace->add_option("--tol", tol, "Target boundary error");
  laplace->add_option("-o,--output", output, "Solution JSON");
  laplace->add_option("--grid", grid, "Evaluation grid re_min,re_max,im_min,im_max,nx,ny");
  laplace->add_option("--grid-out", grid_out, "Grid CSV (default: stdout)");

  auto* zeta = app.add_subcommand("zeta-demo", "Rational fit of truncated zeta on Re z = 4");
  zeta->add_option("-o,--output", output, "Approximant JSON");
  zeta->add_option("--samples", samples_out, "Write the sample CSV");
  zeta->add_option("--grid", grid, "Phase portrait grid");
  zeta->add_option("--grid-out", grid_out, "Phase portrait CSV (default: stdout)");

  auto* absdemo = app.add_subcommand("abs-demo", "Continuum fit of |x| on [-1, 1]");
  absdemo->add_option("--degree", degree, "Degree")->capture_default_str();
  absdemo->add_option("-o,--output", output, "Approximant JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*fit) return cmd_fit(input, tol, max_degree, !no_cleanup, output);
    if (*minimax) return cmd_minimax(input, degree, max_iters, output, curve_out);
    if (*polezero) return cmd_polezero(input, region);
    if (*phase) return cmd_phaseportrait(input, grid, output);
    if (*laplace) {
      if (laplace->count("--tol") == 0) tol = 1e-10;
      return cmd_laplace(input, data, smooth, cluster, n_per_side, poly_degree, tol, output, grid,
                         grid_out, seed);
    }
    if (*zeta) return cmd_zeta_demo(output, samples_out, grid, grid_out);
    if (*absdemo) {
      if (absdemo->count("--degree") == 0) degree = 80;
      return cmd_abs_demo(degree, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
