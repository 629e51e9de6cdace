// File formats: CSV sample/geometry/grid files and JSON approximants and
// harmonic solutions. All number output is locale independent.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "baryrat/core.hpp"
#include "baryrat/geometry.hpp"
#include "baryrat/laplace.hpp"

namespace baryrat::io {

/// Raised for malformed input files; the message names the offending row.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, '.' decimal point, "inf"/"-inf"/"nan" for non-finite values.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

/// Numeric rows of a CSV stream; a first line without any numeric field is taken as a header.
/// Each row carries its 1-based line number.
struct CsvRow {
  std::size_t line;
  std::vector<double> values;
};

inline std::vector<CsvRow> read_numeric_csv(std::istream& in, std::size_t min_cols,
                                            std::size_t max_cols) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body);
    CsvRow row{line_no, {}};
    bool ok = fields.size() >= min_cols && fields.size() <= max_cols;
    for (std::size_t k = 0; ok && k < fields.size(); ++k) {
      double v = 0.0;
      ok = parse_double(fields[k], v);
      row.values.push_back(v);
    }
    if (!ok) {
      // A header has no numeric field at all; "1,2,3,x" is a bad row.
      const bool header = line_no == 1 && std::none_of(fields.begin(), fields.end(), [](const auto& f) {
                            double v = 0.0;
                            return parse_double(f, v);
                          });
      if (header) continue;
      throw FormatError("malformed CSV at line " + std::to_string(line_no) + ": expected " +
                        std::to_string(min_cols) +
                        (min_cols == max_cols ? "" : "-" + std::to_string(max_cols)) +
                        " numeric columns");
    }
    for (std::size_t k = 0; k < row.values.size(); ++k)
      if (!std::isfinite(row.values[k]))
        throw FormatError("non-finite value at line " + std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

inline nlohmann::json to_json(const std::vector<Complex>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

inline std::vector<Complex> complex_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw FormatError(std::string("missing array '") + key + "'");
  std::vector<Complex> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw FormatError(std::string("entries of '") + key + "' must be [re, im] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace detail

/// Samples from CSV rows re(z), im(z), re(f), im(f). Duplicate points are
/// reported by line number.
inline SampleSet read_samples_csv(std::istream& in) {
  const auto rows = detail::read_numeric_csv(in, 4, 4);
  if (rows.empty()) throw FormatError("no sample rows");
  std::vector<Complex> z, f;
  std::vector<std::size_t> order(rows.size());
  for (const auto& r : rows) {
    z.emplace_back(r.values[0], r.values[1]);
    f.emplace_back(r.values[2], r.values[3]);
  }
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return z[a].real() < z[b].real() || (z[a].real() == z[b].real() && z[a].imag() < z[b].imag());
  });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (z[order[k]] == z[order[k - 1]]) {
      const auto first = std::min(order[k], order[k - 1]);
      const auto second = std::max(order[k], order[k - 1]);
      throw FormatError("duplicate sample point at line " + std::to_string(rows[second].line) +
                        " (same z as line " + std::to_string(rows[first].line) + ")");
    }
  return SampleSet(std::move(z), std::move(f));
}

inline SampleSet read_samples_csv(const std::string& path) {
  auto in = detail::open_input(path);
  return read_samples_csv(in);
}

inline void write_samples_csv(std::ostream& out, const SampleSet& s) {
  out << "re_z,im_z,re_f,im_f\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << format_double(s.point(i).real()) << ',' << format_double(s.point(i).imag()) << ','
        << format_double(s.value(i).real()) << ',' << format_double(s.value(i).imag()) << '\n';
}

/// Boundary vertices from CSV rows re, im[, corner]. Rows flagged 1 in the
/// third column are corners; without any flags the curve is a polygon unless
/// `smooth` is requested.
inline BoundaryCurve read_geometry_csv(std::istream& in, bool smooth = false) {
  const auto rows = detail::read_numeric_csv(in, 2, 3);
  std::vector<Complex> v;
  std::vector<std::size_t> corners;
  bool flagged = false;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    v.emplace_back(rows[k].values[0], rows[k].values[1]);
    if (rows[k].values.size() == 3) {
      flagged = true;
      if (rows[k].values[2] != 0.0) corners.push_back(k);
    }
  }
  try {
    if (flagged) return BoundaryCurve(std::move(v), std::move(corners));
    return smooth ? BoundaryCurve::smooth(std::move(v)) : BoundaryCurve::polygon(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid geometry: ") + e.what());
  }
}

inline BoundaryCurve read_geometry_csv(const std::string& path, bool smooth = false) {
  auto in = detail::open_input(path);
  return read_geometry_csv(in, smooth);
}

inline nlohmann::json to_json(const BarycentricRational& r) {
  return {{"support_points", detail::to_json(r.support_points())},
          {"support_values", detail::to_json(r.support_values())},
          {"weights", detail::to_json(r.weights())}};
}

inline BarycentricRational rational_from_json(const nlohmann::json& j) {
  try {
    return BarycentricRational(detail::complex_list(j, "support_points"),
                               detail::complex_list(j, "support_values"),
                               detail::complex_list(j, "weights"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid approximant: ") + e.what());
  }
}

inline void write_rational(const std::string& path, const BarycentricRational& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(r).dump(2) << '\n';
}

inline BarycentricRational read_rational(const std::string& path) {
  auto in = detail::open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("malformed JSON in " + path + ": " + e.what());
  }
  return rational_from_json(j);
}

inline nlohmann::json to_json(const HarmonicSolution& s) {
  const auto& h = s.basis.hessenberg();
  auto hrows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < h.cols(); ++k) row.push_back({h(i, k).real(), h(i, k).imag()});
    hrows.push_back(row);
  }
  return {{"exterior_poles", detail::to_json(s.exterior_poles)},
          {"coefficients", s.coefficients},
          {"poly_degree", s.poly_degree},
          {"boundary_error", s.boundary_error},
          {"training_error", s.training_error},
          {"pole_scales", s.pole_scales},
          {"conjugate_offset", s.conjugate_offset},
          {"basis",
           {{"center", {s.basis.center().real(), s.basis.center().imag()}},
            {"radius", s.basis.radius()},
            {"hessenberg", hrows}}}};
}

inline HarmonicSolution harmonic_from_json(const nlohmann::json& j) {
  try {
    HarmonicSolution s;
    s.exterior_poles = detail::complex_list(j, "exterior_poles");
    s.coefficients = j.at("coefficients").get<std::vector<double>>();
    s.poly_degree = j.at("poly_degree").get<std::size_t>();
    s.boundary_error = j.at("boundary_error").get<double>();
    s.training_error = j.value("training_error", s.boundary_error);
    s.pole_scales = j.at("pole_scales").get<std::vector<double>>();
    s.conjugate_offset = j.at("conjugate_offset").get<double>();
    const auto& b = j.at("basis");
    const auto c = b.at("center").get<std::vector<double>>();
    const auto& rows = b.at("hessenberg");
    ComplexMatrix h(static_cast<Eigen::Index>(s.poly_degree + 1),
                    static_cast<Eigen::Index>(s.poly_degree));
    if (rows.size() != s.poly_degree + 1) throw FormatError("hessenberg has the wrong shape");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != s.poly_degree) throw FormatError("hessenberg has the wrong shape");
      for (std::size_t k = 0; k < s.poly_degree; ++k)
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            Complex(rows[i][k][0].get<double>(), rows[i][k][1].get<double>());
    }
    s.basis = ArnoldiBasis(Complex(c.at(0), c.at(1)), b.at("radius").get<double>(), std::move(h));
    if (s.pole_scales.size() != s.exterior_poles.size() ||
        s.coefficients.size() != 2 * s.exterior_poles.size() + 2 * s.poly_degree + 1)
      throw FormatError("coefficient count does not match poles and degree");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid harmonic solution: ") + e.what());
  }
}

/// Rectangular evaluation grid [re_min, re_max] x [im_min, im_max].
struct GridSpec {
  double re_min = 0.0, re_max = 1.0, im_min = 0.0, im_max = 1.0;
  std::size_t nx = 2, ny = 2;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max) || nx < 2 || ny < 2)
      throw std::invalid_argument("grid needs re_min < re_max, im_min < im_max, nx, ny >= 2");
  }

  /// Row-major: the real part varies fastest.
  Complex point(std::size_t ix, std::size_t iy) const {
    const double x = re_min + (re_max - re_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
    const double y = im_min + (im_max - im_min) * static_cast<double>(iy) / static_cast<double>(ny - 1);
    return {x, y};
  }
};

/// "re_min,re_max,im_min,im_max,nx,ny"
inline GridSpec parse_grid(std::string_view text) {
  const auto fields = detail::split(text);
  if (fields.size() != 6) throw std::invalid_argument("grid spec needs 6 comma-separated fields");
  double v[6];
  for (std::size_t k = 0; k < 6; ++k)
    if (!detail::parse_double(fields[k], v[k]))
      throw std::invalid_argument("grid spec field " + std::to_string(k + 1) + " is not a number");
  for (std::size_t k = 4; k < 6; ++k)
    if (v[k] < 0 || v[k] != std::floor(v[k]))
      throw std::invalid_argument("grid sizes must be non-negative integers");
  GridSpec g{v[0], v[1], v[2], v[3], static_cast<std::size_t>(v[4]), static_cast<std::size_t>(v[5])};
  g.validate();
  return g;
}

/// Phase angle in (-pi, pi].
inline double phase(Complex w) {
  const double a = std::arg(w);
  return a == -std::numbers::pi ? std::numbers::pi : a;
}

/// Rows re z, im z, arg r(z), log10|r(z)|. At poles the modulus column is
/// "inf" and the phase "nan".
inline void write_phase_portrait(std::ostream& out, const BarycentricRational& r, const GridSpec& grid) {
  grid.validate();
  out << "re_z,im_z,arg_r,log10_abs_r\n";
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const Complex z = grid.point(ix, iy);
      const Complex w = eval(r, z);
      const bool pole = is_pole_sentinel(w);
      const double ph = pole ? std::numeric_limits<double>::quiet_NaN() : phase(w);
      const double lg = pole ? std::numeric_limits<double>::infinity() : std::log10(std::abs(w));
      out << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(ph)
          << ',' << format_double(lg) << '\n';
    }
}

}  // namespace baryrat::io
