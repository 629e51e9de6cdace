// Closed planar boundary curves: sampling with corner clustering and
// winding-number containment tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "baryrat/core.hpp"

namespace baryrat {

/// A closed, counterclockwise, simply connected boundary.
///
/// Vertices listed in corner_indices are corners; the boundary between two
/// consecutive corners is the polyline through the intermediate vertices. A
/// curve without corners is smooth: its vertices are read as equispaced
/// samples z(t_k), t_k = k/N, of a closed curve, reconstructed by
/// trigonometric interpolation.
class BoundaryCurve {
public:
  BoundaryCurve(std::vector<Complex> vertices, std::vector<std::size_t> corner_indices)
      : vertices_(std::move(vertices)), corners_(std::move(corner_indices)) {
    const std::size_t n = vertices_.size();
    detail::require(n >= 3, "boundary needs at least 3 vertices");
    for (std::size_t k = 0; k < n; ++k) {
      detail::require(is_finite(vertices_[k]), "non-finite boundary vertex");
      if (vertices_[k] == vertices_[(k + 1) % n])
        throw std::invalid_argument("degenerate boundary segment at vertex " + std::to_string(k));
    }
    std::sort(corners_.begin(), corners_.end());
    corners_.erase(std::unique(corners_.begin(), corners_.end()), corners_.end());
    for (auto c : corners_) detail::require(c < n, "corner index out of range");
    if (!corners_.empty()) {
      outline_ = vertices_;
    } else {
      build_fourier();
      const std::size_t dense = std::max<std::size_t>(8 * n, 2048);
      outline_.reserve(dense);
      for (std::size_t k = 0; k < dense; ++k)
        outline_.push_back(point_at(static_cast<double>(k) / static_cast<double>(dense)));
    }
    double area2 = 0.0;
    for (std::size_t k = 0; k < outline_.size(); ++k) {
      const auto a = outline_[k];
      const auto b = outline_[(k + 1) % outline_.size()];
      area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    detail::require(area2 > 0.0, "boundary must be traced counterclockwise");
    for (const auto& a : outline_)
      for (const auto& b : outline_) diameter_ = std::max(diameter_, std::abs(a - b));
  }

  /// Polygon: every vertex is a corner.
  static BoundaryCurve polygon(std::vector<Complex> vertices) {
    std::vector<std::size_t> corners(vertices.size());
    for (std::size_t k = 0; k < corners.size(); ++k) corners[k] = k;
    return BoundaryCurve(std::move(vertices), std::move(corners));
  }

  static BoundaryCurve smooth(std::vector<Complex> vertices) {
    return BoundaryCurve(std::move(vertices), {});
  }

  /// Smooth curve z(theta) = rho(theta) e^{i theta} sampled at n angles.
  template <class Radius>
  static BoundaryCurve polar(Radius&& rho, std::size_t n) {
    std::vector<Complex> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      v.push_back(rho(t) * std::polar(1.0, t));
    }
    return smooth(std::move(v));
  }

  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<std::size_t>& corner_indices() const { return corners_; }
  bool closed() const { return true; }
  bool has_corners() const { return !corners_.empty(); }
  double diameter() const { return diameter_; }

  /// Polyline used for containment and distance queries.
  const std::vector<Complex>& outline() const { return outline_; }

  /// Point of a smooth curve at parameter t in [0, 1).
  Complex point_at(double t) const { return fourier_sum(t, false); }
  /// dz/dt of a smooth curve.
  Complex tangent_at(double t) const { return fourier_sum(t, true); }

private:
  void build_fourier() {
    const std::size_t n = vertices_.size();
    coeffs_.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      Complex c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) /
                           static_cast<double>(n);
        c += vertices_[j] * std::polar(1.0, ang);
      }
      coeffs_[k] = c / static_cast<double>(n);
    }
  }

  Complex fourier_sum(double t, bool derivative) const {
    detail::require(!coeffs_.empty(), "curve has no smooth parametrization");
    const auto n = static_cast<long>(coeffs_.size());
    Complex z = 0.0;
    for (long k = 0; k < n; ++k) {
      // Symmetric frequency range; an even-length Nyquist term is split in half.
      long freq = k <= n / 2 ? k : k - n;
      auto term = [&](long f, Complex c) {
        const double w = 2.0 * std::numbers::pi * static_cast<double>(f);
        Complex e = std::polar(1.0, w * t);
        return derivative ? c * Complex(0.0, w) * e : c * e;
      };
      if (n % 2 == 0 && k == n / 2)
        z += 0.5 * (term(freq, coeffs_[k]) + term(-freq, coeffs_[k]));
      else
        z += term(freq, coeffs_[k]);
    }
    return z;
  }

  std::vector<Complex> vertices_;
  std::vector<std::size_t> corners_;
  std::vector<Complex> coeffs_;
  std::vector<Complex> outline_;
  double diameter_ = 0.0;
};

/// Points along one boundary side at fractions u in (0, 1). With clustering,
/// the distances to each end follow the ladder 0.5 exp(-sigma (sqrt(K+1) - sqrt(k))),
/// k = 1..K, mirrored about the midpoint.
inline std::vector<double> side_fractions(std::size_t n_interior, bool cluster, double sigma = 4.0) {
  std::vector<double> u;
  u.reserve(n_interior);
  if (!cluster) {
    for (std::size_t k = 1; k <= n_interior; ++k)
      u.push_back(static_cast<double>(k) / static_cast<double>(n_interior + 1));
    return u;
  }
  const std::size_t half = n_interior / 2;
  const double top = std::sqrt(static_cast<double>(half + 1));
  // The innermost point sits at least e^{-30} (about 1e-13) of the side away
  // from the corner so that distinct samples stay distinct in double precision.
  constexpr double max_depth = 30.0;
  if (half > 0) sigma = std::min(sigma, max_depth / std::max(top - 1.0, 1e-300));
  std::vector<double> d;
  for (std::size_t k = 1; k <= half; ++k)
    d.push_back(0.5 * std::exp(-sigma * (top - std::sqrt(static_cast<double>(k)))));
  for (double x : d) u.push_back(x);
  if (n_interior % 2 == 1) u.push_back(0.5);
  for (auto it = d.rbegin(); it != d.rend(); ++it) u.push_back(1.0 - *it);
  return u;
}

/// Boundary sample points. A smooth curve gets n points uniform in its
/// parameter. A curve with corners gets, per side, the starting corner followed
/// by n - 1 interior points (clustered toward both corners when requested).
inline std::vector<Complex> sample_boundary(const BoundaryCurve& curve, std::size_t n_per_side,
                                            bool cluster, double sigma = 4.0) {
  detail::require(n_per_side >= 4, "need at least 4 samples per side");
  std::vector<Complex> pts;
  if (!curve.has_corners()) {
    pts.reserve(n_per_side);
    for (std::size_t k = 0; k < n_per_side; ++k)
      pts.push_back(curve.point_at(static_cast<double>(k) / static_cast<double>(n_per_side)));
    return pts;
  }
  const auto& v = curve.vertices();
  const auto& corners = curve.corner_indices();
  const std::size_t nv = v.size();
  const auto fractions = side_fractions(n_per_side - 1, cluster, sigma);
  for (std::size_t c = 0; c < corners.size(); ++c) {
    const std::size_t from = corners[c];
    const std::size_t to = corners[(c + 1) % corners.size()];
    std::vector<Complex> path{v[from]};
    for (std::size_t k = (from + 1) % nv;; k = (k + 1) % nv) {
      path.push_back(v[k]);
      if (k == to) break;
    }
    std::vector<double> arc{0.0};
    for (std::size_t k = 1; k < path.size(); ++k)
      arc.push_back(arc.back() + std::abs(path[k] - path[k - 1]));
    const double length = arc.back();
    if (!(length > 0.0)) throw std::invalid_argument("degenerate boundary side");
    pts.push_back(path.front());
    std::size_t seg = 1;
    for (double u : fractions) {
      const double s = u * length;
      while (seg + 1 < arc.size() && arc[seg] < s) ++seg;
      const double t = (s - arc[seg - 1]) / (arc[seg] - arc[seg - 1]);
      pts.push_back(path[seg - 1] + t * (path[seg] - path[seg - 1]));
    }
  }
  return pts;
}

enum class Containment { inside, outside, on_boundary };

namespace detail {

inline double segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

inline int polyline_winding(const std::vector<Complex>& poly, Complex z) {
  double total = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k)
    total += std::arg((poly[(k + 1) % poly.size()] - z) / (poly[k] - z));
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace detail

/// Distance from z to the curve (to its outline for polygons; refined onto the
/// smooth parametrization otherwise).
inline double distance_to_curve(const BoundaryCurve& curve, Complex z) {
  const auto& poly = curve.outline();
  const std::size_t n = poly.size();
  std::size_t best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double d = detail::segment_distance(z, poly[k], poly[(k + 1) % n]);
    if (d < dist) {
      dist = d;
      best = k;
    }
  }
  if (curve.has_corners()) return dist;
  // Golden-section search for the nearest parameter around the closest chord.
  const double h = 1.0 / static_cast<double>(n);
  double lo = (static_cast<double>(best) - 1.0) * h;
  double hi = (static_cast<double>(best) + 2.0) * h;
  auto f = [&](double t) { return std::abs(curve.point_at(t) - z); };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  // Chords cut inside the curve, so the polyline distance is not a bound here.
  return std::min(f1, f2);
}

/// Winding-number classification; points within 1e-12 * diameter of the
/// curve are reported as on_boundary.
inline Containment classify(const BoundaryCurve& curve, Complex z) {
  const double near = 1e-12 * curve.diameter();
  if (distance_to_curve(curve, z) <= near) return Containment::on_boundary;
  if (!curve.has_corners()) {
    // Close to a smooth curve the chord polyline can put z on the wrong side;
    // decide by the side of the nearest point's tangent instead.
    const auto& poly = curve.outline();
    const double h = 1.0 / static_cast<double>(poly.size());
    const double chord = std::abs(poly[1] - poly[0]);
    double chord_dist = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const double d = detail::segment_distance(z, poly[k], poly[(k + 1) % poly.size()]);
      if (d < chord_dist) {
        chord_dist = d;
        best = k;
      }
    }
    if (chord_dist < chord) {
      double t_best = static_cast<double>(best) * h;
      double d_best = std::abs(curve.point_at(t_best) - z);
      for (int s = -200; s <= 400; ++s) {
        const double t = (static_cast<double>(best) + s / 200.0) * h;
        const double d = std::abs(curve.point_at(t) - z);
        if (d < d_best) {
          d_best = d;
          t_best = t;
        }
      }
      const Complex offset = z - curve.point_at(t_best);
      const double side = (std::conj(curve.tangent_at(t_best)) * offset).imag();
      return side > 0.0 ? Containment::inside : Containment::outside;
    }
  }
  return detail::polyline_winding(curve.outline(), z) == 1 ? Containment::inside
                                                           : Containment::outside;
}

/// True iff the curve winds once around z (false near the curve).
inline bool inside(const BoundaryCurve& curve, Complex z) {
  return classify(curve, z) == Containment::inside;
}

}  // namespace baryrat
