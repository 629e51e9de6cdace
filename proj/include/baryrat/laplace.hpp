// Laplace Dirichlet problems by rational least squares (AAA-LS).
//
// 1. AAA-fit the boundary data h as complex data on the boundary samples.
// 2. Keep the poles that lie outside the domain.
// 3. Least squares for real coefficients in the basis
//      Re 1/(z - p_j), Im 1/(z - p_j)   (one pair per exterior pole)
//      1, Re q_k(z), Im q_k(z)          (k = 1..poly_degree)
//    where q_k are polynomials orthonormalized on the boundary samples by an
//    Arnoldi recurrence.
//
// The result is the real part of an analytic function, so it is harmonic
// exactly; its imaginary part gives the harmonic conjugate for free.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "baryrat/aaa.hpp"
#include "baryrat/core.hpp"
#include "baryrat/geometry.hpp"
#include "baryrat/spectra.hpp"

namespace baryrat {

struct BoundarySamples {
  std::vector<Complex> points;
  std::vector<double> data;

  template <class H>
  static BoundarySamples from_function(std::vector<Complex> points, H&& h) {
    BoundarySamples s;
    s.data.reserve(points.size());
    for (const auto& z : points) {
      const double v = h(z);
      if (!std::isfinite(v)) throw std::domain_error("boundary data is not finite");
      s.data.push_back(v);
    }
    s.points = std::move(points);
    return s;
  }
};

/// Polynomials q_0 = 1, q_1, ..., q_n in the scaled variable (z - center) / radius,
/// orthonormal (up to the factor sqrt(N)) on the fitting points.
class ArnoldiBasis {
public:
  ArnoldiBasis() = default;
  ArnoldiBasis(Complex center, double radius, ComplexMatrix hessenberg)
      : center_(center), radius_(radius), h_(std::move(hessenberg)) {}

  /// Builds the basis and returns it with its values on `points` (N x (degree+1)).
  static std::pair<ArnoldiBasis, ComplexMatrix> fit(const std::vector<Complex>& points,
                                                    std::size_t degree) {
    const auto n = static_cast<Eigen::Index>(points.size());
    const auto d = static_cast<Eigen::Index>(degree);
    Complex center = 0.0;
    for (const auto& z : points) center += z;
    center /= static_cast<double>(points.size());
    double radius = 0.0;
    for (const auto& z : points) radius = std::max(radius, std::abs(z - center));
    if (!(radius > 0.0)) radius = 1.0;

    ComplexVector zeta(n);
    for (Eigen::Index i = 0; i < n; ++i) zeta(i) = (points[static_cast<std::size_t>(i)] - center) / radius;
    ComplexMatrix q(n, d + 1);
    ComplexMatrix h = ComplexMatrix::Zero(d + 1, d);
    q.col(0).setOnes();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 1; k <= d; ++k) {
      ComplexVector v = zeta.cwiseProduct(q.col(k - 1));
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < k; ++j) {
          const Complex c = q.col(j).dot(v) / static_cast<double>(n);
          v -= c * q.col(j);
          h(j, k - 1) += c;
        }
      }
      h(k, k - 1) = v.norm() / sqrt_n;
      q.col(k) = v / h(k, k - 1);
    }
    return {ArnoldiBasis(center, radius, std::move(h)), std::move(q)};
  }

  std::size_t degree() const { return static_cast<std::size_t>(h_.cols()); }
  Complex center() const { return center_; }
  double radius() const { return radius_; }
  const ComplexMatrix& hessenberg() const { return h_; }

  /// q_0(z), ..., q_n(z).
  ComplexVector eval(Complex z) const {
    const Eigen::Index d = h_.cols();
    ComplexVector q(d + 1);
    q(0) = 1.0;
    const Complex zeta = (z - center_) / radius_;
    for (Eigen::Index k = 1; k <= d; ++k) {
      Complex v = zeta * q(k - 1);
      for (Eigen::Index j = 0; j < k; ++j) v -= h_(j, k - 1) * q(j);
      q(k) = v / h_(k, k - 1);
    }
    return q;
  }

private:
  Complex center_ = 0.0;
  double radius_ = 1.0;
  ComplexMatrix h_;
};

struct HarmonicSolution {
  std::vector<Complex> exterior_poles;
  /// Per pole: (Re, Im) column coefficients; then the constant; then (Re q_k, Im q_k) pairs.
  std::vector<double> coefficients;
  std::size_t poly_degree = 0;
  double boundary_error = 0.0;  // on the validation samples
  double training_error = 0.0;  // on the fitting samples

  /// Column scaling of each pole term: the term is pole_scales[j] / (z - p_j).
  std::vector<double> pole_scales;
  ArnoldiBasis basis;
  /// Subtracted from the imaginary part so the conjugate vanishes at the first boundary sample.
  double conjugate_offset = 0.0;

  std::size_t interior_poles = 0;       // AAA poles discarded as interior
  std::size_t near_boundary_poles = 0;  // AAA poles discarded as too close to the boundary
  std::size_t aaa_support = 0;
};

namespace detail {

/// Analytic function without the conjugate offset.
inline Complex harmonic_analytic_raw(const HarmonicSolution& sol, Complex z) {
  Complex g = 0.0;
  const auto& c = sol.coefficients;
  std::size_t k = 0;
  for (std::size_t j = 0; j < sol.exterior_poles.size(); ++j, k += 2)
    g += Complex(c[k], -c[k + 1]) * (sol.pole_scales[j] / (z - sol.exterior_poles[j]));
  const ComplexVector q = sol.basis.eval(z);
  g += c[k++] * q(0);
  for (Eigen::Index d = 1; d < q.size(); ++d, k += 2) g += Complex(c[k], -c[k + 1]) * q(d);
  return g;
}

}  // namespace detail

/// u + i v with u the solution and v its harmonic conjugate.
inline Complex eval_analytic(const HarmonicSolution& sol, Complex z) {
  return detail::harmonic_analytic_raw(sol, z) - Complex(0.0, sol.conjugate_offset);
}

inline double eval_solution(const HarmonicSolution& sol, Complex z) {
  return eval_analytic(sol, z).real();
}

struct LaplaceConfig {
  double tol = 1e-10;
  std::size_t poly_degree = 10;
  std::size_t n_per_side = 100;
  bool cluster = true;
  /// Relative AAA tolerance for the boundary-data fit; 0 means use `tol`.
  double aaa_tol = 0.0;
  std::size_t max_support = 300;
};

/// Least-squares solve on given fitting samples. `validation` may be empty,
/// in which case boundary_error is the training error.
inline HarmonicSolution solve_dirichlet(const BoundaryCurve& curve, const BoundarySamples& training,
                                        const BoundarySamples& validation,
                                        const LaplaceConfig& config) {
  detail::require(training.points.size() == training.data.size(),
                  "boundary samples and data differ in length");
  detail::require(validation.points.size() == validation.data.size(),
                  "validation samples and data differ in length");
  for (double v : training.data)
    if (!std::isfinite(v)) throw std::domain_error("boundary data is not finite");

  std::vector<Complex> fvals(training.data.begin(), training.data.end());
  const SampleSet samples(training.points, std::move(fvals));
  AaaConfig aaa;
  aaa.rel_tol = config.aaa_tol > 0.0 ? config.aaa_tol : config.tol;
  aaa.max_support = config.max_support;
  const auto fit = aaa_fit(samples, aaa);

  HarmonicSolution sol;
  sol.poly_degree = config.poly_degree;
  sol.aaa_support = fit.approximant.size();
  const auto split = split_poles(poles(fit.approximant), curve);
  sol.interior_poles = split.inside.size();
  for (const auto& p : split.outside) {
    if (std::find(split.near_boundary.begin(), split.near_boundary.end(), p) !=
        split.near_boundary.end())
      continue;
    sol.exterior_poles.push_back(p);
  }
  sol.near_boundary_poles = split.near_boundary.size();
  if (sol.exterior_poles.empty() && config.poly_degree == 0)
    throw std::invalid_argument("no exterior poles and no polynomial part: empty basis");

  const auto& pts = training.points;
  const auto n = static_cast<Eigen::Index>(pts.size());
  for (const auto& p : sol.exterior_poles) {
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& z : pts) dist = std::min(dist, std::abs(z - p));
    sol.pole_scales.push_back(dist);
  }

  auto [basis, q] = ArnoldiBasis::fit(pts, config.poly_degree);
  sol.basis = std::move(basis);

  const auto np = static_cast<Eigen::Index>(sol.exterior_poles.size());
  const auto nd = static_cast<Eigen::Index>(config.poly_degree);
  const Eigen::Index cols = 2 * np + 2 * nd + 1;
  Eigen::MatrixXd a(n, cols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex z = pts[static_cast<std::size_t>(i)];
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < np; ++j) {
      const Complex t = sol.pole_scales[static_cast<std::size_t>(j)] /
                        (z - sol.exterior_poles[static_cast<std::size_t>(j)]);
      a(i, c++) = t.real();
      a(i, c++) = t.imag();
    }
    a(i, c++) = q(i, 0).real();
    for (Eigen::Index k = 1; k <= nd; ++k) {
      a(i, c++) = q(i, k).real();
      a(i, c++) = q(i, k).imag();
    }
    rhs(i) = training.data[static_cast<std::size_t>(i)];
  }
  const bool constant_data = std::all_of(training.data.begin(), training.data.end(),
                                         [&](double v) { return v == training.data.front(); });
  Eigen::VectorXd coef;
  if (constant_data) {
    // Already harmonic. The least-squares route leaves rounding-level
    // coefficients that the polynomial part amplifies away from the domain.
    coef = Eigen::VectorXd::Zero(cols);
    coef(2 * np) = training.data.front() / q(0, 0).real();
  } else {
    coef = a.colPivHouseholderQr().solve(rhs);
  }
  sol.coefficients.assign(coef.data(), coef.data() + coef.size());
  sol.conjugate_offset = detail::harmonic_analytic_raw(sol, pts.front()).imag();

  sol.training_error = (a * coef - rhs).cwiseAbs().maxCoeff();
  if (validation.points.empty()) {
    sol.boundary_error = sol.training_error;
  } else {
    for (std::size_t i = 0; i < validation.points.size(); ++i)
      sol.boundary_error = std::max(
          sol.boundary_error, std::abs(eval_solution(sol, validation.points[i]) - validation.data[i]));
  }
  return sol;
}

/// Samples the curve, solves, and validates on a 3x finer boundary sampling.
template <class H>
HarmonicSolution solve_dirichlet(const BoundaryCurve& curve, H&& h, const LaplaceConfig& config) {
  auto training = BoundarySamples::from_function(
      sample_boundary(curve, config.n_per_side, config.cluster), h);
  auto validation = BoundarySamples::from_function(
      sample_boundary(curve, 3 * config.n_per_side, config.cluster), h);
  return solve_dirichlet(curve, training, validation, config);
}

template <class H>
HarmonicSolution solve_dirichlet(const BoundaryCurve& curve, H&& h, double tol,
                                 std::size_t poly_degree) {
  LaplaceConfig config;
  config.tol = tol;
  config.poly_degree = poly_degree;
  return solve_dirichlet(curve, std::forward<H>(h), config);
}

}  // namespace baryrat
