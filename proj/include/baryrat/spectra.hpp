// Poles, zeros and residues of a barycentric rational.
//
// The finite poles are the finite eigenvalues of the (m+1)x(m+1) arrowhead pencil
//
//        [ 0  w_1 ... w_m ]         [ 0          ]
//   E =  [ 1  s_1         ]    B =  [    1       ]
//        [ :      .       ]         [      .     ]
//        [ 1          s_m ]         [          1 ]
//
// and the zeros come from the same pencil with w_j f_j in the first row. The
// pencil always carries two infinite eigenvalues, which are discarded.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include "baryrat/core.hpp"
#include "baryrat/geometry.hpp"

namespace baryrat {

/// Eigenvalues above this modulus are treated as infinite.
inline constexpr double infinite_eigenvalue_cutoff = 1e13;

namespace detail {

inline std::vector<Complex> arrowhead_eigenvalues(const BarycentricRational& r,
                                                  const std::vector<Complex>& first_row) {
  const std::size_t m = r.size();
  if (m < 2) return {};
  const auto n = static_cast<lapack_int>(m + 1);
  const auto dim = static_cast<std::size_t>(n);
  // Rescale the first row by a power of two so its largest entry is O(1).
  // The eigenvalues do not change, the pencil stays well scaled, and the
  // rescaling is exact, so weights differing by a factor 2^k give identical
  // results.
  double biggest = 0.0;
  for (const auto& x : first_row) biggest = std::max(biggest, std::abs(x));
  if (biggest == 0.0 || !std::isfinite(biggest)) return {};
  const int shift = -std::ilogb(biggest);
  // Column-major storage, as LAPACK expects.
  std::vector<Complex> e(dim * dim, 0.0);
  std::vector<Complex> b(dim * dim, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    e[(j + 1) * dim] = Complex(std::ldexp(first_row[j].real(), shift), std::ldexp(first_row[j].imag(), shift));
    e[j + 1] = 1.0;
    e[(j + 1) * dim + j + 1] = r.support_points()[j];
    b[(j + 1) * dim + j + 1] = 1.0;
  }
  std::vector<Complex> alpha(dim), beta(dim);
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, e.data(), n, b.data(), n,
                                        alpha.data(), beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("generalized eigenvalue solve failed (zggev info " +
                             std::to_string(info) + ")");
  std::vector<Complex> out;
  for (std::size_t k = 0; k < dim; ++k) {
    if (beta[k] == 0.0) continue;
    const Complex lambda = alpha[k] / beta[k];
    if (!is_finite(lambda) || std::abs(lambda) > infinite_eigenvalue_cutoff) continue;
    out.push_back(lambda);
  }
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return out;
}

}  // namespace detail

/// Finite poles, sorted by real then imaginary part. Empty for m = 1.
inline std::vector<Complex> poles(const BarycentricRational& r) {
  return detail::arrowhead_eigenvalues(r, r.weights());
}

/// Finite zeros, sorted by real then imaginary part. Empty for m = 1.
inline std::vector<Complex> zeros(const BarycentricRational& r) {
  std::vector<Complex> row(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) row[j] = r.weights()[j] * r.support_values()[j];
  return detail::arrowhead_eigenvalues(r, row);
}

struct ResidueSet {
  std::vector<Complex> values;
  /// Set for poles closer than 1e-13 (relative) to another pole.
  std::vector<bool> unreliable;

  bool any_unreliable() const {
    return std::any_of(unreliable.begin(), unreliable.end(), [](bool b) { return b; });
  }
};

/// Residues n(p) / d'(p) at simple poles p.
inline ResidueSet residues(const BarycentricRational& r, const std::vector<Complex>& pole_list) {
  ResidueSet out;
  out.values.reserve(pole_list.size());
  out.unreliable.assign(pole_list.size(), false);
  for (std::size_t i = 0; i < pole_list.size(); ++i) {
    const Complex p = pole_list[i];
    Complex n = 0.0, dprime = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      const Complex c = 1.0 / (p - r.support_points()[j]);
      n += r.weights()[j] * r.support_values()[j] * c;
      dprime -= r.weights()[j] * c * c;
    }
    out.values.push_back(n / dprime);
    for (std::size_t k = 0; k < pole_list.size(); ++k) {
      if (k == i) continue;
      const double scale = std::max({std::abs(p), std::abs(pole_list[k]), 1e-300});
      if (std::abs(p - pole_list[k]) <= 1e-13 * scale) out.unreliable[i] = true;
    }
  }
  return out;
}

struct PoleZeroReport {
  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  std::vector<Complex> residues;
  std::vector<bool> unreliable_residues;
};

inline PoleZeroReport pole_zero_report(const BarycentricRational& r) {
  PoleZeroReport rep;
  rep.poles = poles(r);
  rep.zeros = zeros(r);
  auto res = residues(r, rep.poles);
  rep.residues = std::move(res.values);
  rep.unreliable_residues = std::move(res.unreliable);
  return rep;
}

struct PoleSplit {
  std::vector<Complex> inside;
  std::vector<Complex> outside;
  /// Poles within 1e-12 * diameter of the curve; these are also in `outside`.
  std::vector<Complex> near_boundary;
};

/// Partition poles by the winding-number test of `region`.
inline PoleSplit split_poles(const std::vector<Complex>& pole_list, const BoundaryCurve& region) {
  PoleSplit split;
  for (const auto& p : pole_list) {
    switch (classify(region, p)) {
      case Containment::inside:
        split.inside.push_back(p);
        break;
      case Containment::outside:
        split.outside.push_back(p);
        break;
      case Containment::on_boundary:
        split.outside.push_back(p);
        split.near_boundary.push_back(p);
        break;
    }
  }
  return split;
}

}  // namespace baryrat
