// Barycentric rational functions and the dense kernels shared by the fitting
// algorithms: evaluation, Loewner matrix assembly and the smallest right
// singular vector solve.
//
//            sum_j w_j f_j / (z - s_j)
//   r(z) = -----------------------------
//              sum_j w_j / (z - s_j)
//
// A quotient with m support points represents a rational function of type
// (m-1, m-1). Unlike a p/q representation it stays well conditioned when the
// poles and zeros cluster near a singularity.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace baryrat {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Value returned by eval() at a pole of the quotient.
inline Complex pole_sentinel() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {inf, inf};
}

inline bool is_pole_sentinel(Complex z) { return std::isinf(z.real()) && std::isinf(z.imag()); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

namespace detail {

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

/// Index list [0, n) without the entries flagged in `excluded`.
inline std::vector<std::size_t> complement(std::size_t n, const std::vector<bool>& excluded) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!excluded[i]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Paired sample points Z and function values F.
class SampleSet {
public:
  SampleSet() = default;

  SampleSet(std::vector<Complex> points, std::vector<Complex> values)
      : points_(std::move(points)), values_(std::move(values)) {
    validate();
  }

  template <class F>
  static SampleSet from_function(std::vector<Complex> points, F&& f) {
    std::vector<Complex> values;
    values.reserve(points.size());
    for (const auto& z : points) values.push_back(Complex(f(z)));
    return SampleSet(std::move(points), std::move(values));
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Complex>& points() const { return points_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex point(std::size_t i) const { return points_[i]; }
  Complex value(std::size_t i) const { return values_[i]; }

  /// max_i |F_i|
  double scale() const { return detail::max_abs(values_); }

private:
  void validate() const {
    detail::require(!points_.empty(), "sample set is empty");
    detail::require(points_.size() == values_.size(),
                    "sample points and values differ in length");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!is_finite(points_[i]))
        throw std::invalid_argument("sample point " + std::to_string(i) + " is not finite");
      if (!is_finite(values_[i]))
        throw std::invalid_argument("sample value " + std::to_string(i) + " is not finite");
    }
    auto order = sorted_order();
    for (std::size_t k = 1; k < order.size(); ++k)
      if (points_[order[k]] == points_[order[k - 1]])
        throw std::invalid_argument("duplicate sample point at rows " +
                                    std::to_string(std::min(order[k], order[k - 1])) + " and " +
                                    std::to_string(std::max(order[k], order[k - 1])));
  }

  std::vector<std::size_t> sorted_order() const {
    std::vector<std::size_t> order(points_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& za = points_[a];
      const auto& zb = points_[b];
      return za.real() < zb.real() || (za.real() == zb.real() && za.imag() < zb.imag());
    });
    return order;
  }

  std::vector<Complex> points_;
  std::vector<Complex> values_;
};

/// Relative threshold below which a barycentric weight counts as zero.
inline constexpr double weight_drop_tol = 1e-13;

class BarycentricRational {
public:
  BarycentricRational() = default;

  /// Entries whose weight is below weight_drop_tol * max|w| are pruned.
  BarycentricRational(std::vector<Complex> support_points, std::vector<Complex> support_values,
                      std::vector<Complex> weights) {
    detail::require(support_points.size() == support_values.size() &&
                        support_points.size() == weights.size(),
                    "support points, values and weights differ in length");
    detail::require(!support_points.empty(), "barycentric rational needs a support point");
    for (std::size_t j = 0; j < weights.size(); ++j)
      detail::require(is_finite(support_points[j]) && is_finite(support_values[j]) &&
                          is_finite(weights[j]),
                      "non-finite barycentric data");
    const double wmax = detail::max_abs(weights);
    detail::require(wmax > 0.0, "all barycentric weights are zero");
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (std::abs(weights[j]) <= weight_drop_tol * wmax) continue;
      support_points_.push_back(support_points[j]);
      support_values_.push_back(support_values[j]);
      weights_.push_back(weights[j]);
    }
    for (std::size_t j = 0; j < support_points_.size(); ++j)
      for (std::size_t k = j + 1; k < support_points_.size(); ++k)
        detail::require(support_points_[j] != support_points_[k],
                        "support points must be distinct");
  }

  /// Constant function c (one support point at `at`).
  static BarycentricRational constant(Complex c, Complex at = 0.0) {
    return BarycentricRational({at}, {c}, {1.0});
  }

  std::size_t size() const { return weights_.size(); }
  const std::vector<Complex>& support_points() const { return support_points_; }
  const std::vector<Complex>& support_values() const { return support_values_; }
  const std::vector<Complex>& weights() const { return weights_; }

  Complex operator()(Complex z) const;

  /// Numerator and denominator sums of the quotient at z (z not a support point).
  std::pair<Complex, Complex> sums(Complex z) const {
    Complex n = 0.0, d = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      const Complex c = weights_[j] / (z - support_points_[j]);
      n += c * support_values_[j];
      d += c;
    }
    return {n, d};
  }

private:
  std::vector<Complex> support_points_;
  std::vector<Complex> support_values_;
  std::vector<Complex> weights_;
};

/// r(z). Exact support point matches return the support value; poles return pole_sentinel().
inline Complex eval(const BarycentricRational& r, Complex z) {
  const auto& s = r.support_points();
  for (std::size_t j = 0; j < s.size(); ++j)
    if (z == s[j]) return r.support_values()[j];
  // A single term is the constant f_1; skip the quotient and its rounding.
  if (s.size() == 1 && r.weights()[0] != 0.0) return r.support_values()[0];
  const auto [n, d] = r.sums(z);
  if (d == 0.0) return n == 0.0 ? Complex(std::nan(""), std::nan("")) : pole_sentinel();
  Complex value = n / d;
  if (!is_finite(value)) {
    // 1/(z - s_j) overflowed: z is numerically on top of a support point.
    std::size_t nearest = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
      if (std::abs(z - s[j]) < std::abs(z - s[nearest])) nearest = j;
    value = r.support_values()[nearest];
  }
  return value;
}

inline Complex BarycentricRational::operator()(Complex z) const { return eval(*this, z); }

inline std::vector<Complex> eval(const BarycentricRational& r, std::span<const Complex> zs) {
  std::vector<Complex> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(eval(r, z));
  return out;
}

/// max_i |F_i - r(Z_i)| over the whole sample set.
inline double max_error(const BarycentricRational& r, const SampleSet& samples) {
  double err = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    err = std::max(err, std::abs(samples.value(i) - eval(r, samples.point(i))));
  return err;
}

struct LoewnerMatrix {
  ComplexMatrix entries;
  std::vector<std::size_t> row_indices;  // sample index owning each row
  std::vector<Complex> row_points;
  std::vector<std::size_t> column_indices;  // sample index of each support point
};

/// Rows: samples not in `support`, in sample order. Columns: `support`, in the given order.
inline LoewnerMatrix build_loewner(const SampleSet& samples,
                                   std::span<const std::size_t> support) {
  const std::size_t n = samples.size();
  detail::require(!support.empty(), "support index list is empty");
  std::vector<bool> is_support(n, false);
  for (auto j : support) {
    detail::require(j < n, "support index out of range");
    detail::require(!is_support[j], "support indices must be distinct");
    is_support[j] = true;
  }
  detail::require(support.size() < n, "support indices cover every sample");

  LoewnerMatrix a;
  a.row_indices = detail::complement(n, is_support);
  a.column_indices.assign(support.begin(), support.end());
  a.entries.resize(static_cast<Eigen::Index>(a.row_indices.size()),
                   static_cast<Eigen::Index>(support.size()));
  a.row_points.reserve(a.row_indices.size());
  for (std::size_t r = 0; r < a.row_indices.size(); ++r) {
    const auto i = a.row_indices[r];
    a.row_points.push_back(samples.point(i));
    for (std::size_t c = 0; c < support.size(); ++c) {
      const auto j = support[c];
      a.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          (samples.value(i) - samples.value(j)) / (samples.point(i) - samples.point(j));
    }
  }
  return a;
}

namespace detail {

/// Rotate v so that its first entry of largest modulus is real and positive.
inline void normalize_phase(ComplexVector& v) {
  Eigen::Index lead = 0;
  double best = -1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double a = std::abs(v(k));
    if (a > best * (1.0 + 1e-12)) {
      best = a;
      lead = k;
    }
  }
  if (best > 0.0) v *= std::conj(v(lead)) / best;
}

}  // namespace detail

/// Unit right singular vector for the smallest singular value of `a`.
///
/// A matrix with fewer rows than columns is treated as padded with zero rows.
/// When the smallest singular value is repeated (to rounding), the result is
/// the normalized projection of the coordinate vector e_k onto that singular
/// subspace, for the first k of largest projection; the first entry of largest
/// modulus is then rotated to be real positive.
inline ComplexVector min_singular_vector(const ComplexMatrix& a) {
  const Eigen::Index cols = a.cols();
  detail::require(cols > 0, "empty matrix");
  if (!a.allFinite()) throw std::domain_error("matrix has non-finite entries");

  // Reduce a tall matrix to its square triangular factor first: same right
  // singular vectors, much cheaper SVD.
  ComplexMatrix square;
  if (a.rows() > cols) {
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    square = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    square = ComplexMatrix::Zero(cols, cols);
    square.topRows(a.rows()) = a;
  }

  ComplexMatrix v;
  Eigen::VectorXd sigma;
  if (cols <= 16) {
    Eigen::JacobiSVD<ComplexMatrix> svd(square, Eigen::ComputeFullV);
    v = svd.matrixV();
    sigma = svd.singularValues();
  } else {
    Eigen::BDCSVD<ComplexMatrix> svd(square, Eigen::ComputeFullV);
    v = svd.matrixV();
    sigma = svd.singularValues();
  }

  const double smin = sigma(cols - 1);
  const double tie = 4.0 * std::numeric_limits<double>::epsilon() * std::max(sigma(0), 0.0);
  Eigen::Index first = cols - 1;
  while (first > 0 && sigma(first - 1) <= smin + tie) --first;

  ComplexVector w;
  if (first == cols - 1) {
    w = v.col(cols - 1);
  } else {
    const auto basis = v.rightCols(cols - first);
    // Projection of e_k onto span(basis) is basis * basis.row(k)^H.
    const Eigen::VectorXd proj_norm = basis.rowwise().norm();
    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < cols; ++i)
      if (proj_norm(i) > proj_norm(k) * (1.0 + 1e-12)) k = i;
    w = basis * basis.row(k).adjoint();
  }
  w.normalize();
  detail::normalize_phase(w);
  return w;
}

}  // namespace baryrat
