// AAA-Lawson: iteratively reweighted least squares that pushes a AAA
// approximant of fixed degree toward the minimax approximation.
//
// Support points are frozen. Numerator and denominator get independent
// coefficients,
//
//   r(z) = sum_j a_j / (z - s_j)  /  sum_j b_j / (z - s_j),
//
// so r no longer interpolates at the support points, which lets the error
// equioscillate. Each step minimizes sum_i lambda_i |a(Z_i) - F_i b(Z_i)|^2
// over unit (a, b), then sets lambda_i <- lambda_i |F_i - r(Z_i)| and
// renormalizes the Lawson weights lambda to sum 1.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "baryrat/core.hpp"

namespace baryrat {

struct LawsonConfig {
  std::size_t max_iters = 20;
  double stagnation_tol = 1e-3;  // relative improvement of the best error over 5 steps
  std::size_t degree = 0;
};

struct LawsonState {
  std::vector<double> sample_weights;
  BarycentricRational current;
  double max_error = 0.0;
};

struct LawsonResult {
  BarycentricRational approximant;  // best iterate seen
  double max_error = 0.0;
  std::vector<LawsonState> history;  // history[0] is the starting approximant
};

namespace detail {

inline std::size_t sample_index_of(const SampleSet& samples, Complex z) {
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples.point(i) == z) return i;
  return samples.size();
}

}  // namespace detail

inline LawsonResult lawson_refine(const SampleSet& samples, const BarycentricRational& start,
                                  const LawsonConfig& config) {
  detail::require(config.max_iters >= 1, "max_iters must be at least 1");
  detail::require(config.stagnation_tol > 0.0, "stagnation_tol must be positive");
  const std::size_t n = samples.size();
  const std::size_t m = start.size();
  if (m + 1 > n)
    throw std::invalid_argument("support size exceeds the number of samples minus one");

  const auto& support = start.support_points();
  // Sample rows that coincide with a support point use the (z - s_j)-scaled
  // residual a_j - F_i b_j.
  std::vector<std::size_t> support_row(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto i = detail::sample_index_of(samples, support[j]);
    if (i < n) support_row[i] = j;
  }

  ComplexMatrix base = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(2 * m));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    if (support_row[i] < m) {
      const auto j = static_cast<Eigen::Index>(support_row[i]);
      base(row, j) = 1.0;
      base(row, static_cast<Eigen::Index>(m) + j) = -samples.value(i);
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Complex c = 1.0 / (samples.point(i) - support[j]);
      base(row, static_cast<Eigen::Index>(j)) = c;
      base(row, static_cast<Eigen::Index>(m + j)) = -samples.value(i) * c;
    }
  }

  auto errors_of = [&](const BarycentricRational& r) {
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = std::abs(samples.value(i) - eval(r, samples.point(i)));
      if (std::isnan(e[i])) e[i] = std::numeric_limits<double>::infinity();
    }
    return e;
  };
  auto max_of = [](const std::vector<double>& e) { return *std::max_element(e.begin(), e.end()); };

  LawsonResult out;
  std::vector<double> lambda(n, 1.0 / static_cast<double>(n));
  auto err = errors_of(start);
  out.approximant = start;
  out.max_error = max_of(err);
  out.history.push_back({lambda, start, out.max_error});

  // Already exact to rounding: nothing to equioscillate.
  if (out.max_error <= 1e3 * std::numeric_limits<double>::epsilon() * samples.scale())
    return out;

  std::vector<double> best_trace{out.max_error};
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    // Lawson update from the current errors.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lambda[i] *= err[i];
      total += lambda[i];
    }
    if (!(total > 0.0) || !std::isfinite(total)) break;
    for (auto& l : lambda) l = std::max(l / total, 1e-300);

    ComplexMatrix a = base;
    for (std::size_t i = 0; i < n; ++i) a.row(static_cast<Eigen::Index>(i)) *= std::sqrt(lambda[i]);
    const ComplexVector c = min_singular_vector(a);

    std::vector<Complex> values(m), weights(m);
    for (std::size_t j = 0; j < m; ++j) {
      weights[j] = c(static_cast<Eigen::Index>(m + j));
      const Complex num = c(static_cast<Eigen::Index>(j));
      values[j] = weights[j] != 0.0 ? num / weights[j] : 0.0;
    }
    BarycentricRational r;
    try {
      r = BarycentricRational(support, values, weights);
    } catch (const std::invalid_argument&) {
      break;  // denominator collapsed
    }
    err = errors_of(r);
    const double e = max_of(err);
    out.history.push_back({lambda, r, e});
    if (e < out.max_error) {
      out.max_error = e;
      out.approximant = r;
    }
    best_trace.push_back(out.max_error);
    const std::size_t k = best_trace.size() - 1;
    if (k >= 5 && best_trace[k - 5] - best_trace[k] < config.stagnation_tol * best_trace[k - 5])
      break;
  }
  return out;
}

/// Winding number about 0 of the closed polygon through `errors`.
inline int winding_number(const std::vector<Complex>& errors) {
  detail::require(!errors.empty(), "empty error curve");
  double total = 0.0;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const Complex a = errors[k];
    const Complex b = errors[(k + 1) % errors.size()];
    if (a == 0.0) throw std::domain_error("error curve passes through 0");
    const double step = std::arg(b / a);
    if (std::abs(step) >= std::numbers::pi * (1.0 - 1e-12))
      throw std::domain_error("error curve undersampled at index " + std::to_string(k));
    total += step;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace baryrat
