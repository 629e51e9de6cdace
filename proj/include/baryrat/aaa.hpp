// AAA: greedy support point selection alternating with a Loewner
// least-squares solve for the barycentric weights.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "baryrat/core.hpp"
#include "baryrat/spectra.hpp"

namespace baryrat {

struct AaaConfig {
  double rel_tol = 1e-13;  // relative to max|F|
  std::size_t max_support = 100;
  bool cleanup_enabled = true;
  double cleanup_tol = 1e-13;
  bool record_trace = false;  // keep the per-iteration error snapshots
};

struct AaaResult {
  BarycentricRational approximant;
  /// Sample index of each support point of `approximant`, in the same order.
  std::vector<std::size_t> support_indices;
  std::vector<double> error_history;
  double final_error = 0.0;
  bool converged = false;
  /// Filled when record_trace is set: errors |F_i - r(Z_i)| at all samples
  /// before each greedy step (the step's choice is the maximizer).
  std::vector<std::vector<double>> error_snapshots;
};

namespace detail {

struct WeightedFit {
  BarycentricRational rational;
  std::vector<std::size_t> kept;  // sample indices surviving the zero-weight prune
};

/// Least-squares weights for a fixed support set.
inline WeightedFit fit_support(const SampleSet& samples, const std::vector<std::size_t>& support) {
  ComplexVector w;
  if (support.size() == 1) {
    w = ComplexVector::Ones(1);
  } else {
    w = min_singular_vector(build_loewner(samples, support).entries);
  }
  std::vector<Complex> s, f, wv;
  const double wmax = w.cwiseAbs().maxCoeff();
  WeightedFit out;
  for (std::size_t c = 0; c < support.size(); ++c) {
    const auto wc = w(static_cast<Eigen::Index>(c));
    if (std::abs(wc) <= weight_drop_tol * wmax) continue;
    s.push_back(samples.point(support[c]));
    f.push_back(samples.value(support[c]));
    wv.push_back(wc);
    out.kept.push_back(support[c]);
  }
  out.rational = BarycentricRational(std::move(s), std::move(f), std::move(wv));
  return out;
}

inline std::vector<double> abs_errors(const BarycentricRational& r, const SampleSet& samples) {
  std::vector<double> e(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    e[i] = std::abs(samples.value(i) - eval(r, samples.point(i)));
    if (std::isnan(e[i])) e[i] = std::numeric_limits<double>::infinity();
  }
  return e;
}

inline double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace detail

/// Spurious-pole removal: poles whose residue is below
/// tol * max|F| * (distance from the pole to the nearest sample) lose their
/// nearest support point, and the weights are solved once more.
inline AaaResult cleanup(const AaaResult& result, const SampleSet& samples, double tol) {
  const auto& r = result.approximant;
  if (r.size() < 2) return result;
  const auto pole_list = poles(r);
  if (pole_list.empty()) return result;
  const auto res = residues(r, pole_list).values;
  const double scale = samples.scale();

  std::vector<bool> drop(r.size(), false);
  bool any = false;
  for (std::size_t k = 0; k < pole_list.size(); ++k) {
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& z : samples.points()) dist = std::min(dist, std::abs(z - pole_list[k]));
    if (!(std::abs(res[k]) < tol * scale * dist)) continue;
    std::size_t nearest = 0;
    for (std::size_t j = 1; j < r.size(); ++j)
      if (std::abs(r.support_points()[j] - pole_list[k]) <
          std::abs(r.support_points()[nearest] - pole_list[k]))
        nearest = j;
    drop[nearest] = true;
    any = true;
  }
  if (!any) return result;

  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (!drop[j]) support.push_back(result.support_indices[j]);
  if (support.empty()) support.push_back(result.support_indices.front());

  AaaResult out = result;
  auto fit = detail::fit_support(samples, support);
  out.approximant = std::move(fit.rational);
  out.support_indices = std::move(fit.kept);
  out.final_error = max_error(out.approximant, samples);
  return out;
}

/// Adaptive AAA fit of the sample data.
inline AaaResult aaa_fit(const SampleSet& samples, const AaaConfig& config = {}) {
  detail::require(config.rel_tol > 0.0, "rel_tol must be positive");
  detail::require(config.max_support >= 1, "max_support must be at least 1");
  const std::size_t n = samples.size();
  const double threshold = config.rel_tol * samples.scale();

  AaaResult result;
  if (n == 1) {
    result.approximant = BarycentricRational({samples.point(0)}, {samples.value(0)}, {1.0});
    result.support_indices = {0};
    result.error_history = {0.0};
    result.converged = true;
    return result;
  }

  // Errors against the trivial approximant mean(F) drive the first choice.
  Complex mean = 0.0;
  for (const auto& f : samples.values()) mean += f;
  mean /= static_cast<double>(n);
  std::vector<double> err(n);
  for (std::size_t i = 0; i < n; ++i) err[i] = std::abs(samples.value(i) - mean);

  std::vector<bool> is_support(n, false);
  std::vector<std::size_t> support;
  detail::WeightedFit fit;
  while (true) {
    if (config.record_trace) result.error_snapshots.push_back(err);
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_support[i]) continue;
      if (pick == n || err[i] > err[pick]) pick = i;
    }
    is_support[pick] = true;
    support.push_back(pick);

    fit = detail::fit_support(samples, support);
    err = detail::abs_errors(fit.rational, samples);
    const double max_err = detail::max_of(err);
    result.error_history.push_back(max_err);
    if (max_err <= threshold) break;
    if (support.size() >= config.max_support || support.size() + 1 >= n) break;
  }

  result.approximant = std::move(fit.rational);
  result.support_indices = std::move(fit.kept);
  result.final_error = max_error(result.approximant, samples);
  if (config.cleanup_enabled) result = cleanup(result, samples, config.cleanup_tol);
  result.converged = result.final_error <= threshold;
  return result;
}

}  // namespace baryrat
