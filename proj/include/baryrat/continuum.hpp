// AAA on a real interval treated as a continuum: the sample set is grown
// adaptively instead of being fixed in advance.
//
// Phase 1 is a greedy AAA pass over an evolving test set. It starts from 33
// Chebyshev points; each new support point splits the gap between its
// neighbouring support points and a few fresh test points are evaluated on
// either side, so the test set follows the support points into any clustering
// near a singularity.
//
// Phase 2 polishes: the largest error between test points is located by
// golden-section search, 16 samples clustered exponentially toward it are
// added, and the fit is redone on the enlarged set, until the located maximum
// error stops improving by more than 10% over two rounds.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "baryrat/aaa.hpp"
#include "baryrat/core.hpp"

namespace baryrat {

struct IntervalConfig {
  std::size_t initial_points = 33;
  std::size_t refine_per_side = 3;  // new test points on each side of a new support point
  std::size_t cluster_points = 16;
  std::size_t max_rounds = 6;
  double rel_tol = 1e-13;
};

struct IntervalFit {
  BarycentricRational approximant;
  std::size_t evaluations = 0;
  /// Largest |f - r| found at samples and by the golden-section searches.
  double max_error = 0.0;
  std::vector<double> samples;  // every abscissa at which f was evaluated, sorted
  std::size_t rounds = 0;
};

namespace detail {

class IntervalSampler {
public:
  template <class F>
  explicit IntervalSampler(F& f) : eval_([&f](double x) { return static_cast<double>(f(x)); }) {}

  double operator()(double x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const double y = eval_(x);
    if (!std::isfinite(y))
      throw std::domain_error("function is not finite at x = " + std::to_string(x));
    cache_.emplace(x, y);
    return y;
  }

  std::size_t evaluations() const { return cache_.size(); }
  const std::map<double, double>& cache() const { return cache_; }

  SampleSet sample_set() const {
    std::vector<Complex> z, v;
    for (const auto& [x, y] : cache_) {
      z.emplace_back(x, 0.0);
      v.emplace_back(y, 0.0);
    }
    return SampleSet(std::move(z), std::move(v));
  }

private:
  std::function<double(double)> eval_;
  std::map<double, double> cache_;
};

inline double rational_error(const BarycentricRational& r, double x, double fx) {
  const double e = std::abs(fx - eval(r, Complex(x, 0.0)));
  return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
}

/// Golden-section maximization of |f - r| on [lo, hi]; returns (x, error).
inline std::pair<double, double> locate_max_error(IntervalSampler& f, const BarycentricRational& r,
                                                  double lo, double hi, int iterations = 24) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double e1 = rational_error(r, x1, f(x1)), e2 = rational_error(r, x2, f(x2));
  for (int it = 0; it < iterations && x2 > x1; ++it) {
    if (e1 > e2) {
      hi = x2;
      x2 = x1;
      e2 = e1;
      x1 = hi - g * (hi - lo);
      e1 = rational_error(r, x1, f(x1));
    } else {
      lo = x1;
      x1 = x2;
      e1 = e2;
      x2 = lo + g * (hi - lo);
      e2 = rational_error(r, x2, f(x2));
    }
  }
  return e1 > e2 ? std::pair{x1, e1} : std::pair{x2, e2};
}

/// Worst error over the evaluated set plus golden-section searches in the
/// gaps next to the few worst samples.
inline std::pair<double, double> estimate_max_error(IntervalSampler& f,
                                                    const BarycentricRational& r) {
  std::vector<double> xs;
  std::vector<double> errs;
  for (const auto& [x, y] : f.cache()) {
    xs.push_back(x);
    errs.push_back(rational_error(r, x, y));
  }
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return errs[a] > errs[b]; });
  double best_x = xs[order[0]], best_e = errs[order[0]];
  const std::size_t probes = std::min<std::size_t>(3, order.size());
  for (std::size_t k = 0; k < probes; ++k) {
    const auto i = order[k];
    for (int side : {-1, 1}) {
      const auto jj = static_cast<long>(i) + side;
      if (jj < 0 || jj >= static_cast<long>(xs.size())) continue;
      const double lo = std::min(xs[i], xs[static_cast<std::size_t>(jj)]);
      const double hi = std::max(xs[i], xs[static_cast<std::size_t>(jj)]);
      const auto [x, e] = locate_max_error(f, r, lo, hi);
      if (e > best_e) {
        best_e = e;
        best_x = x;
      }
    }
  }
  return {best_x, best_e};
}

}  // namespace detail

/// Near-best approximation of degree `degree` to f on [a, b].
template <class F>
IntervalFit fit_interval(F&& f, std::size_t degree, double a, double b,
                         const IntervalConfig& config = {}) {
  detail::require(a < b, "interval must satisfy a < b");
  detail::require(config.initial_points >= 2, "need at least 2 initial points");
  detail::IntervalSampler sampler(f);
  const std::size_t max_support = degree + 1;

  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const std::size_t n0 = config.initial_points;
  for (std::size_t k = 0; k < n0; ++k) {
    const double x =
        k == 0 ? b
        : k + 1 == n0
            ? a
            : mid + half * std::cos(std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(n0 - 1));
    sampler(std::abs(x - mid) < 1e-15 * half ? mid : x);
  }

  // Phase 1: greedy pass over the growing test set.
  std::vector<double> support;  // sorted abscissae
  BarycentricRational r;
  double scale = 0.0;
  while (true) {
    SampleSet samples = sampler.sample_set();
    scale = samples.scale();
    std::vector<std::size_t> support_idx;
    std::vector<bool> is_support(samples.size(), false);
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (std::binary_search(support.begin(), support.end(), samples.point(i).real())) {
        support_idx.push_back(i);
        is_support[i] = true;
      }

    std::vector<double> err(samples.size());
    if (support.empty()) {
      Complex mean = 0.0;
      for (const auto& v : samples.values()) mean += v;
      mean /= static_cast<double>(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) err[i] = std::abs(samples.value(i) - mean);
    } else {
      for (std::size_t i = 0; i < samples.size(); ++i)
        err[i] = detail::rational_error(r, samples.point(i).real(), samples.value(i).real());
      if (detail::max_of(err) <= config.rel_tol * scale) break;
    }
    if (support.size() >= max_support || support.size() + 1 >= samples.size()) break;

    std::size_t pick = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (is_support[i]) continue;
      if (pick == samples.size() || err[i] > err[pick]) pick = i;
    }
    const double s = samples.point(pick).real();
    support.insert(std::upper_bound(support.begin(), support.end(), s), s);
    support_idx.push_back(pick);
    std::sort(support_idx.begin(), support_idx.end());

    r = detail::fit_support(samples, support_idx).rational;

    // Fresh test points between the new support point and its neighbours.
    const auto pos = std::lower_bound(support.begin(), support.end(), s);
    const double left = pos == support.begin() ? a : *(pos - 1);
    const double right = pos + 1 == support.end() ? b : *(pos + 1);
    const auto p = static_cast<double>(config.refine_per_side + 1);
    for (std::size_t k = 1; k <= config.refine_per_side; ++k) {
      const double t = static_cast<double>(k) / p;
      if (left < s) sampler(s + t * (left - s));
      if (right > s) sampler(s + t * (right - s));
    }
  }
  if (support.empty()) r = BarycentricRational::constant(sampler.cache().begin()->second);

  // Phase 2: locate the worst error, cluster samples toward it, refit.
  IntervalFit out;
  auto [worst_x, worst_e] = detail::estimate_max_error(sampler, r);
  out.approximant = r;
  out.max_error = worst_e;
  std::vector<double> located{worst_e};
  AaaConfig aaa;
  aaa.rel_tol = config.rel_tol;
  aaa.max_support = max_support;
  aaa.cleanup_enabled = false;
  for (std::size_t round = 0; round < config.max_rounds; ++round) {
    if (worst_e <= config.rel_tol * scale) break;
    // Width of the gap between the samples bracketing the located maximum.
    const auto& cache = sampler.cache();
    auto above = cache.upper_bound(worst_x);
    const double hi = above == cache.end() ? b : above->first;
    const double lo = above == cache.begin() ? a : std::prev(above)->first;
    const double span = std::max(hi - worst_x, worst_x - lo);
    for (std::size_t k = 1; k <= config.cluster_points / 2; ++k) {
      const double d = span * std::exp(-4.0 * std::sqrt(static_cast<double>(k)));
      if (worst_x - d > a) sampler(worst_x - d);
      if (worst_x + d < b) sampler(worst_x + d);
    }
    const auto refit = aaa_fit(sampler.sample_set(), aaa).approximant;
    std::tie(worst_x, worst_e) = detail::estimate_max_error(sampler, refit);
    ++out.rounds;
    located.push_back(worst_e);
    if (worst_e < out.max_error) {
      out.max_error = worst_e;
      out.approximant = refit;
    }
    const std::size_t k = located.size() - 1;
    if (k >= 2 && located[k] > 0.9 * located[k - 2]) break;
  }
  // Later rounds added samples the kept approximant was never checked on.
  out.max_error = std::max(out.max_error, detail::estimate_max_error(sampler, out.approximant).second);
  out.evaluations = sampler.evaluations();
  for (const auto& [x, y] : sampler.cache()) out.samples.push_back(x);
  return out;
}

}  // namespace baryrat
