#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "baryrat/aaa.hpp"
#include "baryrat/spectra.hpp"
#include "baryrat/zeta.hpp"
#include "test_support.hpp"

using baryrat::BarycentricRational;
using baryrat::Complex;
using baryrat::SampleSet;
using testing_support::roots_of_unity;

namespace {

BarycentricRational one_over_z() { return BarycentricRational({1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}); }

BarycentricRational zeta_fit() {
  std::vector<Complex> z;
  for (int k = 0; k < 100; ++k) z.emplace_back(4.0, -50.0 + 100.0 * k / 99.0);
  return baryrat::aaa_fit(SampleSet::from_function(z, baryrat::zeta_truncated)).approximant;
}

BarycentricRational scaled_weights(const BarycentricRational& r, Complex c) {
  auto w = r.weights();
  for (auto& x : w) x *= c;
  return BarycentricRational(r.support_points(), r.support_values(), w);
}

}  // namespace

TEST(Poles, OneOverZHasPoleAtZero) {
  const auto p = baryrat::poles(one_over_z());
  ASSERT_EQ(p.size(), 1u);
  EXPECT_LT(std::abs(p[0]), 1e-15);
}

TEST(Poles, ConstantHasNone) {
  EXPECT_TRUE(baryrat::poles(BarycentricRational::constant(4.0)).empty());
  EXPECT_TRUE(baryrat::zeros(BarycentricRational::constant(4.0)).empty());
}

TEST(Zeros, OneOverZHasNoFiniteZeros) { EXPECT_TRUE(baryrat::zeros(one_over_z()).empty()); }

TEST(Zeros, RecoversZeroOfMobiusMap) {
  const auto s = SampleSet::from_function(roots_of_unity(64),
                                          [](Complex z) { return (z - 3.0) / (z - 2.0); });
  const auto r = baryrat::aaa_fit(s).approximant;
  const auto q = baryrat::zeros(r);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_LT(std::abs(q[0] - 3.0), 1e-12);
}

TEST(Residues, OneOverZ) {
  const auto r = one_over_z();
  const auto res = baryrat::residues(r, baryrat::poles(r));
  ASSERT_EQ(res.values.size(), 1u);
  EXPECT_LT(std::abs(res.values[0] - 1.0), 1e-15);
  EXPECT_FALSE(res.unreliable[0]);
}

TEST(Residues, RecoversResidueFive) {
  const auto s =
      SampleSet::from_function(roots_of_unity(64), [](Complex z) { return 5.0 / (z - 2.0); });
  const auto r = baryrat::aaa_fit(s).approximant;
  const auto rep = baryrat::pole_zero_report(r);
  ASSERT_EQ(rep.poles.size(), 1u);
  EXPECT_LT(std::abs(rep.poles[0] - 2.0), 1e-12);
  EXPECT_LT(std::abs(rep.residues[0] - 5.0) / 5.0, 1e-12);
}

TEST(Residues, NearMultiplePolesAreFlagged) {
  const auto r = one_over_z();
  const auto res = baryrat::residues(r, {Complex(0.5), Complex(0.5 + 1e-16)});
  ASSERT_EQ(res.unreliable.size(), 2u);
  EXPECT_TRUE(res.unreliable[0]);
  EXPECT_TRUE(res.unreliable[1]);
}

TEST(Spectra, ZetaPoleNearOne) {
  const auto p = baryrat::poles(zeta_fit());
  const Complex reported(1.0000000069, 0.0000000009);
  double best = 1e300;
  for (const auto& x : p) best = std::min(best, std::abs(x - reported));
  EXPECT_LT(best, 1e-10);
}

TEST(Spectra, ZetaFirstTwoZeros) {
  const auto q = baryrat::zeros(zeta_fit());
  const Complex reported[] = {{0.4999999987, 14.1347251412}, {0.4999999987, 21.0220396409}};
  for (const auto& target : reported) {
    double best = 1e300;
    for (const auto& x : q) best = std::min(best, std::abs(x - target));
    EXPECT_LT(best, 1e-9) << target;
  }
}

TEST(SplitPoles, UnitCircleExamples) {
  const auto circle = testing_support::unit_circle();
  auto s = baryrat::split_poles({Complex(0.0)}, circle);
  EXPECT_EQ(s.inside.size(), 1u);
  EXPECT_TRUE(s.outside.empty());
  s = baryrat::split_poles({Complex(2.0)}, circle);
  EXPECT_TRUE(s.inside.empty());
  EXPECT_EQ(s.outside.size(), 1u);

  const std::vector<Complex> mixed{0.5, 3.0, Complex(0.0, -2.0)};
  s = baryrat::split_poles(mixed, circle);
  std::vector<Complex> inside_oracle, outside_oracle;
  for (const auto& p : mixed) (std::abs(p) < 1.0 ? inside_oracle : outside_oracle).push_back(p);
  EXPECT_EQ(s.inside, inside_oracle);
  EXPECT_EQ(s.outside, outside_oracle);
}

TEST(SplitPoles, PoleOnBoundaryIsNearBoundary) {
  const auto square = testing_support::unit_square();
  const auto s = baryrat::split_poles({Complex(1.0, 0.2)}, square);
  EXPECT_TRUE(s.inside.empty());
  EXPECT_EQ(s.near_boundary.size(), 1u);
}

TEST(SpectraProperty, CountsBoundedByDegree) {
  testing_support::Gen g(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = static_cast<std::size_t>(g.integer(1, 15));
    const auto r = g.rational(m);
    EXPECT_LE(baryrat::poles(r).size(), m - 1);
    EXPECT_LE(baryrat::zeros(r).size(), m - 1);
  }
}

TEST(SpectraProperty, PolesAreRootsOfDenominator) {
  testing_support::Gen g(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = g.rational(static_cast<std::size_t>(g.integer(2, 12)));
    for (const auto& p : baryrat::poles(r)) {
      // |r| blows up next to a pole.
      const Complex z = p + 1e-9 * (1.0 + std::abs(p));
      EXPECT_GT(std::abs(r(z)), 1e3) << p;
    }
  }
}

TEST(SpectraProperty, LocalExpansionMatchesResidue) {
  testing_support::Gen g(47);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto r = g.rational(static_cast<std::size_t>(g.integer(2, 10)));
    const auto rep = baryrat::pole_zero_report(r);
    for (std::size_t k = 0; k < rep.poles.size(); ++k) {
      const Complex p = rep.poles[k];
      double sep = 1e300;
      for (std::size_t j = 0; j < rep.poles.size(); ++j)
        if (j != k) sep = std::min(sep, std::abs(rep.poles[j] - p));
      for (const auto& q : rep.zeros) sep = std::min(sep, std::abs(q - p));
      // The one-sided check is off by about |z - p| times the regular part,
      // which neighbouring poles and zeros inflate; only isolated poles qualify.
      if (sep < 0.25 * (1.0 + std::abs(p))) continue;
      const Complex z = p + 1e-7 * (1.0 + std::abs(p)) * std::polar(1.0, g.uniform(-3.14, 3.14));
      const Complex rho = rep.residues[k];
      EXPECT_LE(std::abs((z - p) * r(z) - rho), 1e-6 * std::abs(rho));
      ++checked;
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(SpectraProperty, WeightScaleInvariance) {
  testing_support::Gen g(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = g.rational(static_cast<std::size_t>(g.integer(2, 10)));
    Complex c = g.normal_complex();
    while (std::abs(c) < 0.1) c = g.normal_complex();
    const auto rs = scaled_weights(r, c);
    auto a = baryrat::pole_zero_report(r);
    auto b = baryrat::pole_zero_report(rs);
    ASSERT_EQ(a.poles.size(), b.poles.size());
    ASSERT_EQ(a.zeros.size(), b.zeros.size());
    for (std::size_t k = 0; k < a.poles.size(); ++k) {
      // Match by nearest pole.
      std::size_t best = 0;
      for (std::size_t j = 1; j < b.poles.size(); ++j)
        if (std::abs(b.poles[j] - a.poles[k]) < std::abs(b.poles[best] - a.poles[k])) best = j;
      EXPECT_LE(std::abs(b.poles[best] - a.poles[k]), 1e-12 * std::max(1.0, std::abs(a.poles[k])));
      EXPECT_LE(std::abs(b.residues[best] - a.residues[k]), 1e-12 * std::max(1.0, std::abs(a.residues[k])));
    }
    EXPECT_LE(testing_support::set_distance(a.zeros, b.zeros),
              1e-12 * std::max(1.0, baryrat::detail::max_abs(a.zeros)));
  }
}

TEST(SpectraProperty, ProductFormMatchesEvaluation) {
  testing_support::Gen g(59);
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto f = testing_support::PartialFractions::random(g, d);
    const auto s = SampleSet::from_function(roots_of_unity(8 * d + 8), f);
    const auto r = baryrat::aaa_fit(s).approximant;
    const auto rep = baryrat::pole_zero_report(r);
    // r(z) / r(z0) from the factored form.
    const Complex z0(0.1, 0.05);
    const Complex r0 = r(z0);
    for (int k = 0; k < 50; ++k) {
      const Complex z = g.in_disk(1.0);
      Complex ratio = 1.0;
      for (const auto& q : rep.zeros) ratio *= (z - q) / (z0 - q);
      for (const auto& p : rep.poles) ratio *= (z0 - p) / (z - p);
      EXPECT_LT(testing_support::rel_diff(r0 * ratio, r(z)), 1e-8) << "degree " << d;
    }
  }
}
