#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "honeypol/errors.hpp"
#include "honeypol/theta.hpp"
#include "oracles.hpp"

using namespace honeypol;

namespace {

oracle::Basis to_oracle(const Lattice2 &l) {
  const Mat2 &b = l.basis();
  return {b.m11, b.m12, b.m21, b.m22};
}

std::vector<oracle::P> shifts_of(const PeriodicConfiguration &c) {
  std::vector<oracle::P> out;
  for (const Vec2 &s : c.shifts()) out.push_back({s.x, s.y});
  return out;
}

long double brute(const PeriodicConfiguration &c, const Vec2 &z, double alpha, int radius) {
  return oracle::gaussian_sum(to_oracle(c.lattice()), shifts_of(c), {z.x, z.y}, alpha, radius);
}

}  // namespace

TEST(Theta, ParameterAndBudgetValidation) {
  EXPECT_THROW(GaussianParam{0.0}, DomainError);
  EXPECT_THROW(GaussianParam{-1.0}, DomainError);
  EXPECT_THROW(GaussianParam{std::nan("")}, DomainError);
  EXPECT_THROW(GaussianParam{INFINITY}, DomainError);
  EXPECT_NO_THROW(GaussianParam{1e-6});
  EXPECT_THROW((SumBudget{0.0, 8, 4096}.validate()), DomainError);
  EXPECT_THROW((SumBudget{1e-10, 0, 4096}.validate()), DomainError);
  EXPECT_THROW((SumBudget{1e-10, 64, 8}.validate()), DomainError);
}

TEST(Theta, DirectSumMatchesBruteForce) {
  const PeriodicConfiguration hex = PeriodicConfiguration::single(hexagonal_lattice(1.0));
  const PeriodicConfiguration honey = honeycomb(1.0);
  for (double alpha : {0.3, 1.0, 3.0}) {
    for (const Vec2 &z : {Vec2{0, 0}, Vec2{0.2, -0.7}, Vec2{3.1, 2.2}}) {
      const SumValue v = gaussian_config_sum(hex, z, GaussianParam(alpha));
      EXPECT_NEAR(v.value, static_cast<double>(brute(hex, z, alpha, 40)), 1e-12);
      const SumValue w = gaussian_config_sum(honey, z, GaussianParam(alpha));
      EXPECT_NEAR(w.value, static_cast<double>(brute(honey, z, alpha, 40)), 1e-12);
    }
  }
}

// Z^2 at z = 0 is theta_3(e^{-pi alpha})^2, and for alpha = 1 that is
// sqrt(pi) / Gamma(3/4)^2.
TEST(Theta, SquareLatticeClosedForm) {
  const PeriodicConfiguration z2 = PeriodicConfiguration::single(Lattice2::from_basis({1, 0, 0, 1}));
  const double g = std::tgamma(0.75);
  const double expect = std::sqrt(std::numbers::pi) / (g * g);
  const SumValue v = gaussian_config_sum(z2, {0, 0}, GaussianParam(1.0), {1e-14, 8, 4096});
  EXPECT_NEAR(v.value, expect, 1e-14);
}

TEST(Theta, HexFormSumMatchesLatticeSumAtDeepHole) {
  const Lattice2 l = hexagonal_lattice(1.0);
  const PeriodicConfiguration hex = PeriodicConfiguration::single(l);
  const Vec2 z0 = deep_holes(l)[0].coords;
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const SumValue a = gaussian_config_sum(hex, z0, GaussianParam(alpha));
    const SumValue b = hex_form_sum(GaussianParam(alpha), {Rational(1, 3), Rational(1, 3)});
    EXPECT_NEAR(a.value, b.value, 1e-13 * std::max(1.0, a.value));
    // (2/3, 2/3) is the same orbit
    const SumValue c = hex_form_sum(GaussianParam(alpha), {Rational(2, 3), Rational(2, 3)});
    EXPECT_NEAR(b.value, c.value, 1e-14);
  }
}

TEST(ThetaProperty, PoissonDualityRandomProbes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> log_alpha(std::log(0.2), std::log(5.0));
  const std::vector<PeriodicConfiguration> configs{
      PeriodicConfiguration::single(hexagonal_lattice(1.0)), honeycomb(2.0),
      PeriodicConfiguration::create(Lattice2::from_basis({1.1, 0.3, -0.2, 0.8}),
                                    {Vec2{0, 0}, Vec2{0.3, 0.1}, Vec2{-0.2, 0.4}})};
  for (int trial = 0; trial < 60; ++trial) {
    const PeriodicConfiguration &c = configs[static_cast<std::size_t>(trial) % configs.size()];
    const Vec2 z{coord(rng), coord(rng)};
    const GaussianParam a(std::exp(log_alpha(rng)));
    const SumValue d = gaussian_config_sum(c, z, a);
    const DualSumValue p = gaussian_dual_sum(c, z, a);
    const double bound = d.tail_bound + p.real.tail_bound + d.rounding_bound +
                         p.real.rounding_bound + 1e-15 * d.value;
    EXPECT_LE(std::abs(d.value - p.real.value), bound) << "trial " << trial;
    EXPECT_LT(std::abs(p.imaginary), 1e-12);
  }
}

TEST(ThetaProperty, PositiveAndLatticePeriodic) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-4, 4);
  const PeriodicConfiguration c = honeycomb(1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Vec2 z{coord(rng), coord(rng)};
    const Vec2 t = c.lattice().to_cartesian({static_cast<double>(k(rng)), static_cast<double>(k(rng))});
    const GaussianParam a(0.5 + trial * 0.1);
    const double v = gaussian_config_sum(c, z, a).value;
    EXPECT_GT(v, 0.0);
    EXPECT_NEAR(v, gaussian_config_sum(c, z + t, a).value, 1e-13 * v + 1e-300);
  }
}

// At the deep hole the sum is nonincreasing in alpha once alpha is past the
// range where the mean field dominates; checked on a grid only.
TEST(ThetaProperty, MonotoneInAlphaAtDeepHole) {
  const Lattice2 l = hexagonal_lattice(1.0);
  const PeriodicConfiguration hex = PeriodicConfiguration::single(l);
  const Vec2 z0 = deep_holes(l)[0].coords;
  double prev = INFINITY;
  for (double alpha = 0.25; alpha <= 20.0; alpha *= 1.1) {
    const double v = gaussian_config_sum(hex, z0, GaussianParam(alpha)).value;
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(ThetaProperty, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> alpha(0.3, 4.0);
  const PeriodicConfiguration c = honeycomb(1.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const Vec2 z{coord(rng), coord(rng)};
    const GaussianParam a(alpha(rng));
    const SumBudget tight{1e-15, 8, 4096};
    const Vec2 g = gaussian_sum_gradient(c, z, a, tight);
    auto f = [&](Vec2 p) { return gaussian_config_sum(c, p, a, tight).value; };
    const Vec2 fd{(f(z + Vec2{h, 0}) - f(z - Vec2{h, 0})) / (2 * h),
                  (f(z + Vec2{0, h}) - f(z - Vec2{0, h})) / (2 * h)};
    EXPECT_LE(norm(g - fd), 1e-6 * std::max(norm(g), 1e-3)) << "trial " << trial;
  }
}

TEST(Theta, TailBoundDominatesOmittedMass) {
  const Lattice2 l = Lattice2::from_basis({1.0, 0.45, 0.0, 0.7});
  const PeriodicConfiguration c = PeriodicConfiguration::single(l);
  const Vec2 z = l.to_cartesian({0.37, -0.21});
  for (double alpha : {0.05, 0.2, 1.0}) {
    for (int k : {2, 4, 8}) {
      // mass outside the box |k|,|l| <= K around the centered shift
      const oracle::Basis b = to_oracle(l);
      const Vec2 f = l.to_fractional(Vec2{0, 0} - z);
      const double fx = f.x - std::nearbyint(f.x), fy = f.y - std::nearbyint(f.y);
      long double outside = 0;
      const int big = 120;
      for (int i = -big; i <= big; ++i) {
        for (int j = -big; j <= big; ++j) {
          if (std::abs(i) <= k && std::abs(j) <= k) continue;
          const oracle::P p = b.at(i + fx, j + fy);
          outside += std::exp(-std::numbers::pi_v<long double> * alpha * (p.x * p.x + p.y * p.y));
        }
      }
      const double bound = certified_tail_bound(GaussianParam(alpha), l.gram(), k, {fx, fy});
      EXPECT_GE(bound, static_cast<double>(outside)) << "alpha " << alpha << " K " << k;
    }
  }
}

TEST(Theta, AdaptiveHalfwidthAndTruncation) {
  const PeriodicConfiguration hex = PeriodicConfiguration::single(hexagonal_lattice(1.0));
  const SumValue easy = gaussian_config_sum(hex, {0, 0}, GaussianParam(4.0));
  EXPECT_EQ(easy.halfwidth_used, 8);
  EXPECT_LT(easy.tail_bound, 1e-10);
  const SumValue hard = gaussian_config_sum(hex, {0, 0}, GaussianParam(0.01));
  EXPECT_GT(hard.halfwidth_used, 8);
  EXPECT_LT(hard.tail_bound, 1e-10);
  try {
    gaussian_config_sum(hex, {0, 0}, GaussianParam(0.001), {1e-10, 8, 16});
    FAIL() << "expected TruncationError";
  } catch (const TruncationError &e) {
    EXPECT_GT(e.best_tail_bound(), 1e-10);
  }
}

TEST(Theta, DualSumImaginaryPartAtSymmetricPoints) {
  const Lattice2 l = hexagonal_lattice(1.0);
  const Vec2 z0 = deep_holes(l)[0].coords;
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const DualSumValue d = gaussian_dual_sum(l, z0, GaussianParam(alpha));
    EXPECT_LT(std::abs(d.imaginary), 1e-12);
    EXPECT_NEAR(d.real.value,
                gaussian_config_sum(PeriodicConfiguration::single(l), z0, GaussianParam(alpha)).value,
                2e-10);
  }
}
