#include "essmodes/medium.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace essmodes;

namespace {

const Vec3 kOrigin{0.0, 0.0, 0.0};

ResonanceSearch line_search(double lo, double hi, double tol = 1e-6) {
  ResonanceSearch s;
  s.omega_min = lo;
  s.omega_max = hi;
  s.omega_samples = 2001;
  s.tolerance = tol;
  return s;
}

}  // namespace

TEST(EpsHat, ModelValues) {
  EXPECT_EQ(eval_eps_hat(Vacuum{}, {1, 2, 3}, 7.0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(eval_eps_hat(ConstantScalar{2.5}, kOrigin, 3.0), std::complex<double>(2.5, 0.0));
  EXPECT_EQ(eval_eps_hat(Drude{1.0, 0.0}, kOrigin, 1.0), std::complex<double>(0.0, 0.0));

  // 1 - 1 / (1 + 0.1 i) = (0.01 + 0.1 i) / 1.01
  const auto d = eval_eps_hat(Drude{1.0, 0.1}, kOrigin, 1.0);
  EXPECT_NEAR(d.real(), 0.00990099009900991, 1e-15);
  EXPECT_NEAR(d.imag(), 0.09900990099009901, 1e-15);

  // 1 + 2 * 4 / (4 - 1 - 0.5 i)
  const auto l = eval_eps_hat(Lorentz{2.0, 2.0, 0.5}, kOrigin, 1.0);
  const std::complex<double> expected = 1.0 + 8.0 / std::complex<double>(3.0, -0.5);
  EXPECT_NEAR(std::abs(l - expected), 0.0, 1e-15);
}

TEST(EpsHat, PolesAreExplicitErrors) {
  EXPECT_THROW((void)eval_eps_hat(Drude{1.0, 0.0}, kOrigin, 0.0), std::domain_error);
  EXPECT_THROW((void)eval_eps_hat(Drude{1.0, 0.2}, kOrigin, 0.0), std::domain_error);
  EXPECT_THROW((void)eval_eps_hat(Lorentz{2.0, 1.0, 0.0}, kOrigin, 2.0), std::domain_error);
  EXPECT_THROW((void)eval_omega_eps_hat(Drude{1.0, 0.0}, kOrigin, 0.0), std::domain_error);
  // Lossy Drude: w eps_hat is finite at w = 0.
  const auto finite = eval_omega_eps_hat(Drude{1.0, 0.2}, kOrigin, 0.0);
  EXPECT_NEAR(finite.real(), 0.0, 1e-15);
  EXPECT_NEAR(finite.imag(), 5.0, 1e-14);
}

TEST(EpsHat, OmegaProductMatchesProduct) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> freq(0.05, 5.0);
  const std::vector<MediumModel> models = {Vacuum{}, ConstantScalar{3.0}, Drude{1.3, 0.2},
                                           Drude{0.7, 0.0}, Lorentz{1.5, 0.8, 0.1}};
  for (const auto& m : models)
    for (int k = 0; k < 20; ++k) {
      const double w = freq(rng);
      EXPECT_NEAR(std::abs(eval_omega_eps_hat(m, kOrigin, w) - w * eval_eps_hat(m, kOrigin, w)),
                  0.0, 1e-12 * (1.0 + std::abs(w * eval_eps_hat(m, kOrigin, w))));
    }
}

TEST(EpsHat, RealitySymmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> freq(0.01, 10.0);
  const SmoothBump bump{{0.0, 0.0, 0.0}, 2.0, 0.6};
  const std::vector<MediumModel> models = {
      Vacuum{},       ConstantScalar{2.0},        Drude{1.0, 0.0},
      Drude{2.0, 0.3}, Lorentz{1.5, 0.8, 0.1},     Lorentz{1.5, 0.8, 0.0},
      Separable{bump, Drude{1.0, 0.1}}};
  const Vec3 x{0.3, 0.2, -0.1};
  for (const auto& m : models) {
    for (int k = 0; k < 100; ++k) {
      const double w = freq(rng);
      if (std::abs(std::abs(w) - 1.5) < 1e-9) continue;
      const auto plus = eval_eps_hat(m, x, w);
      const auto minus = eval_eps_hat(m, x, -w);
      EXPECT_NEAR(std::abs(minus - std::conj(plus)), 0.0, 1e-12 * std::abs(plus) + 1e-15);
    }
  }
}

TEST(Separable, ProfileWeighting) {
  const SmoothBump bump{{1.0, 0.0, 0.0}, 2.0, 0.5};
  EXPECT_DOUBLE_EQ(bump({1.0, 0.0, 0.0}), 0.5);
  EXPECT_EQ(bump({3.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(bump({10.0, 0.0, 0.0}), 0.0);
  EXPECT_GT(bump({2.9, 0.0, 0.0}), 0.0);

  const Separable s{bump, Drude{1.0, 0.0}};
  // 1 + 0.5 * (-1 / w^2)
  EXPECT_NEAR(eval_eps_hat(s, {1.0, 0.0, 0.0}, 2.0).real(), 1.0 - 0.5 / 4.0, 1e-15);
  EXPECT_EQ(eval_eps_hat(s, {5.0, 0.0, 0.0}, 2.0), std::complex<double>(1.0, 0.0));
  // Outside the support the pole is absent.
  EXPECT_EQ(eval_omega_eps_hat(s, {5.0, 0.0, 0.0}, 0.0), std::complex<double>(0.0, 0.0));
  EXPECT_FALSE(is_spatially_uniform(s));
  EXPECT_TRUE(is_spatially_uniform(Drude{1.0, 0.0}));
}

TEST(Validation, RejectsInvalidModels) {
  EXPECT_THROW(validate(Drude{-1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(validate(Drude{1.0, -0.1}), std::invalid_argument);
  EXPECT_THROW(validate(Lorentz{-1.0, 1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(validate(ConstantScalar{INFINITY}), std::invalid_argument);
  EXPECT_THROW(validate(Separable{{{0, 0, 0}, 0.0, 1.0}, Drude{1.0, 0.0}}), std::invalid_argument);
  EXPECT_NO_THROW(validate(Separable{{{0, 0, 0}, 1.0, 1.0}, Lorentz{1.0, 1.0, 0.1}}));
}

TEST(RealPoles, ByModel) {
  EXPECT_TRUE(real_poles(Vacuum{}).empty());
  EXPECT_TRUE(real_poles(Drude{1.0, 0.1}).empty());
  EXPECT_EQ(real_poles(Drude{1.0, 0.0}), std::vector<double>{0.0});
  EXPECT_EQ(real_poles(Lorentz{2.0, 1.0, 0.0}), (std::vector<double>{-2.0, 2.0}));
  EXPECT_TRUE(real_poles(Lorentz{2.0, 1.0, 0.3}).empty());
}

TEST(Resonance, LosslessDrudeRootAtPlasmaFrequency) {
  for (double wp : {1.0, 0.37, 4.2}) {
    const auto points = find_essential_resonance(Drude{wp, 0.0}, line_search(0.1 * wp, 3.0 * wp));
    ASSERT_EQ(points.size(), 1u) << "omega_p=" << wp;
    EXPECT_LE(std::abs(points[0].omega_c - wp), 1e-10 * wp);
    EXPECT_LE(points[0].residual, 1e-6);
  }
}

TEST(Resonance, RootOffTheScanGrid) {
  // 0.999... is not a grid node of the 2001-point scan.
  const double wp = 1.0 / 1.0007;
  const auto points = find_essential_resonance(Drude{wp, 0.0}, line_search(0.1, 3.0));
  ASSERT_EQ(points.size(), 1u);
  EXPECT_LE(std::abs(points[0].omega_c - wp), 1e-10 * wp);
}

TEST(Resonance, VacuumAndConstantAreEmpty) {
  EXPECT_TRUE(find_essential_resonance(Vacuum{}, line_search(0.1, 3.0)).empty());
  EXPECT_TRUE(find_essential_resonance(ConstantScalar{2.0}, line_search(0.1, 3.0)).empty());
}

TEST(Resonance, LossyDrudeReportsRealAxisMinimum) {
  // Minimiser of |w eps_hat| = |w - 1/(w + 0.1 i)| by brute-force scan in
  // extended precision: w* = 0.999975246611739, |.| = 0.0995037068275127.
  const Drude d{1.0, 0.1};
  auto lenient = line_search(0.1, 3.0, 0.2);
  const auto points = find_essential_resonance(d, lenient);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_NEAR(points[0].omega_c, 0.999975246611739, 1e-7);
  EXPECT_NEAR(points[0].residual, 0.0995037068275127, 1e-12);
  // Not the zero of Re eps_hat.
  EXPECT_GT(std::abs(points[0].omega_c - std::sqrt(0.99)), 1e-3);
  // Residual above the default tolerance: nothing reported.
  EXPECT_TRUE(find_essential_resonance(d, line_search(0.1, 3.0)).empty());
}

TEST(Resonance, LosslessLorentzZero) {
  // eps_hat = 0 where w^2 = w0^2 (1 + strength).
  const Lorentz l{1.0, 3.0, 0.0};
  const auto points = find_essential_resonance(l, line_search(1.2, 4.0));
  ASSERT_EQ(points.size(), 1u);
  EXPECT_NEAR(points[0].omega_c, 2.0, 1e-10);
}

TEST(Resonance, UniformMediumPairsRootWithEverySample) {
  auto s = line_search(0.1, 3.0);
  s.x_min = {-1.0, 0.0, 0.0};
  s.x_max = {1.0, 2.0, 0.0};
  s.x_samples = {3, 2, 1};
  const auto points = find_essential_resonance(Drude{1.0, 0.0}, s);
  ASSERT_EQ(points.size(), 6u);
  EXPECT_EQ(points.front().x_c, (Vec3{-1.0, 0.0, 0.0}));
  EXPECT_EQ(points.back().x_c, (Vec3{1.0, 2.0, 0.0}));
  for (const auto& p : points) {
    EXPECT_NEAR(p.omega_c, 1.0, 1e-10);
    EXPECT_LE(p.residual, s.tolerance);
  }
}

TEST(Resonance, SeparableMediumTracesHypersurface) {
  // eps_hat = 1 - s(x) / w^2 vanishes at w = sqrt(s(x)).
  const SmoothBump bump{{0.0, 0.0, 0.0}, 2.0, 1.0};
  const Separable m{bump, Drude{1.0, 0.0}};
  auto s = line_search(0.05, 2.0);
  s.x_min = {0.0, 0.0, 0.0};
  s.x_max = {1.5, 0.0, 0.0};
  s.x_samples = {4, 1, 1};
  for (unsigned workers : {1u, 3u}) {
    const auto points = find_essential_resonance(m, s, workers);
    ASSERT_EQ(points.size(), 4u);
    for (const auto& p : points) {
      EXPECT_NEAR(p.omega_c, std::sqrt(bump(p.x_c)), 1e-10);
      EXPECT_LE(std::abs(eval_omega_eps_hat(m, p.x_c, p.omega_c)), s.tolerance);
    }
  }
}

TEST(Resonance, SearchValidation) {
  EXPECT_THROW((void)find_essential_resonance(Drude{1.0, 0.0}, line_search(0.0, 3.0)),
               std::invalid_argument);
  EXPECT_THROW((void)find_essential_resonance(Drude{1.0, 0.0}, line_search(2.0, 1.0)),
               std::invalid_argument);
  EXPECT_THROW((void)find_essential_resonance(Drude{1.0, 0.0}, line_search(0.1, 3.0, 0.0)),
               std::invalid_argument);
}
