#include "essmodes/modes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace essmodes;

namespace {

const std::vector<double> kDecades = {1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};

double gaussian_sift_exact_3d(double a) { return std::pow(a / (a + 1.0), 2.5); }
double gaussian_sift_exact_1d(double b) { return std::pow(b / (b + 1.0), 1.5); }

// int exp(-|x|^2) |Psi(alpha, x, c)|^2 dx for an arbitrary centre c, by
// completing the square: the weight becomes a Gaussian about c alpha/(1+alpha).
double gaussian_sift_off_centre(double a, const Vec3& c) {
  const double c2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  const double s = 1.0 + a;
  const double pref = (2.0 / 3.0) * std::pow(std::numbers::pi, -1.5) * std::pow(a, 2.5);
  return pref * std::exp(-a * c2 / s) * std::pow(std::numbers::pi / s, 1.5) *
         (1.5 / s + c2 / (s * s));
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST(ModeParams, RejectDegenerateParameters) {
  EXPECT_THROW(SpatialMode(0.0, {0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(SpatialMode(-1.0, {0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(SpatialMode(1.0, {std::nan(""), 0, 0}), std::invalid_argument);
  EXPECT_THROW(TemporalMode(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(TemporalMode(1.0, INFINITY), std::invalid_argument);
  EXPECT_DOUBLE_EQ(SpatialMode(4.0, {0, 0, 0}).width(), 0.5);
}

TEST(EvalPsi, PointValues) {
  const SpatialMode p(1.0, {0.0, 0.0, 0.0});
  const auto zero = eval_psi(p, {0.0, 0.0, 0.0});
  for (double c : zero) EXPECT_EQ(c, 0.0);

  // mpmath: sqrt(2/3) * pi**(-3/4) * exp(-1/2)
  const auto v = eval_psi(p, {1.0, 0.0, 0.0});
  EXPECT_NEAR(v[0], 0.209867275722846, 1e-14);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_EQ(v[2], 0.0);

  const auto w = eval_psi(p, {0.0, 1.0, 0.0});
  EXPECT_NEAR(std::hypot(w[0], w[1], w[2]), std::hypot(v[0], v[1], v[2]), 1e-15);

  const SpatialMode shifted(2.5, {1.0, -2.0, 0.5});
  const auto a = eval_psi(shifted, {1.3, -2.0, 0.1});
  const auto b = eval_psi(SpatialMode(2.5, {0, 0, 0}), {0.3, 0.0, -0.4});
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);

  const double r = 0.7;
  const auto at_r = eval_psi(p, {r, 0.0, 0.0});
  EXPECT_NEAR(psi_sq_at_radius(p, r), at_r[0] * at_r[0], 1e-15);
}

TEST(EvalPhi, PointValues) {
  EXPECT_EQ(eval_phi(TemporalMode(1.0, 0.0), 0.0), std::complex<double>(0.0, 0.0));
  // mpmath: sqrt(2) * pi**(-1/4) * exp(-1/2)
  const auto v = eval_phi(TemporalMode(1.0, 0.0), 1.0);
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.644288365113475, 1e-14);
  for (double wc : {-3.0, 0.5, 10.0})
    EXPECT_NEAR(std::abs(eval_phi(TemporalMode(2.0, wc), 0.8)),
                std::abs(eval_phi(TemporalMode(2.0, 0.0), 0.8)), 1e-15);
}

TEST(EvalPhiHat, PointValuesAndOddSymmetry) {
  const TemporalMode p(1.0, 2.0);
  EXPECT_EQ(eval_phi_hat(p, 2.0), 0.0);
  EXPECT_NEAR(eval_phi_hat(p, 3.0), 0.644288365113475, 1e-14);
  for (double d : {0.1, 0.9, 2.7}) EXPECT_EQ(eval_phi_hat(p, 2.0 + d), -eval_phi_hat(p, 2.0 - d));
}

TEST(EssentialMode, RowsFollowKind) {
  const SpatialMode s(1.0, {0, 0, 0});
  const TemporalMode t(1.0, 0.5);
  const Vec3 x{0.4, -0.2, 0.9};
  const auto e = eval_essential_mode({ModeKind::electric, s, t}, x, 0.3);
  const auto m = eval_essential_mode({ModeKind::magnetic, s, t}, x, 0.3);
  const auto psi = eval_psi(s, x);
  const auto phi = eval_phi(t, 0.3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(e[i], phi * psi[i]);
    EXPECT_EQ(e[i + 3], std::complex<double>{});
    EXPECT_EQ(m[i], std::complex<double>{});
    EXPECT_EQ(m[i + 3], phi * psi[i]);
  }
  const auto eh = eval_essential_mode_hat({ModeKind::electric, s, t}, x, 1.1);
  EXPECT_NEAR(eh[0].real(), eval_phi_hat(t, 1.1) * psi[0], 1e-15);
}

TEST(Normalization, UnitNormAcrossDecades) {
  for (double a : kDecades)
    EXPECT_NEAR(norm_sq_psi(SpatialMode(a, {0.1, -0.2, 0.3})), 1.0, 1e-8) << "alpha=" << a;
  for (double b : kDecades) {
    EXPECT_NEAR(norm_sq_phi_hat(TemporalMode(b, 1.0)), 1.0, 1e-8) << "beta=" << b;
    EXPECT_NEAR(norm_sq_phi(TemporalMode(b, 1.0)), 1.0, 1e-8) << "beta=" << b;
  }
}

TEST(Normalization, IndependentOfCentre) {
  for (double a : {1e-2, 1.0, 1e6}) {
    const double n1 = norm_sq_psi(SpatialMode(a, {0, 0, 0}));
    const double n2 = norm_sq_psi(SpatialMode(a, {5.0, -3.0, 1e3}));
    EXPECT_NEAR(n1, n2, 1e-12);
  }
  for (double b : {1e-2, 1.0, 1e6}) {
    const double n1 = norm_sq_phi_hat(TemporalMode(b, 0.0));
    const double n2 = norm_sq_phi_hat(TemporalMode(b, 37.0));
    EXPECT_NEAR(n1, n2, 1e-12);
  }
}

TEST(Sifting, ConstantFunctionGivesOne) {
  for (double a : {1e-1, 1.0, 1e4})
    EXPECT_NEAR(sift_psi_radial([](double) { return 1.0; }, SpatialMode(a, {0, 0, 0})), 1.0, 1e-10);
  for (double b : {1e-1, 1.0, 1e4})
    EXPECT_NEAR(sift_phi_hat([](double) { return 1.0; }, TemporalMode(b, 2.0)), 1.0, 1e-10);
}

TEST(Sifting, GaussianOracleAcrossDecades) {
  const SpatialMode unit(1.0, {0, 0, 0});
  EXPECT_NEAR(sift_psi_radial([](double r) { return std::exp(-r * r); }, unit), 0.1767766952966369,
              1e-12);
  EXPECT_NEAR(sift_psi_radial([](double r) { return std::exp(-r * r); },
                              SpatialMode(999.0, {0, 0, 0})),
              0.997501874687461, 1e-10);
  EXPECT_NEAR(sift_phi_hat([](double w) { return std::exp(-w * w); }, TemporalMode(1.0, 0.0)),
              0.3535533905932738, 1e-12);
  for (double a : kDecades) {
    const double v =
        sift_psi_radial([](double r) { return std::exp(-r * r); }, SpatialMode(a, {0, 0, 0}));
    EXPECT_NEAR(v, gaussian_sift_exact_3d(a), 1e-8) << "alpha=" << a;
  }
  for (double b : kDecades) {
    const double v =
        sift_phi_hat([](double w) { return std::exp(-w * w); }, TemporalMode(b, 0.0));
    EXPECT_NEAR(v, gaussian_sift_exact_1d(b), 1e-8) << "beta=" << b;
  }
}

TEST(Sifting, ErrorDecaysLikeInverseParameter) {
  std::vector<double> params = {1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> err_a, err_b;
  for (double a : params)
    err_a.push_back(1.0 - sift_psi_radial([](double r) { return std::exp(-r * r); },
                                          SpatialMode(a, {0, 0, 0})));
  for (double b : params)
    err_b.push_back(1.0 - sift_phi_hat([](double w) { return std::exp(-w * w); },
                                       TemporalMode(b, 0.0)));
  EXPECT_NEAR(slope(params, err_a), -1.0, 0.05);
  EXPECT_NEAR(slope(params, err_b), -1.0, 0.05);
}

TEST(Sifting, GeneralFieldOffCentre) {
  auto f = [](const Vec3& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); };
  for (double a : {0.5, 1.0, 10.0}) {
    for (Vec3 c : {Vec3{0, 0, 0}, Vec3{0.5, -0.25, 1.0}, Vec3{1.5, 0.0, 0.0}}) {
      const double v = sift_psi(f, SpatialMode(a, c));
      EXPECT_NEAR(v, gaussian_sift_off_centre(a, c), 1e-9) << "alpha=" << a;
    }
  }
  EXPECT_NEAR(gaussian_sift_off_centre(1.0, {0, 0, 0}), gaussian_sift_exact_3d(1.0), 1e-15);
}

TEST(Sifting, TranslationAndModulationInvariance) {
  const Vec3 c{0.3, -1.2, 2.0};
  for (double a : {1.0, 1e2, 1e4}) {
    const double at_origin =
        sift_psi_radial([](double r) { return std::exp(-r * r); }, SpatialMode(a, {0, 0, 0}));
    auto shifted_field = [&](const Vec3& x) {
      const double dx = x[0] - c[0], dy = x[1] - c[1], dz = x[2] - c[2];
      return std::exp(-(dx * dx + dy * dy + dz * dz));
    };
    EXPECT_NEAR(sift_psi(shifted_field, SpatialMode(a, c)), at_origin, 1e-10) << "alpha=" << a;
  }
  for (double b : {1.0, 1e2, 1e4}) {
    const double at_zero =
        sift_phi_hat([](double w) { return std::exp(-w * w); }, TemporalMode(b, 0.0));
    const double wc = 3.0;
    const double shifted = sift_phi_hat(
        [wc](double w) { return std::exp(-(w - wc) * (w - wc)); }, TemporalMode(b, wc));
    EXPECT_NEAR(shifted, at_zero, 1e-10) << "beta=" << b;
  }
}

TEST(Fourier, DualityOnFineGrid) {
  for (auto [b, wc] : {std::pair{1.0, 0.0}, std::pair{4.0, 3.0}}) {
    const double span = 10.0 * std::sqrt(b);
    const auto times = Grid1D::uniform(-span, span, 4096);
    EXPECT_LE(fourier_consistency(TemporalMode(b, wc), times).max_deviation, 1e-6)
        << "beta=" << b << " omega_c=" << wc;
  }
}

TEST(Fourier, DualityForRandomPairs) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> log_beta(-1.0, 2.0);
  std::uniform_real_distribution<double> centre(-5.0, 5.0);
  for (int k = 0; k < 5; ++k) {
    const double b = std::pow(10.0, log_beta(rng));
    const double wc = centre(rng);
    const double span = 10.0 * std::sqrt(b);
    const auto times = Grid1D::uniform(-span, span, 4096);
    EXPECT_LE(fourier_consistency(TemporalMode(b, wc), times).max_deviation, 1e-6)
        << "beta=" << b << " omega_c=" << wc;
  }
}

TEST(Fourier, PinnedPhaseFromDirectTransform) {
  // (2 pi)^(-1/2) sum phi(t) exp(+i w t) dt at a few frequencies, independent
  // of fourier_consistency.
  const TemporalMode p(1.0, 2.0);
  const auto times = Grid1D::uniform(-12.0, 12.0, 4001);
  const double dt = times[1] - times[0];
  for (double w : {1.0, 2.5, 3.7}) {
    std::complex<double> sum{};
    for (double t : times.nodes()) sum += eval_phi(p, t) * std::polar(1.0, w * t);
    sum *= dt / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(sum.real(), kFourierPhase * eval_phi_hat(p, w), 1e-10) << "omega=" << w;
    EXPECT_NEAR(sum.imag(), 0.0, 1e-10);
    EXPECT_GT(std::abs(sum.real() - eval_phi_hat(p, w)), 0.1);
  }
}

TEST(Fourier, RejectsShortOrCoarseGrids) {
  const TemporalMode p(1.0, 0.0);
  EXPECT_THROW((void)fourier_consistency(p, Grid1D::uniform(-3.0, 3.0, 4096)),
               std::invalid_argument);
  EXPECT_THROW((void)fourier_consistency(p, Grid1D::uniform(-10.0, 10.0, 16)),
               std::invalid_argument);
}

TEST(Curl, VanishesToSecondOrder) {
  for (double a : {1.0, 1e2, 1e6}) {
    const SpatialMode p(a, {0.2, -0.1, 0.4});
    const double w = p.width();
    const auto& c = p.center();
    const std::vector<Vec3> probes = {
        {c[0] + 0.7 * w, c[1] - 0.3 * w, c[2] + 1.1 * w},
        {c[0] - 1.5 * w, c[1] + 0.9 * w, c[2] - 0.4 * w},
    };
    const double h1 = 1e-2 * w;
    const double h2 = h1 / 2.0;
    const double r1 = curl_psi_residual(p, probes, h1);
    const double r2 = curl_psi_residual(p, probes, h2);
    EXPECT_LE(r1, 10.0 * h1 * h1 * curl_error_scale(p)) << "alpha=" << a;
    EXPECT_LE(r2, 10.0 * h2 * h2 * curl_error_scale(p)) << "alpha=" << a;
    EXPECT_GE(std::log2(r1 / r2), 1.9) << "alpha=" << a;
  }
}

TEST(Curl, ThresholdAtUnitAlpha) {
  const SpatialMode p(1.0, {0, 0, 0});
  const std::vector<Vec3> probes = {{0.3, 0.4, -0.5}, {1.0, 1.0, 1.0}, {-0.2, 1.7, 0.1}};
  EXPECT_LE(curl_psi_residual(p, probes, 1e-3), 1e-5);
  const std::vector<Vec3> centre = {{0.0, 0.0, 0.0}};
  EXPECT_LE(curl_psi_residual(p, centre, 1e-3), 1e-15);
  EXPECT_THROW((void)curl_psi_residual(p, probes, 0.0), std::invalid_argument);
}
