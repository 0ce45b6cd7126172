// Copyright 2026 The nlbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mc_oracle.hpp"
#include "nlb/quadrature.hpp"
#include "nlb/states.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd rot_z(double angle, int dim) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
  const int o = dim - 3;  // skip the lifted component
  r(o + 0, o + 0) = std::cos(angle);
  r(o + 0, o + 1) = -std::sin(angle);
  r(o + 1, o + 0) = std::sin(angle);
  r(o + 1, o + 1) = std::cos(angle);
  return r;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  for (int n : {1, 2, 5, 8, 24}) {
    nlb::gauss_legendre(n, x, w);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double q = 0.0;
      for (int k = 0; k < n; ++k) q += w[k] * std::pow(x[k], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(q, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(Band, RejectsDegenerateAndOutOfRange) {
  EXPECT_THROW(nlb::Band(kPi / 6, kPi / 6), nlb::ValidationError);
  EXPECT_THROW(nlb::Band(0.5, 0.4), nlb::ValidationError);
  EXPECT_THROW(nlb::Band(-0.1, 0.4), nlb::ValidationError);
  EXPECT_THROW(nlb::Band(0.1, 2.0), nlb::ValidationError);
  EXPECT_NO_THROW(nlb::Band(0.0, kPi / 2));
}

TEST(BandMeasure, AnalyticValues) {
  EXPECT_NEAR(nlb::band_measure(nlb::Band(0, kPi / 2)), 2 * kPi, 1e-12);
  EXPECT_NEAR(nlb::band_measure(nlb::Band(0, kPi / 3)), kPi, 1e-12);
}

TEST(BandMeasure, RandomBandsMatchClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, kPi / 2);
  for (int k = 0; k < 50; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const nlb::Band band(a, b);
    const double exact = 2 * kPi * (std::cos(a) - std::cos(b));
    EXPECT_LE(std::abs(nlb::band_measure(band, {8, 16}) - exact), 1e-10 * exact);
  }
}

TEST(BuildGrid, ShapeNormsAndMoments) {
  const auto g = nlb::build_grid(nlb::Band(0, kPi / 2), {8, 16});
  EXPECT_EQ(g.size(), 128);
  EXPECT_NEAR(g.weights.sum(), 2 * kPi, 1e-12);
  EXPECT_GT(g.weights.minCoeff(), 0.0);
  EXPECT_NEAR((g.nodes.colwise().norm().array() - 1.0).abs().maxCoeff(), 0.0, 1e-12);
  // sum w cos(phi) = pi on the upper hemisphere.
  EXPECT_NEAR(g.nodes.row(2).dot(g.weights), kPi, 1e-12);
  EXPECT_THROW(nlb::build_grid(nlb::Band(0, 1), {3, 16}), nlb::ValidationError);
  EXPECT_THROW(nlb::build_grid(nlb::Band(0, 1), {8, 4}), nlb::ValidationError);
}

TEST(BilinearIntegral, AnalyticCases) {
  const auto g = nlb::build_grid(nlb::Band(0, kPi / 2), {});
  const Eigen::MatrixXd eye = Eigen::Matrix3d::Identity();
  EXPECT_NEAR(nlb::bilinear_integral(eye, g, g, nlb::Lift::None), kPi * kPi, 1e-10);
  EXPECT_EQ(nlb::bilinear_integral(Eigen::Matrix3d::Zero(), g, g, nlb::Lift::None), 0.0);
  const Eigen::MatrixXd e11 = Eigen::Vector3d(1, 0, 0).asDiagonal();
  EXPECT_NEAR(nlb::bilinear_integral(e11, g, g, nlb::Lift::None), 0.0, 1e-12);
  EXPECT_THROW(nlb::bilinear_integral(eye, g, g, nlb::Lift::Affine), nlb::ValidationError);
}

TEST(ChordIntegral, ZeroScalingAndSignSymmetry) {
  const auto g = nlb::build_grid(nlb::Band(0.2, 1.3), {12, 24});
  EXPECT_EQ(nlb::chord_integral(Eigen::Matrix3d::Zero(), g, nlb::Lift::None), 0.0);
  Eigen::MatrixXd m(3, 3);
  m << 0.3, -0.1, 0.05, 0.2, 0.4, -0.3, 0.0, 0.1, -0.25;
  const double base = nlb::chord_integral(m, g, nlb::Lift::None);
  EXPECT_NEAR(nlb::chord_integral(-m, g, nlb::Lift::None), base, 1e-14 * base);
  for (double lambda : {0.5, 2.0, 3.7}) {
    EXPECT_NEAR(nlb::chord_integral(lambda * m, g, nlb::Lift::None), lambda * base,
                1e-13 * lambda * base);
  }
  EXPECT_THROW(nlb::chord_integral(m, g, nlb::Lift::Affine), nlb::ValidationError);
  EXPECT_THROW(nlb::chord_integral(m, g, nlb::Lift::None, nlb::ChordNorm::AffineMax),
               nlb::ValidationError);
}

TEST(ChordIntegral, LiftedLeadingComponentVanishesForConstantRow) {
  // Only gamma_00 set: M (0, x - y) = 0 for every pair.
  Eigen::MatrixXd m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0 / 9.0;
  const auto g = nlb::build_grid(nlb::Band(0.1, 0.9), {8, 16});
  EXPECT_EQ(nlb::chord_integral(m, g, nlb::Lift::Affine), 0.0);
  EXPECT_EQ(nlb::chord_integral(m, g, nlb::Lift::Affine, nlb::ChordNorm::AffineMax), 0.0);
}

TEST(ChordIntegral, AgreesWithMonteCarlo) {
  const nlb::Band band(0, kPi / 2);
  const auto g = nlb::build_grid(band, {});
  const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();
  const double quad = nlb::chord_integral(eye, g, nlb::Lift::None);
  const auto mc = nlb_test::mc_chord(eye, band, 1'000'000, 2024);
  EXPECT_LE(std::abs(quad - mc.mean), 3.0 * mc.std_error)
      << "quad=" << quad << " mc=" << mc.mean << " se=" << mc.std_error;
}

TEST(Quadrature, ConvergesUnderRefinement) {
  Eigen::MatrixXd m(3, 3);
  m << 0.25, 0.05, 0.0, -0.1, 0.2, 0.03, 0.02, 0.0, -0.22;
  const nlb::Band ab(0.1, 1.2), cd(0.0, 0.9);
  const nlb::QuadratureConfig coarse{12, 24}, base{}, fine{48, 96};
  auto bil = [&](const nlb::QuadratureConfig& q) {
    return nlb::bilinear_integral(m, nlb::build_grid(ab, q), nlb::build_grid(cd, q),
                                  nlb::Lift::None);
  };
  const double b0 = bil(base);
  EXPECT_LE(std::abs(bil(fine) - b0), 1e-10 * std::abs(b0));

  // The chord kernel has a conical kink on the diagonal: measured convergence
  // is third order, so doubling changes it by ~2e-4 relative at the default
  // rule. Check that level and the order of decay.
  auto chord = [&](const nlb::QuadratureConfig& q) {
    return nlb::chord_integral(m, nlb::build_grid(ab, q), nlb::Lift::None);
  };
  const double c0 = chord(coarse), c1 = chord(base), c2 = chord(fine);
  EXPECT_LE(std::abs(c2 - c1), 5e-4 * c2);
  EXPECT_GE(std::abs(c1 - c0) / std::abs(c2 - c1), 4.0);
}

TEST(Quadrature, AzimuthalRotationInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = nlb::build_grid(nlb::Band(0.15, 1.1), {});
  const auto h = nlb::build_grid(nlb::Band(0.0, 0.8), {});
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd m3(3, 3), m4(4, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m3(i, j) = 0.25 * u(rng);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m4(i, j) = u(rng);
    const double angle = kPi * u(rng);
    const Eigen::MatrixXd r3 = rot_z(angle, 3), r4 = rot_z(angle, 4);
    const Eigen::MatrixXd rm3 = r3.transpose() * m3 * r3, rm4 = r4.transpose() * m4 * r4;

    // Raw integrals carry the band measures (up to ~40); compare relatively.
    const double b = nlb::bilinear_integral(m3, g, h, nlb::Lift::None);
    EXPECT_NEAR(nlb::bilinear_integral(rm3, g, h, nlb::Lift::None), b, 1e-8 * std::abs(b));
    const double c = nlb::chord_integral(m3, g, nlb::Lift::None);
    EXPECT_NEAR(nlb::chord_integral(rm3, g, nlb::Lift::None), c, 1e-8 * c);
    const double c4 = nlb::chord_integral(m4, g, nlb::Lift::Affine);
    EXPECT_NEAR(nlb::chord_integral(rm4, g, nlb::Lift::Affine), c4, 1e-8 * c4);
  }
}
