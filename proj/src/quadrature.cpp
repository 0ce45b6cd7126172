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

#include "nlb/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "nlb/parallel.hpp"
#include "nlb/states.hpp"

namespace nlb {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Row blocks for the chord pair loop. Fixed so the summation order is
// independent of the worker count.
constexpr std::size_t kChordBlocks = 64;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_shape(const Eigen::MatrixXd& m, Lift lift, const char* who) {
  const Eigen::Index want = lift == Lift::Affine ? 4 : 3;
  if (m.rows() != want || m.cols() != want) {
    throw ValidationError(std::string(who) + ": matrix must be " + std::to_string(want) +
                          " x " + std::to_string(want) +
                          (lift == Lift::Affine ? " with the affine lift" : " without lift") +
                          ", got " + std::to_string(m.rows()) + " x " +
                          std::to_string(m.cols()));
  }
}

// Image rows M * v (or M * (1, v)) as K separate component arrays.
template <int K>
struct Images {
  std::array<std::vector<double>, K> c;
};

template <int K>
Images<K> image_components(const Eigen::MatrixXd& m, const BandGrid& grid, Lift lift,
                           int first_row) {
  const Eigen::Index n = grid.size();
  Eigen::MatrixXd img;
  if (lift == Lift::Affine) {
    Eigen::MatrixXd lifted(4, n);
    lifted.row(0).setOnes();
    lifted.bottomRows(3) = grid.nodes;
    img = m * lifted;
  } else {
    img = m * grid.nodes;
  }
  Images<K> out;
  for (int k = 0; k < K; ++k) {
    out.c[k].resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.c[k][i] = img(first_row + k, i);
  }
  return out;
}

// 2 * sum_{i<j} w_i w_j |u_i - u_j| over the K given components.
template <int K>
double symmetric_pair_sum(const Images<K>& im, const Eigen::VectorXd& w) {
  const std::size_t n = static_cast<std::size_t>(w.size());
  std::array<double, kChordBlocks> partial{};
  parallel_for(kChordBlocks, [&](std::size_t block) {
    double acc = 0.0;
    for (std::size_t i = block; i < n; i += kChordBlocks) {
      std::array<double, K> ui;
      for (int k = 0; k < K; ++k) ui[k] = im.c[k][i];
      double row = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double sq = 0.0;
        for (int k = 0; k < K; ++k) {
          const double dk = im.c[k][j] - ui[k];
          sq += dk * dk;
        }
        row += w[j] * std::sqrt(sq);
      }
      acc += w[i] * row;
    }
    partial[block] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return 2.0 * total;
}

}  // namespace

Band::Band(double phi_lo, double phi_hi) : lo_(phi_lo), hi_(phi_hi) {
  if (!(phi_lo >= 0.0 && phi_hi <= kHalfPi)) {
    throw ValidationError("band: angles must lie in [0, pi/2], got [" + num(phi_lo) +
                          ", " + num(phi_hi) + "]");
  }
  if (!(phi_lo < phi_hi)) {
    throw ValidationError("band: requires phi_lo < phi_hi, got [" + num(phi_lo) + ", " +
                          num(phi_hi) + "]");
  }
}

double Band::analytic_measure() const {
  return 2.0 * std::numbers::pi * (std::cos(lo_) - std::cos(hi_));
}

void QuadratureConfig::validate() const {
  if (n_phi < 4) throw ValidationError("quadrature: n_phi must be >= 4, got " + std::to_string(n_phi));
  if (n_theta < 8) {
    throw ValidationError("quadrature: n_theta must be >= 8, got " + std::to_string(n_theta));
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

BandGrid build_grid(const Band& band, const QuadratureConfig& cfg) {
  cfg.validate();
  std::vector<double> x;
  std::vector<double> wx;
  gauss_legendre(cfg.n_phi, x, wx);

  const double half = 0.5 * (band.hi() - band.lo());
  const double mid = 0.5 * (band.hi() + band.lo());
  const double w_theta = 2.0 * std::numbers::pi / cfg.n_theta;

  BandGrid g{band, cfg.n_phi, cfg.n_theta, Eigen::Matrix3Xd(3, cfg.n_phi * cfg.n_theta),
             Eigen::VectorXd(cfg.n_phi * cfg.n_theta)};
  Eigen::Index k = 0;
  for (int i = 0; i < cfg.n_phi; ++i) {
    const double phi = mid + half * x[i];
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    const double w_phi = half * wx[i] * sp;
    for (int j = 0; j < cfg.n_theta; ++j, ++k) {
      const double theta = w_theta * j;
      g.nodes(0, k) = sp * std::sin(theta);
      g.nodes(1, k) = sp * std::cos(theta);
      g.nodes(2, k) = cp;
      g.weights(k) = w_phi * w_theta;
    }
  }
  return g;
}

double band_measure(const Band& band, const QuadratureConfig& cfg) {
  return build_grid(band, cfg).weights.sum();
}

Eigen::VectorXd moment_vector(const BandGrid& grid, Lift lift) {
  const Eigen::Vector3d m = grid.nodes * grid.weights;
  if (lift == Lift::None) return m;
  Eigen::VectorXd out(4);
  out << grid.weights.sum(), m;
  return out;
}

double bilinear_integral(const Eigen::MatrixXd& m, const BandGrid& grid_x,
                         const BandGrid& grid_y, Lift lift) {
  check_shape(m, lift, "bilinear_integral");
  // The double sum factorises into two moment vectors.
  return moment_vector(grid_x, lift).dot(m * moment_vector(grid_y, lift));
}

double chord_integral(const Eigen::MatrixXd& m, const BandGrid& grid, Lift lift,
                      ChordNorm norm) {
  check_shape(m, lift, "chord_integral");
  if (norm == ChordNorm::AffineMax) {
    if (lift != Lift::Affine) {
      throw ValidationError("chord_integral: the affine-max norm needs the affine lift");
    }
    // u_0 = [M (x - y)]_0 is antisymmetric under x <-> y and integrates to
    // zero over the symmetric product domain; only the trailing norm remains.
    return symmetric_pair_sum<3>(image_components<3>(m, grid, lift, 1), grid.weights);
  }
  if (lift == Lift::Affine) {
    return symmetric_pair_sum<4>(image_components<4>(m, grid, lift, 0), grid.weights);
  }
  return symmetric_pair_sum<3>(image_components<3>(m, grid, lift, 0), grid.weights);
}

}  // namespace nlb
