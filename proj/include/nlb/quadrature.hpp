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

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace nlb {

/// Polar band {x in S^2 : phi_lo <= polar angle(x) <= phi_hi} with
/// 0 <= phi_lo < phi_hi <= pi/2.
class Band {
 public:
  Band(double phi_lo, double phi_hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Surface measure 2 pi (cos lo - cos hi).
  double analytic_measure() const;

  friend bool operator==(const Band&, const Band&) = default;

 private:
  double lo_;
  double hi_;
};

struct QuadratureConfig {
  int n_phi = 24;    // Gauss-Legendre nodes in the polar angle
  int n_theta = 48;  // uniform nodes in the azimuth

  void validate() const;
  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

/// Tensor-product rule on a band. Nodes are stored column-wise (3 x N) with
/// x = (sin phi sin theta, sin phi cos theta, cos phi); the weight of a node
/// includes the sin(phi) surface factor.
struct BandGrid {
  Band band;
  int n_phi;
  int n_theta;
  Eigen::Matrix3Xd nodes;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
};

/// Whether sphere nodes v enter a kernel as v itself or as the 4-vector (1, v).
enum class Lift { None, Affine };

/// Norm applied to the image u = M (x - y) in chord_integral.
///   Euclidean: |u|.
///   AffineMax: u_0 + |(u_1, u_2, u_3)|, the maximum of <c, u> over
///              c = (1, c'), |c'| = 1. Only meaningful with Lift::Affine.
enum class ChordNorm { Euclidean, AffineMax };

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

BandGrid build_grid(const Band& band, const QuadratureConfig& cfg);

/// Quadrature value of the band measure (default rule, n_phi = 24).
double band_measure(const Band& band, const QuadratureConfig& cfg = {});

/// sum_i w_i x_i (or sum_i w_i (1, x_i) under the lift).
Eigen::VectorXd moment_vector(const BandGrid& grid, Lift lift);

/// sum_i sum_j w_i w_j <x_i, M y_j>; M is 3 x 3 without lift, 4 x 4 with.
double bilinear_integral(const Eigen::MatrixXd& m, const BandGrid& grid_x,
                         const BandGrid& grid_y, Lift lift);

/// sum_i sum_j w_i w_j ||M (x_i - x_j)|| over a single band.
///
/// The pair loop is split into a fixed number of row blocks that may run on
/// worker threads; block sums are combined in order so the result does not
/// depend on the thread count.
double chord_integral(const Eigen::MatrixXd& m, const BandGrid& grid, Lift lift,
                      ChordNorm norm = ChordNorm::Euclidean);

}  // namespace nlb
