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

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nlb {

/// Raised when an input violates a documented invariant. The message names
/// the invariant and the offending value.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = -1e-9;
inline constexpr double kImagResidue = 1e-12;
}  // namespace tol

/// Bipartite density matrix on C^dim_a (x) C^dim_b, stored in the product
/// basis |i>_A (x) |j>_B with row index i * dim_b + j.
///
/// Construction validates hermiticity, unit trace and positivity; an
/// instance is therefore always a physical state.
class DensityMatrix {
 public:
  DensityMatrix(int dim_a, int dim_b, Eigen::MatrixXcd entries);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// Local dimension d; only square bipartitions are accepted.
  int local_dim() const { return dim_a_; }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  int dim_a_;
  int dim_b_;
  Eigen::MatrixXcd entries_;
  double min_eigenvalue_;
};

/// Pauli-basis decomposition of a two-qubit state with the 1/4 normalisation
/// t_kl = Tr(rho s_k (x) s_l) / 4, r_k = Tr(rho s_k (x) I) / 4 and
/// s_l = Tr(rho I (x) s_l) / 4.
struct CorrelationMatrixT {
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
};

/// Block-Pauli observables for a d-level system. For odd d the last basis
/// vector is carved out of the blocks and carried by gamma[0].
struct GammaOperators {
  int d = 0;
  std::array<Eigen::MatrixXcd, 4> gamma;
};

/// gamma_ij = Tr(rho Gamma_i (x) Gamma_j), i, j in 0..3.
struct GammaCorrelation {
  int d = 0;
  Eigen::Matrix4d gamma = Eigen::Matrix4d::Zero();
};

/// The Pauli matrices s_1, s_2, s_3 (index 0 is the identity).
const std::array<Eigen::Matrix2cd, 4>& pauli_basis();

CorrelationMatrixT pauli_correlation(const DensityMatrix& rho);

GammaOperators gamma_operators(int d);

GammaCorrelation gamma_correlation(const DensityMatrix& rho,
                                   const GammaOperators& ops);

// State families.

/// x |psi-><psi-| + (1 - x) I/4 with |psi-> = (|01> - |10>)/sqrt(2).
DensityMatrix werner(double x);

/// (I (x) I - p1 s1 (x) s1 - p2 s2 (x) s2 - p3 s3 (x) s3) / 4. Points outside
/// the tetrahedron of valid states are rejected by the positivity check.
DensityMatrix bell_diagonal(double p1, double p2, double p3);

/// (1 - x)/d^2 I + x |psi+><psi+| with |psi+> = sum_i |ii> / sqrt(d).
///
/// The state is entangled for x > (9/d - 1)/8; this value is reported by
/// isotropic_entanglement_threshold() for reference and is not used by any
/// bound.
DensityMatrix isotropic(int d, double x);
double isotropic_entanglement_threshold(int d);

/// (1 - beta) sigma + beta |psi+><psi+| on 3 x 3 with
/// sigma = (I - G0)(x)(I - G0)/4 - (alpha/4) sum_{i=1..3} G_i (x) G_i.
DensityMatrix sigma_mixture(double alpha, double beta);

/// Maximally entangled vector sum_i |ii> / sqrt(d).
Eigen::VectorXcd max_entangled(int d);

}  // namespace nlb
