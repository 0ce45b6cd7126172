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

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "nlb/quadrature.hpp"
#include "nlb/states.hpp"

namespace nlb {

/// Measurement regions: A-side directions range over `ab`, B-side over `cd`.
struct RegionPair {
  Band ab;
  Band cd;
};

struct SearchConfig {
  int coarse_steps = 12;     // grid points per angle are coarse_steps + 1
  int refine_iters = 60;     // coordinate-descent sweeps
  double refine_tol = 1e-4;  // final step length in radians
  QuadratureConfig quad;

  void validate() const;

  /// Reduced preset (coarse 8, quadrature 16 x 32) for smoke runs.
  static SearchConfig fast();
};

/// Chord kernel used by the d x d bound.
///   AsWritten: Euclidean norm of the full 4-vector gamma (x - y).
///   Affine:    [gamma (x - y)]_0 + |trailing three components|.
enum class KernelVariant { AsWritten, Affine };

std::string to_string(KernelVariant v);
KernelVariant kernel_variant_from_string(const std::string& s);

/// The common shape of both lower bounds:
///
///   B(ab, cd) = bc |<m_ab, M m_cd>| / (s_ab s_cd)
///             + cc chord(M, cd) / s_cd^2 + cc chord(M^T, ab) / s_ab^2
///
/// with m the (possibly lifted) moment vectors and s the band measures.
/// Two qubits: M = T, bc = 4, cc = 2, no lift. d x d: M = gamma, bc = 1,
/// cc = 1/2, affine lift.
struct BoundForm {
  Eigen::MatrixXd m;
  Lift lift = Lift::None;
  ChordNorm norm = ChordNorm::Euclidean;
  double bilinear_coef = 4.0;
  double chord_coef = 2.0;

  static BoundForm two_qubit(const CorrelationMatrixT& t);
  static BoundForm qudit(const GammaCorrelation& g, KernelVariant variant);
};

/// Value of the bound at a fixed region pair.
double bound_value(const BoundForm& form, const RegionPair& regions,
                   const QuadratureConfig& quad);

struct SearchResult {
  double value = 0.0;
  RegionPair best;
  int evaluations = 0;
};

/// Coarse triangular grid over (a < b) x (c < d) followed by coordinate
/// descent with step halving. Ties keep the first pair in scan order.
SearchResult maximize_bound(const BoundForm& form, const SearchConfig& cfg);

struct BoundReport {
  double bound = 0.0;
  RegionPair best_region{Band(0.0, 1.0), Band(0.0, 1.0)};
  std::optional<double> chsh;                   // two qubits only
  std::optional<KernelVariant> kernel_variant;  // d >= 3 only
  int d = 2;
  QuadratureConfig quad;
  SearchConfig search;

  /// Violation certificate: bound > 1. A bound <= 1 is inconclusive.
  bool nonlocal() const { return bound > 1.0; }
};

double theorem1_value(const CorrelationMatrixT& t, const RegionPair& regions,
                      const QuadratureConfig& quad);
BoundReport theorem1_max(const CorrelationMatrixT& t, const SearchConfig& cfg);

/// Maximal CHSH value sqrt(tau1^2 + tau2^2) from the two largest singular
/// values of 4 t, normalised so the local bound is 1.
double chsh_bound(const CorrelationMatrixT& t);

double theorem2_value(const GammaCorrelation& g, const RegionPair& regions,
                      const QuadratureConfig& quad, KernelVariant variant);
BoundReport theorem2_max(const GammaCorrelation& g, const SearchConfig& cfg,
                         KernelVariant variant);

/// Discrete n-setting Bell expression
///
///   (bc/n^2) [ |sum_ij <a_i, M b_j>| + sum_{i<j} k(M (b_i - b_j))
///                                    + sum_{i<j} k(M^T (a_i - a_j)) ]
///
/// evaluated on explicit unit directions (columns). Under the lift each
/// direction v enters as (1, v).
double finite_n_from_directions(const BoundForm& form, const Eigen::Matrix3Xd& a_dirs,
                                const Eigen::Matrix3Xd& b_dirs);

/// n i.i.d. directions per side drawn from the surface measure restricted to
/// each band, seeded deterministically.
Eigen::Matrix3Xd sample_band(const Band& band, int n, std::uint64_t seed);

double finite_n_value(const CorrelationMatrixT& t, int n, const RegionPair& regions,
                      std::uint64_t seed);
double finite_n_value(const GammaCorrelation& g, int n, const RegionPair& regions,
                      std::uint64_t seed, KernelVariant variant = KernelVariant::AsWritten);

/// Which d x d kernels detect_nonlocality tries.
enum class KernelChoice { AsWritten, Affine, Both };

/// d = 2: two-qubit bound plus CHSH. d >= 3: d x d bound under the chosen
/// kernel(s), reporting the larger value and which kernel produced it.
BoundReport detect_nonlocality(const DensityMatrix& rho, const SearchConfig& cfg,
                               KernelChoice kernels = KernelChoice::Both);

}  // namespace nlb
