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

#include "nlb/states.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

namespace nlb {

namespace {

using cd = std::complex<double>;

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_unit_interval(const char* name, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError(std::string("parameter ") + name +
                          " must lie in [0, 1], got " + fmt_value(x));
  }
}

double real_trace(const Eigen::MatrixXcd& m, const char* what) {
  const cd tr = m.trace();
  if (std::abs(tr.imag()) > tol::kImagResidue) {
    throw ValidationError(std::string(what) + ": imaginary trace residue " +
                          fmt_value(tr.imag()) + " exceeds tolerance");
  }
  return tr.real();
}

}  // namespace

DensityMatrix::DensityMatrix(int dim_a, int dim_b, Eigen::MatrixXcd entries)
    : dim_a_(dim_a), dim_b_(dim_b), entries_(std::move(entries)) {
  if (dim_a < 2 || dim_b < 2) {
    throw ValidationError("dimension: dim_a and dim_b must be >= 2, got " +
                          std::to_string(dim_a) + " x " +
                          std::to_string(dim_b));
  }
  if (dim_a != dim_b) {
    throw ValidationError("dimension: only d x d states are supported, got " +
                          std::to_string(dim_a) + " x " +
                          std::to_string(dim_b));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (entries_.rows() != n || entries_.cols() != n) {
    throw ValidationError("dimension: expected a " + std::to_string(n) + " x " +
                          std::to_string(n) + " matrix, got " +
                          std::to_string(entries_.rows()) + " x " +
                          std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) {
    throw ValidationError("finite: matrix contains NaN or infinite entries");
  }
  const double herm_err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > tol::kHermitian) {
    throw ValidationError("hermitian: max |rho - rho^dagger| = " +
                          fmt_value(herm_err) + " exceeds 1e-12");
  }
  const cd tr = entries_.trace();
  if (std::abs(tr - cd(1.0, 0.0)) > tol::kTrace) {
    throw ValidationError("unit-trace: trace = " + fmt_value(tr.real()) +
                          (tr.imag() != 0.0 ? " + " + fmt_value(tr.imag()) + "i"
                                            : std::string()) +
                          " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                     Eigen::EigenvaluesOnly);
  min_eigenvalue_ = es.eigenvalues().minCoeff();
  if (min_eigenvalue_ < tol::kPsd) {
    throw ValidationError("positive-semidefinite: minimum eigenvalue " +
                          fmt_value(min_eigenvalue_) + " < -1e-9");
  }
}

const std::array<Eigen::Matrix2cd, 4>& pauli_basis() {
  static const std::array<Eigen::Matrix2cd, 4> basis = [] {
    std::array<Eigen::Matrix2cd, 4> b;
    const cd i(0.0, 1.0);
    b[0] << 1, 0, 0, 1;
    b[1] << 0, 1, 1, 0;
    b[2] << 0, -i, i, 0;
    b[3] << 1, 0, 0, -1;
    return b;
  }();
  return basis;
}

CorrelationMatrixT pauli_correlation(const DensityMatrix& rho) {
  if (rho.local_dim() != 2) {
    throw ValidationError("dimension: Pauli correlations need d = 2, got d = " +
                          std::to_string(rho.local_dim()));
  }
  const auto& p = pauli_basis();
  const Eigen::MatrixXcd& m = rho.matrix();
  auto expect = [&](int k, int l) {
    const Eigen::Matrix4cd op = Eigen::kroneckerProduct(p[k], p[l]);
    return 0.25 * real_trace(m * op, "pauli_correlation");
  };
  CorrelationMatrixT out;
  for (int k = 0; k < 3; ++k) {
    out.r(k) = expect(k + 1, 0);
    out.s(k) = expect(0, k + 1);
    for (int l = 0; l < 3; ++l) out.t(k, l) = expect(k + 1, l + 1);
  }
  return out;
}

GammaOperators gamma_operators(int d) {
  if (d < 2) {
    throw ValidationError("dimension: Gamma operators need d >= 2, got " +
                          std::to_string(d));
  }
  GammaOperators ops;
  ops.d = d;
  for (auto& g : ops.gamma) g = Eigen::MatrixXcd::Zero(d, d);
  const auto& p = pauli_basis();
  for (int block = 0; block < d / 2; ++block) {
    for (int alpha = 1; alpha <= 3; ++alpha) {
      ops.gamma[alpha].block<2, 2>(2 * block, 2 * block) = p[alpha];
    }
  }
  // Odd d: the trailing row/column of G1..G3 stays zero and G0 projects on it.
  if (d % 2 == 1) ops.gamma[0](d - 1, d - 1) = 1.0;
  return ops;
}

GammaCorrelation gamma_correlation(const DensityMatrix& rho,
                                   const GammaOperators& ops) {
  if (rho.local_dim() != ops.d) {
    throw ValidationError("dimension: state has d = " +
                          std::to_string(rho.local_dim()) +
                          " but Gamma operators have d = " +
                          std::to_string(ops.d));
  }
  GammaCorrelation out;
  out.d = ops.d;
  const Eigen::MatrixXcd& m = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Eigen::MatrixXcd op = Eigen::kroneckerProduct(ops.gamma[i], ops.gamma[j]);
      out.gamma(i, j) = real_trace(m * op, "gamma_correlation");
    }
  }
  return out;
}

Eigen::VectorXcd max_entangled(int d) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) psi(i * d + i) = amp;
  return psi;
}

DensityMatrix werner(double x) {
  require_unit_interval("x", x);
  Eigen::Vector4cd singlet = Eigen::Vector4cd::Zero();
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m = x * (singlet * singlet.adjoint()) +
                       ((1.0 - x) / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  return DensityMatrix(2, 2, std::move(m));
}

DensityMatrix bell_diagonal(double p1, double p2, double p3) {
  const auto& p = pauli_basis();
  const double coef[3] = {p1, p2, p3};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  for (int k = 0; k < 3; ++k) {
    m -= coef[k] * Eigen::kroneckerProduct(p[k + 1], p[k + 1]).eval();
  }
  m *= 0.25;
  return DensityMatrix(2, 2, std::move(m));
}

DensityMatrix isotropic(int d, double x) {
  if (d < 2) {
    throw ValidationError("dimension: isotropic state needs d >= 2, got " +
                          std::to_string(d));
  }
  require_unit_interval("x", x);
  const Eigen::VectorXcd psi = max_entangled(d);
  const double dd = static_cast<double>(d) * d;
  Eigen::MatrixXcd m = ((1.0 - x) / dd) * Eigen::MatrixXcd::Identity(d * d, d * d) +
                       x * (psi * psi.adjoint());
  return DensityMatrix(d, d, std::move(m));
}

double isotropic_entanglement_threshold(int d) {
  return (-1.0 + 9.0 / static_cast<double>(d)) / 8.0;
}

DensityMatrix sigma_mixture(double alpha, double beta) {
  constexpr int d = 3;
  if (!std::isfinite(alpha)) {
    throw ValidationError("parameter alpha must be finite");
  }
  require_unit_interval("beta", beta);
  const GammaOperators ops = gamma_operators(d);
  const Eigen::MatrixXcd complement = Eigen::MatrixXcd::Identity(d, d) - ops.gamma[0];
  Eigen::MatrixXcd sigma = 0.25 * Eigen::kroneckerProduct(complement, complement).eval();
  for (int i = 1; i <= 3; ++i) {
    sigma -= (alpha / 4.0) * Eigen::kroneckerProduct(ops.gamma[i], ops.gamma[i]).eval();
  }
  const Eigen::VectorXcd psi = max_entangled(d);
  Eigen::MatrixXcd m = (1.0 - beta) * sigma + beta * (psi * psi.adjoint());
  return DensityMatrix(d, d, std::move(m));
}

}  // namespace nlb
