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

#include "nlb/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace nlb {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Per-band ingredients of the bound; chord values are stored unnormalised.
struct BandTerms {
  double measure = 0.0;
  Eigen::VectorXd moment;
  double chord_m = 0.0;   // chord(M) when the band is on the B side
  double chord_mt = 0.0;  // chord(M^T) when the band is on the A side
};

bool is_symmetric(const Eigen::MatrixXd& m) { return m == m.transpose(); }

BandTerms band_terms(const BoundForm& form, const Band& band, const QuadratureConfig& quad,
                     bool symmetric) {
  const BandGrid grid = build_grid(band, quad);
  BandTerms bt;
  bt.measure = grid.weights.sum();
  bt.moment = moment_vector(grid, form.lift);
  bt.chord_m = chord_integral(form.m, grid, form.lift, form.norm);
  bt.chord_mt = symmetric ? bt.chord_m
                          : chord_integral(form.m.transpose(), grid, form.lift, form.norm);
  return bt;
}

double combine(const BoundForm& form, const BandTerms& ab, const BandTerms& cd) {
  const double bil = std::abs(ab.moment.dot(form.m * cd.moment)) / (ab.measure * cd.measure);
  return form.bilinear_coef * bil + form.chord_coef * cd.chord_m / (cd.measure * cd.measure) +
         form.chord_coef * ab.chord_mt / (ab.measure * ab.measure);
}

// Euclidean norm of the image, or the affine-max functional on 4-vectors.
double chord_kernel(const BoundForm& form, const Eigen::VectorXd& u) {
  if (form.norm == ChordNorm::AffineMax) return u(0) + u.tail(3).norm();
  return u.norm();
}

Eigen::MatrixXd lifted(const Eigen::Matrix3Xd& dirs, Lift lift) {
  if (lift == Lift::None) return dirs;
  Eigen::MatrixXd out(4, dirs.cols());
  out.row(0).setOnes();
  out.bottomRows(3) = dirs;
  return out;
}

Eigen::Matrix3Xd sample_band_with(const Band& band, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double z_hi = std::cos(band.lo());
  const double z_lo = std::cos(band.hi());
  Eigen::Matrix3Xd out(3, n);
  for (int k = 0; k < n; ++k) {
    // Uniform in cos(phi) is uniform in the surface measure.
    const double z = z_lo + (z_hi - z_lo) * unit(rng);
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.col(k) << r * std::sin(theta), r * std::cos(theta), z;
  }
  return out;
}

double finite_n_sampled(const BoundForm& form, int n, const RegionPair& regions,
                        std::uint64_t seed) {
  if (n < 2) {
    throw ValidationError("finite_n_value: n must be >= 2, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  const Eigen::Matrix3Xd a = sample_band_with(regions.ab, n, rng);
  const Eigen::Matrix3Xd b = sample_band_with(regions.cd, n, rng);
  return finite_n_from_directions(form, a, b);
}

BoundReport report_from(const SearchResult& r, const SearchConfig& cfg, int d) {
  BoundReport rep;
  rep.bound = r.value;
  rep.best_region = r.best;
  rep.d = d;
  rep.quad = cfg.quad;
  rep.search = cfg;
  return rep;
}

}  // namespace

void SearchConfig::validate() const {
  if (coarse_steps < 4) {
    throw ValidationError("search: coarse_steps must be >= 4, got " +
                          std::to_string(coarse_steps));
  }
  if (refine_iters < 0) {
    throw ValidationError("search: refine_iters must be >= 0, got " +
                          std::to_string(refine_iters));
  }
  if (!(refine_tol > 0.0)) throw ValidationError("search: refine_tol must be > 0");
  quad.validate();
}

SearchConfig SearchConfig::fast() {
  SearchConfig cfg;
  cfg.coarse_steps = 8;
  cfg.quad = {16, 32};
  return cfg;
}

std::string to_string(KernelVariant v) {
  return v == KernelVariant::AsWritten ? "as-written" : "affine";
}

KernelVariant kernel_variant_from_string(const std::string& s) {
  if (s == "as-written") return KernelVariant::AsWritten;
  if (s == "affine") return KernelVariant::Affine;
  throw ValidationError("kernel: expected 'as-written' or 'affine', got '" + s + "'");
}

BoundForm BoundForm::two_qubit(const CorrelationMatrixT& t) {
  return BoundForm{t.t, Lift::None, ChordNorm::Euclidean, 4.0, 2.0};
}

BoundForm BoundForm::qudit(const GammaCorrelation& g, KernelVariant variant) {
  return BoundForm{g.gamma, Lift::Affine,
                   variant == KernelVariant::AsWritten ? ChordNorm::Euclidean
                                                       : ChordNorm::AffineMax,
                   1.0, 0.5};
}

double bound_value(const BoundForm& form, const RegionPair& regions,
                   const QuadratureConfig& quad) {
  quad.validate();
  const bool sym = is_symmetric(form.m);
  const BandTerms ab = band_terms(form, regions.ab, quad, sym);
  const BandTerms cd = regions.cd == regions.ab ? ab : band_terms(form, regions.cd, quad, sym);
  return combine(form, ab, cd);
}

SearchResult maximize_bound(const BoundForm& form, const SearchConfig& cfg) {
  cfg.validate();
  const bool sym = is_symmetric(form.m);

  std::map<std::pair<double, double>, BandTerms> cache;
  int evaluations = 0;
  auto terms = [&](double lo, double hi) -> const BandTerms& {
    auto key = std::make_pair(lo, hi);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, band_terms(form, Band(lo, hi), cfg.quad, sym)).first;
    }
    return it->second;
  };

  // Coarse scan over the triangular grid.
  const int steps = cfg.coarse_steps;
  std::vector<double> pts(steps + 1);
  for (int k = 0; k <= steps; ++k) pts[k] = kHalfPi * k / steps;
  pts[steps] = kHalfPi;
  std::vector<std::pair<double, double>> bands;
  for (int i = 0; i <= steps; ++i) {
    for (int j = i + 1; j <= steps; ++j) bands.emplace_back(pts[i], pts[j]);
  }
  for (const auto& [lo, hi] : bands) terms(lo, hi);

  std::array<double, 4> best_p{bands[0].first, bands[0].second, bands[0].first,
                               bands[0].second};
  double best = -1.0;
  for (const auto& ab : bands) {
    const BandTerms& tab = terms(ab.first, ab.second);
    for (const auto& cd : bands) {
      const double v = combine(form, tab, terms(cd.first, cd.second));
      ++evaluations;
      if (v > best) {
        best = v;
        best_p = {ab.first, ab.second, cd.first, cd.second};
      }
    }
  }

  // Coordinate descent on (a, b, c, d) with step halving.
  double step = kHalfPi / steps;
  for (int sweep = 0; sweep < cfg.refine_iters && step >= cfg.refine_tol; ++sweep) {
    bool improved = false;
    for (int k = 0; k < 4; ++k) {
      for (double dir : {+1.0, -1.0}) {
        auto cand = best_p;
        cand[k] = std::clamp(cand[k] + dir * step, 0.0, kHalfPi);
        if (cand[k] == best_p[k]) continue;
        if (!(cand[0] < cand[1]) || !(cand[2] < cand[3])) continue;
        const double v = combine(form, terms(cand[0], cand[1]), terms(cand[2], cand[3]));
        ++evaluations;
        if (v > best) {
          best = v;
          best_p = cand;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  return SearchResult{best, RegionPair{Band(best_p[0], best_p[1]), Band(best_p[2], best_p[3])},
                      evaluations};
}

double theorem1_value(const CorrelationMatrixT& t, const RegionPair& regions,
                      const QuadratureConfig& quad) {
  return bound_value(BoundForm::two_qubit(t), regions, quad);
}

BoundReport theorem1_max(const CorrelationMatrixT& t, const SearchConfig& cfg) {
  BoundReport rep = report_from(maximize_bound(BoundForm::two_qubit(t), cfg), cfg, 2);
  rep.chsh = chsh_bound(t);
  return rep;
}

double chsh_bound(const CorrelationMatrixT& t) {
  const Eigen::Matrix3d corr = 4.0 * t.t;
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(corr).singularValues();
  // JacobiSVD returns singular values in decreasing order.
  return std::sqrt(sv(0) * sv(0) + sv(1) * sv(1));
}

double theorem2_value(const GammaCorrelation& g, const RegionPair& regions,
                      const QuadratureConfig& quad, KernelVariant variant) {
  return bound_value(BoundForm::qudit(g, variant), regions, quad);
}

BoundReport theorem2_max(const GammaCorrelation& g, const SearchConfig& cfg,
                         KernelVariant variant) {
  BoundReport rep = report_from(maximize_bound(BoundForm::qudit(g, variant), cfg), cfg, g.d);
  rep.kernel_variant = variant;
  return rep;
}

double finite_n_from_directions(const BoundForm& form, const Eigen::Matrix3Xd& a_dirs,
                                const Eigen::Matrix3Xd& b_dirs) {
  const Eigen::Index n = a_dirs.cols();
  if (n < 2 || b_dirs.cols() != n) {
    throw ValidationError("finite_n_value: need n >= 2 directions on each side");
  }
  const Eigen::MatrixXd a = lifted(a_dirs, form.lift);
  const Eigen::MatrixXd b = lifted(b_dirs, form.lift);
  const Eigen::MatrixXd mt = form.m.transpose();

  const double corr = std::abs(a.rowwise().sum().dot(form.m * b.rowwise().sum()));
  const Eigen::MatrixXd mb = form.m * b;
  const Eigen::MatrixXd mta = mt * a;
  double chord_b = 0.0;
  double chord_a = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      chord_b += chord_kernel(form, mb.col(i) - mb.col(j));
      chord_a += chord_kernel(form, mta.col(i) - mta.col(j));
    }
  }
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return form.bilinear_coef / nn * (corr + chord_b + chord_a);
}

Eigen::Matrix3Xd sample_band(const Band& band, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_band_with(band, n, rng);
}

double finite_n_value(const CorrelationMatrixT& t, int n, const RegionPair& regions,
                      std::uint64_t seed) {
  return finite_n_sampled(BoundForm::two_qubit(t), n, regions, seed);
}

double finite_n_value(const GammaCorrelation& g, int n, const RegionPair& regions,
                      std::uint64_t seed, KernelVariant variant) {
  return finite_n_sampled(BoundForm::qudit(g, variant), n, regions, seed);
}

BoundReport detect_nonlocality(const DensityMatrix& rho, const SearchConfig& cfg,
                               KernelChoice kernels) {
  if (rho.local_dim() == 2) return theorem1_max(pauli_correlation(rho), cfg);

  const GammaCorrelation g = gamma_correlation(rho, gamma_operators(rho.local_dim()));
  if (kernels == KernelChoice::AsWritten) return theorem2_max(g, cfg, KernelVariant::AsWritten);
  if (kernels == KernelChoice::Affine) return theorem2_max(g, cfg, KernelVariant::Affine);
  BoundReport written = theorem2_max(g, cfg, KernelVariant::AsWritten);
  BoundReport affine = theorem2_max(g, cfg, KernelVariant::Affine);
  return affine.bound > written.bound ? affine : written;
}

}  // namespace nlb
