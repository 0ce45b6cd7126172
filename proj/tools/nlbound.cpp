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

// nlbound: lower bounds on the maximal Bell violation of bipartite states.
//
// Exit codes: 0 success, 2 input or validation error, 3 computation-domain
// error (e.g. a threshold bracket without a sign change).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlb/bounds.hpp"
#include "nlb/scan.hpp"
#include "nlb/state_io.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;

struct SharedFlags {
  std::optional<int> quad_phi;
  std::optional<int> quad_theta;
  std::optional<int> coarse_steps;
  std::optional<double> refine_tol;
  std::string kernel = "both";
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  bool fast = false;

  nlb::SearchConfig search() const {
    nlb::SearchConfig cfg = fast ? nlb::SearchConfig::fast() : nlb::SearchConfig{};
    if (quad_phi) cfg.quad.n_phi = *quad_phi;
    if (quad_theta) cfg.quad.n_theta = *quad_theta;
    if (coarse_steps) cfg.coarse_steps = *coarse_steps;
    if (refine_tol) cfg.refine_tol = *refine_tol;
    cfg.validate();
    return cfg;
  }

  nlb::KernelChoice kernels() const {
    if (kernel == "both") return nlb::KernelChoice::Both;
    return nlb::kernel_variant_from_string(kernel) == nlb::KernelVariant::AsWritten
               ? nlb::KernelChoice::AsWritten
               : nlb::KernelChoice::Affine;
  }
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--quad-phi", f.quad_phi, "Gauss-Legendre nodes in the polar angle");
  cmd->add_option("--quad-theta", f.quad_theta, "uniform nodes in the azimuth");
  cmd->add_option("--coarse-steps", f.coarse_steps, "coarse search points per angle");
  cmd->add_option("--refine-tol", f.refine_tol, "final refinement step (radians)");
  cmd->add_option("--kernel", f.kernel, "d>=3 chord kernel")
      ->check(CLI::IsMember({"as-written", "affine", "both"}));
  cmd->add_option("--seed", f.seed, "seed for the finite-n oracle");
  cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_flag("--fast", f.fast, "reduced search and quadrature preset");
}

// State selection shared by `bound` and `chsh`.
struct StateFlags {
  std::string state_file;
  std::string family;
  double x = 1.0;
  int d = 3;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double alpha = 0.0, beta = 1.0;

  nlb::DensityMatrix load() const {
    if (!state_file.empty()) return nlb::read_density_file(state_file);
    if (family.empty()) throw nlb::ValidationError("give either --state FILE or --family NAME");
    switch (nlb::family_from_string(family)) {
      case nlb::Family::Werner: return nlb::werner(x);
      case nlb::Family::BellDiagonal: return nlb::bell_diagonal(p1, p2, p3);
      case nlb::Family::Isotropic: return nlb::isotropic(d, x);
      case nlb::Family::SigmaMixture: return nlb::sigma_mixture(alpha, beta);
      case nlb::Family::File: break;
    }
    throw nlb::ValidationError("family 'file' needs --state FILE");
  }
};

void add_state(CLI::App* cmd, StateFlags& s) {
  auto* file = cmd->add_option("--state", s.state_file, "density-matrix JSON file");
  cmd->add_option("--family", s.family, "werner | bell-diagonal | isotropic | sigma-mixture")
      ->excludes(file);
  cmd->add_option("--x", s.x, "mixing parameter (werner, isotropic)");
  cmd->add_option("--d", s.d, "local dimension (isotropic)");
  cmd->add_option("--p1", s.p1);
  cmd->add_option("--p2", s.p2);
  cmd->add_option("--p3", s.p3);
  cmd->add_option("--alpha", s.alpha, "sigma-mixture alpha");
  cmd->add_option("--beta", s.beta, "sigma-mixture beta");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw nlb::ValidationError(out + ": cannot open output file for writing");
  f << text;
  if (!f) throw nlb::ValidationError(out + ": write failed");
}

int run_bound(const StateFlags& st, const SharedFlags& sh, std::optional<int> finite_n) {
  const nlb::DensityMatrix rho = st.load();
  const nlb::SearchConfig cfg = sh.search();
  const nlb::BoundReport rep = nlb::detect_nonlocality(rho, cfg, sh.kernels());
  auto doc = nlohmann::ordered_json::parse(nlb::report_to_json(rep));
  if (finite_n) {
    double v = 0.0;
    if (rep.d == 2) {
      v = nlb::finite_n_value(nlb::pauli_correlation(rho), *finite_n, rep.best_region, sh.seed);
    } else {
      const auto g = nlb::gamma_correlation(rho, nlb::gamma_operators(rep.d));
      v = nlb::finite_n_value(g, *finite_n, rep.best_region, sh.seed, *rep.kernel_variant);
    }
    doc["finite_n"] = {{"n", *finite_n}, {"seed", sh.seed}, {"value", std::stod(nlb::format_float(v))}};
  }
  emit(doc.dump(2) + "\n", sh.out);
  return 0;
}

int run_chsh(const StateFlags& st, const SharedFlags& sh) {
  const nlb::DensityMatrix rho = st.load();
  const nlb::CorrelationMatrixT t = nlb::pauli_correlation(rho);
  nlohmann::ordered_json doc;
  doc["chsh"] = std::stod(nlb::format_float(nlb::chsh_bound(t)));
  doc["nonlocal"] = nlb::chsh_bound(t) > 1.0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int k = 0; k < 3; ++k) {
    rows.push_back({std::stod(nlb::format_float(t.t(k, 0))),
                    std::stod(nlb::format_float(t.t(k, 1))),
                    std::stod(nlb::format_float(t.t(k, 2)))});
  }
  doc["t"] = rows;
  emit(doc.dump(2) + "\n", sh.out);
  return 0;
}

struct ScanFlags {
  std::string family = "werner";
  nlb::ScanSpec spec;
  std::optional<double> fix[3];
};

int run_scan(ScanFlags& sf, const SharedFlags& sh) {
  nlb::ScanSpec spec = sf.spec;
  spec.family = nlb::family_from_string(sf.family);
  for (int a = 0; a < 3; ++a) spec.fix_p[a] = sf.fix[a];
  spec.search = sh.search();
  spec.kernels = sh.kernels();
  spec.format = sh.format == "json" ? nlb::OutputFormat::Json : nlb::OutputFormat::Csv;
  spec.validate();
  if (!sh.out.empty()) {
    // Fail on an unwritable path before spending time on the scan.
    std::ofstream probe(sh.out, std::ios::app);
    if (!probe) throw nlb::ValidationError(sh.out + ": cannot open output file for writing");
  }
  const nlb::ScanTable table = nlb::run_scan(spec);
  emit(spec.format == nlb::OutputFormat::Json ? nlb::render_json(table) : nlb::render_csv(table),
       sh.out);
  return 0;
}

struct ThresholdFlags {
  std::string family = "werner";
  int d = 3;
  double alpha = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double tol = 5e-4;
};

int run_threshold(const ThresholdFlags& tf, const SharedFlags& sh) {
  nlb::StateFactory factory;
  std::string parameter = "x";
  switch (nlb::family_from_string(tf.family)) {
    case nlb::Family::Werner:
      factory = [](double x) { return nlb::werner(x); };
      break;
    case nlb::Family::Isotropic:
      factory = [d = tf.d](double x) { return nlb::isotropic(d, x); };
      break;
    case nlb::Family::SigmaMixture:
      factory = [a = tf.alpha](double b) { return nlb::sigma_mixture(a, b); };
      parameter = "beta";
      break;
    default:
      throw nlb::ValidationError("threshold: family must be werner, isotropic or sigma-mixture");
  }
  const nlb::ThresholdResult r =
      nlb::find_threshold(factory, tf.lo, tf.hi, tf.tol, sh.search(), sh.kernels());
  nlohmann::ordered_json doc;
  doc["family"] = tf.family;
  if (tf.family == "isotropic") doc["d"] = tf.d;
  if (tf.family == "sigma-mixture") doc["alpha"] = tf.alpha;
  doc["parameter"] = parameter;
  doc["threshold"] = std::stod(nlb::format_float(r.value));
  doc["bracket"] = {std::stod(nlb::format_float(r.lo)), std::stod(nlb::format_float(r.hi))};
  doc["iterations"] = r.iterations;
  doc["kernel_variant"] = r.kernel_variant ? nlohmann::ordered_json(nlb::to_string(*r.kernel_variant))
                                           : nlohmann::ordered_json(nullptr);
  emit(doc.dump(2) + "\n", sh.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds on the maximal Bell-inequality violation of bipartite states"};
  app.require_subcommand(1);

  SharedFlags bound_sh, scan_sh, thr_sh, chsh_sh;
  StateFlags bound_st, chsh_st;
  std::optional<int> finite_n;
  ScanFlags scan_f;
  ThresholdFlags thr_f;

  auto* bound = app.add_subcommand("bound", "maximise the lower bound for one state");
  add_state(bound, bound_st);
  add_shared(bound, bound_sh);
  bound->add_option("--finite-n", finite_n,
                    "also evaluate the n-setting expression at the best regions");

  auto* scan = app.add_subcommand("scan", "sweep a state family and tabulate bounds");
  add_shared(scan, scan_sh);
  scan->add_option("--family", scan_f.family, "werner | bell-diagonal | isotropic | sigma-mixture | file");
  scan->add_option("--x-min", scan_f.spec.x.lo);
  scan->add_option("--x-max", scan_f.spec.x.hi);
  scan->add_option("--x-steps", scan_f.spec.x.steps);
  scan->add_option("--d", scan_f.spec.d);
  scan->add_option("--p-min", scan_f.spec.p.lo);
  scan->add_option("--p-max", scan_f.spec.p.hi);
  scan->add_option("--p-steps", scan_f.spec.p.steps);
  scan->add_option("--fix-p1", scan_f.fix[0], "cross section at fixed p1");
  scan->add_option("--fix-p2", scan_f.fix[1], "cross section at fixed p2");
  scan->add_option("--fix-p3", scan_f.fix[2], "cross section at fixed p3");
  scan->add_option("--alpha-min", scan_f.spec.alpha.lo);
  scan->add_option("--alpha-max", scan_f.spec.alpha.hi);
  scan->add_option("--alpha-steps", scan_f.spec.alpha.steps);
  scan->add_option("--beta-min", scan_f.spec.beta.lo);
  scan->add_option("--beta-max", scan_f.spec.beta.hi);
  scan->add_option("--beta-steps", scan_f.spec.beta.steps);
  scan->add_option("--state", scan_f.spec.files, "state files (family file)");

  auto* thr = app.add_subcommand("threshold", "bisect for the parameter where the bound crosses 1");
  add_shared(thr, thr_sh);
  thr->add_option("--family", thr_f.family, "werner | isotropic | sigma-mixture (free beta)");
  thr->add_option("--d", thr_f.d);
  thr->add_option("--alpha", thr_f.alpha, "fixed alpha for sigma-mixture");
  thr->add_option("--lo", thr_f.lo, "bracket start");
  thr->add_option("--hi", thr_f.hi, "bracket end");
  thr->add_option("--tol", thr_f.tol, "bracket width at termination");

  auto* chsh = app.add_subcommand("chsh", "CHSH maximal violation of a two-qubit state");
  add_state(chsh, chsh_st);
  add_shared(chsh, chsh_sh);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (*bound) return run_bound(bound_st, bound_sh, finite_n);
    if (*scan) return run_scan(scan_f, scan_sh);
    if (*thr) return run_threshold(thr_f, thr_sh);
    if (*chsh) return run_chsh(chsh_st, chsh_sh);
  } catch (const nlb::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlb::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
