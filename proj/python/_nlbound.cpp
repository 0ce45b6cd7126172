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
#include <optional>
#include <string>
#include <utility>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlb/bounds.hpp"
#include "nlb/scan.hpp"

namespace py = pybind11;

namespace {

using BandTuple = std::pair<double, double>;

nlb::DensityMatrix to_density(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (m.cols() != n || d * d != n) {
    throw nlb::ValidationError("density matrix must be square with side d*d, got " +
                               std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  }
  return nlb::DensityMatrix(d, d, m);
}

nlb::CorrelationMatrixT to_t(const Eigen::Matrix3d& t) {
  nlb::CorrelationMatrixT c;
  c.t = t;
  return c;
}

nlb::GammaCorrelation to_gamma(const Eigen::Matrix4d& g) {
  nlb::GammaCorrelation c;
  c.gamma = g;
  return c;
}

nlb::RegionPair regions(const BandTuple& ab, const BandTuple& cd) {
  return {nlb::Band(ab.first, ab.second), nlb::Band(cd.first, cd.second)};
}

nlb::SearchConfig search_config(bool fast, std::optional<int> n_phi, std::optional<int> n_theta,
                                std::optional<int> coarse_steps) {
  nlb::SearchConfig cfg = fast ? nlb::SearchConfig::fast() : nlb::SearchConfig{};
  if (n_phi) cfg.quad.n_phi = *n_phi;
  if (n_theta) cfg.quad.n_theta = *n_theta;
  if (coarse_steps) cfg.coarse_steps = *coarse_steps;
  cfg.validate();
  return cfg;
}

nlb::KernelChoice kernel_choice(const std::string& s) {
  if (s == "both") return nlb::KernelChoice::Both;
  return nlb::kernel_variant_from_string(s) == nlb::KernelVariant::AsWritten
             ? nlb::KernelChoice::AsWritten
             : nlb::KernelChoice::Affine;
}

py::dict report_dict(const nlb::BoundReport& r) {
  py::dict out;
  out["d"] = r.d;
  out["bound"] = r.bound;
  out["nonlocal"] = r.nonlocal();
  out["best_region"] =
      py::make_tuple(py::make_tuple(r.best_region.ab.lo(), r.best_region.ab.hi()),
                     py::make_tuple(r.best_region.cd.lo(), r.best_region.cd.hi()));
  out["chsh"] = r.chsh ? py::object(py::float_(*r.chsh)) : py::object(py::none());
  out["kernel_variant"] = r.kernel_variant ? py::object(py::str(nlb::to_string(*r.kernel_variant)))
                                           : py::object(py::none());
  return out;
}

}  // namespace

PYBIND11_MODULE(_nlbound, m) {
  m.doc() = "Lower bounds on the maximal Bell-inequality violation of bipartite states";

  py::register_exception<nlb::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<nlb::DomainError>(m, "DomainError", PyExc_RuntimeError);

  m.def("werner", [](double x) { return nlb::werner(x).matrix(); }, py::arg("x"));
  m.def("bell_diagonal",
        [](double p1, double p2, double p3) { return nlb::bell_diagonal(p1, p2, p3).matrix(); },
        py::arg("p1"), py::arg("p2"), py::arg("p3"));
  m.def("isotropic", [](int d, double x) { return nlb::isotropic(d, x).matrix(); },
        py::arg("d"), py::arg("x"));
  m.def("sigma_mixture",
        [](double a, double b) { return nlb::sigma_mixture(a, b).matrix(); }, py::arg("alpha"),
        py::arg("beta"));

  m.def("pauli_correlation",
        [](const Eigen::MatrixXcd& rho) { return nlb::pauli_correlation(to_density(rho)).t; },
        py::arg("rho"), "3x3 correlation matrix t_kl = Tr(rho s_k (x) s_l) / 4");
  m.def(
      "gamma_correlation",
      [](const Eigen::MatrixXcd& rho) {
        const auto dm = to_density(rho);
        return nlb::gamma_correlation(dm, nlb::gamma_operators(dm.local_dim())).gamma;
      },
      py::arg("rho"), "4x4 block-Pauli correlation matrix");

  m.def("chsh_bound", [](const Eigen::Matrix3d& t) { return nlb::chsh_bound(to_t(t)); },
        py::arg("t"));

  m.def(
      "band_measure",
      [](double lo, double hi, int n_phi, int n_theta) {
        return nlb::band_measure(nlb::Band(lo, hi), {n_phi, n_theta});
      },
      py::arg("lo"), py::arg("hi"), py::arg("n_phi") = 24, py::arg("n_theta") = 48);

  m.def(
      "theorem1_value",
      [](const Eigen::Matrix3d& t, BandTuple ab, BandTuple cd, int n_phi, int n_theta) {
        return nlb::theorem1_value(to_t(t), regions(ab, cd), {n_phi, n_theta});
      },
      py::arg("t"), py::arg("ab"), py::arg("cd"), py::arg("n_phi") = 24, py::arg("n_theta") = 48);
  m.def(
      "theorem1_max",
      [](const Eigen::Matrix3d& t, bool fast, std::optional<int> n_phi,
         std::optional<int> n_theta, std::optional<int> coarse_steps) {
        return report_dict(
            nlb::theorem1_max(to_t(t), search_config(fast, n_phi, n_theta, coarse_steps)));
      },
      py::arg("t"), py::arg("fast") = false, py::arg("n_phi") = py::none(),
      py::arg("n_theta") = py::none(), py::arg("coarse_steps") = py::none());

  m.def(
      "theorem2_value",
      [](const Eigen::Matrix4d& g, BandTuple ab, BandTuple cd, const std::string& kernel,
         int n_phi, int n_theta) {
        return nlb::theorem2_value(to_gamma(g), regions(ab, cd), {n_phi, n_theta},
                                   nlb::kernel_variant_from_string(kernel));
      },
      py::arg("gamma"), py::arg("ab"), py::arg("cd"), py::arg("kernel") = "as-written",
      py::arg("n_phi") = 24, py::arg("n_theta") = 48);
  m.def(
      "theorem2_max",
      [](const Eigen::Matrix4d& g, const std::string& kernel, bool fast,
         std::optional<int> n_phi, std::optional<int> n_theta, std::optional<int> coarse_steps) {
        return report_dict(nlb::theorem2_max(to_gamma(g),
                                             search_config(fast, n_phi, n_theta, coarse_steps),
                                             nlb::kernel_variant_from_string(kernel)));
      },
      py::arg("gamma"), py::arg("kernel") = "as-written", py::arg("fast") = false,
      py::arg("n_phi") = py::none(), py::arg("n_theta") = py::none(),
      py::arg("coarse_steps") = py::none());

  m.def(
      "detect_nonlocality",
      [](const Eigen::MatrixXcd& rho, const std::string& kernel, bool fast,
         std::optional<int> n_phi, std::optional<int> n_theta, std::optional<int> coarse_steps) {
        const auto cfg = search_config(fast, n_phi, n_theta, coarse_steps);
        const auto choice = kernel_choice(kernel);
        const auto dm = to_density(rho);
        nlb::BoundReport r;
        {
          py::gil_scoped_release release;
          r = nlb::detect_nonlocality(dm, cfg, choice);
        }
        return report_dict(r);
      },
      py::arg("rho"), py::arg("kernel") = "both", py::arg("fast") = false,
      py::arg("n_phi") = py::none(), py::arg("n_theta") = py::none(),
      py::arg("coarse_steps") = py::none());

  m.def(
      "finite_n_value",
      [](const Eigen::Matrix3d& t, int n, BandTuple ab, BandTuple cd, std::uint64_t seed) {
        return nlb::finite_n_value(to_t(t), n, regions(ab, cd), seed);
      },
      py::arg("t"), py::arg("n"), py::arg("ab"), py::arg("cd"), py::arg("seed") = 1);

  m.def(
      "find_threshold",
      [](const std::string& family, double lo, double hi, double tol, int d, double alpha,
         const std::string& kernel, bool fast) {
        nlb::StateFactory factory;
        switch (nlb::family_from_string(family)) {
          case nlb::Family::Werner:
            factory = [](double x) { return nlb::werner(x); };
            break;
          case nlb::Family::Isotropic:
            factory = [d](double x) { return nlb::isotropic(d, x); };
            break;
          case nlb::Family::SigmaMixture:
            factory = [alpha](double b) { return nlb::sigma_mixture(alpha, b); };
            break;
          default:
            throw nlb::ValidationError("family must be werner, isotropic or sigma-mixture");
        }
        const auto cfg = search_config(fast, std::nullopt, std::nullopt, std::nullopt);
        const auto choice = kernel_choice(kernel);
        nlb::ThresholdResult r;
        {
          py::gil_scoped_release release;
          r = nlb::find_threshold(factory, lo, hi, tol, cfg, choice);
        }
        py::dict out;
        out["threshold"] = r.value;
        out["bracket"] = py::make_tuple(r.lo, r.hi);
        out["iterations"] = r.iterations;
        out["kernel_variant"] = r.kernel_variant
                                    ? py::object(py::str(nlb::to_string(*r.kernel_variant)))
                                    : py::object(py::none());
        return out;
      },
      py::arg("family"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("tol") = 5e-4,
      py::arg("d") = 3, py::arg("alpha") = 0.0, py::arg("kernel") = "both",
      py::arg("fast") = false);
}
