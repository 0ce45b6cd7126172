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

#include "nlb/scan.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "nlb/parallel.hpp"
#include "nlb/state_io.hpp"

namespace nlb {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* const kSkipped = "skipped: ";

std::string flag(bool b) { return b ? "true" : "false"; }

// A grid point: its parameter cells and the state it denotes.
struct Point {
  std::vector<std::string> params;
  std::function<DensityMatrix()> make;
};

std::vector<std::string> columns_for(Family f) {
  switch (f) {
    case Family::Werner:
      return {"x", "bound_t1", "bound_chsh", "nonlocal", "status"};
    case Family::BellDiagonal:
      return {"p1", "p2", "p3", "bound_t1", "bound_chsh", "nonlocal", "status"};
    case Family::Isotropic:
      return {"d", "x", "bound_t2", "kernel", "nonlocal", "status"};
    case Family::SigmaMixture:
      return {"alpha", "beta", "bound_t2", "kernel", "nonlocal", "status"};
    case Family::File:
      return {"file", "d", "bound", "bound_chsh", "kernel", "nonlocal", "status"};
  }
  return {};
}

std::vector<Point> grid_points(const ScanSpec& spec) {
  std::vector<Point> pts;
  switch (spec.family) {
    case Family::Werner:
      for (int k = 0; k < spec.x.steps; ++k) {
        const double x = spec.x.at(k);
        pts.push_back({{format_float(x)}, [x] { return werner(x); }});
      }
      break;
    case Family::Isotropic:
      for (int k = 0; k < spec.x.steps; ++k) {
        const double x = spec.x.at(k);
        const int d = spec.d;
        pts.push_back({{std::to_string(d), format_float(x)}, [d, x] { return isotropic(d, x); }});
      }
      break;
    case Family::BellDiagonal: {
      std::array<std::vector<double>, 3> axes;
      for (int a = 0; a < 3; ++a) {
        if (spec.fix_p[a]) {
          axes[a] = {*spec.fix_p[a]};
        } else {
          for (int k = 0; k < spec.p.steps; ++k) axes[a].push_back(spec.p.at(k));
        }
      }
      for (double p1 : axes[0]) {
        for (double p2 : axes[1]) {
          for (double p3 : axes[2]) {
            pts.push_back({{format_float(p1), format_float(p2), format_float(p3)},
                           [=] { return bell_diagonal(p1, p2, p3); }});
          }
        }
      }
      break;
    }
    case Family::SigmaMixture:
      for (int i = 0; i < spec.alpha.steps; ++i) {
        for (int j = 0; j < spec.beta.steps; ++j) {
          const double a = spec.alpha.at(i);
          const double b = spec.beta.at(j);
          pts.push_back({{format_float(a), format_float(b)}, [a, b] { return sigma_mixture(a, b); }});
        }
      }
      break;
    case Family::File:
      for (const auto& f : spec.files) {
        pts.push_back({{f}, [f] { return read_density_file(f); }});
      }
      break;
  }
  return pts;
}

std::vector<std::string> evaluate_point(const ScanSpec& spec, const Point& pt) {
  std::vector<std::string> row = pt.params;
  const bool qudit_family =
      spec.family == Family::Isotropic || spec.family == Family::SigmaMixture;
  const std::size_t blanks = columns_for(spec.family).size() - pt.params.size() - 1;
  try {
    const DensityMatrix rho = pt.make();
    const BoundReport rep = detect_nonlocality(rho, spec.search, spec.kernels);
    if (spec.family == Family::File) row.push_back(std::to_string(rep.d));
    row.push_back(format_float(rep.bound));
    if (!qudit_family) row.push_back(rep.chsh ? format_float(*rep.chsh) : "");
    if (qudit_family || spec.family == Family::File) {
      row.push_back(rep.kernel_variant ? to_string(*rep.kernel_variant) : "");
    }
    row.push_back(flag(rep.nonlocal()));
    row.push_back("ok");
  } catch (const ValidationError& e) {
    row.resize(pt.params.size());
    row.insert(row.end(), blanks, "");
    row.push_back(std::string(kSkipped) + e.what());
  }
  return row;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json json_cell(const std::string& column, const std::string& cell) {
  if (cell.empty()) return nullptr;
  if (cell == "true") return true;
  if (cell == "false") return false;
  if (column == "status" || column == "kernel" || column == "file") return cell;
  return std::stod(cell);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Werner: return "werner";
    case Family::BellDiagonal: return "bell-diagonal";
    case Family::Isotropic: return "isotropic";
    case Family::SigmaMixture: return "sigma-mixture";
    case Family::File: return "file";
  }
  return "";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::Werner, Family::BellDiagonal, Family::Isotropic,
                   Family::SigmaMixture, Family::File}) {
    if (to_string(f) == s) return f;
  }
  throw ValidationError("family: unknown family '" + s + "'");
}

void Range::validate(const char* name) const {
  if (steps < 1) {
    throw ValidationError(std::string(name) + ": steps must be >= 1, got " +
                          std::to_string(steps));
  }
  if (!(std::isfinite(lo) && std::isfinite(hi)) || hi < lo) {
    throw ValidationError(std::string(name) + ": empty or invalid range [" + format_float(lo) +
                          ", " + format_float(hi) + "]");
  }
}

double Range::at(int k) const {
  if (steps == 1) return lo;
  if (k == steps - 1) return hi;
  return lo + (hi - lo) * k / (steps - 1);
}

void ScanSpec::validate() const {
  search.validate();
  switch (family) {
    case Family::Werner: x.validate("x"); break;
    case Family::Isotropic:
      x.validate("x");
      if (d < 2) throw ValidationError("d must be >= 2, got " + std::to_string(d));
      break;
    case Family::BellDiagonal: p.validate("p"); break;
    case Family::SigmaMixture:
      alpha.validate("alpha");
      beta.validate("beta");
      break;
    case Family::File:
      if (files.empty()) throw ValidationError("file scan needs at least one --state FILE");
      break;
  }
}

std::size_t scan_size(const ScanSpec& spec) { return grid_points(spec).size(); }

ScanTable run_scan(const ScanSpec& spec) {
  spec.validate();
  const std::vector<Point> pts = grid_points(spec);
  ScanTable table{columns_for(spec.family), std::vector<std::vector<std::string>>(pts.size())};
  parallel_for(pts.size(), [&](std::size_t k) { table.rows[k] = evaluate_point(spec, pts[k]); });
  return table;
}

std::string render_csv(const ScanTable& table) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << csv_cell(cells[i]);
    }
    os << '\n';
  };
  line(table.columns);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

std::string render_json(const ScanTable& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      obj[table.columns[i]] = json_cell(table.columns[i], r[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

ThresholdResult find_threshold(const StateFactory& family, double lo, double hi, double tol,
                               const SearchConfig& cfg, KernelChoice kernels) {
  if (!(lo < hi)) {
    throw ValidationError("threshold: bracket must satisfy lo < hi, got [" + format_float(lo) +
                          ", " + format_float(hi) + "]");
  }
  if (!(tol > 0.0)) throw ValidationError("threshold: tol must be > 0");
  cfg.validate();

  std::optional<KernelVariant> last_kernel;
  auto excess = [&](double x) {
    const BoundReport rep = detect_nonlocality(family(x), cfg, kernels);
    last_kernel = rep.kernel_variant;
    return rep.bound - 1.0;
  };
  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw DomainError("threshold: bound - 1 has the same sign at both ends of [" +
                      format_float(lo) + ", " + format_float(hi) + "] (" +
                      format_float(f_lo) + ", " + format_float(f_hi) + ")");
  }
  const bool rising = f_hi > 0.0;
  ThresholdResult res;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool above = excess(mid) > 0.0;
    ++res.iterations;
    if (above == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.lo = lo;
  res.hi = hi;
  res.value = 0.5 * (lo + hi);
  res.kernel_variant = last_kernel;
  return res;
}

std::string report_to_json(const BoundReport& r) {
  ordered_json j;
  j["d"] = r.d;
  j["theorem"] = r.d == 2 ? "two-qubit" : "qudit";
  j["bound"] = std::stod(format_float(r.bound));
  j["nonlocal"] = r.nonlocal();
  j["best_region"] = {
      {"ab", {std::stod(format_float(r.best_region.ab.lo())),
              std::stod(format_float(r.best_region.ab.hi()))}},
      {"cd", {std::stod(format_float(r.best_region.cd.lo())),
              std::stod(format_float(r.best_region.cd.hi()))}}};
  j["chsh"] = r.chsh ? ordered_json(std::stod(format_float(*r.chsh))) : ordered_json(nullptr);
  j["kernel_variant"] =
      r.kernel_variant ? ordered_json(to_string(*r.kernel_variant)) : ordered_json(nullptr);
  j["quadrature"] = {{"n_phi", r.quad.n_phi}, {"n_theta", r.quad.n_theta}};
  j["search"] = {{"coarse_steps", r.search.coarse_steps},
                 {"refine_iters", r.search.refine_iters},
                 {"refine_tol", r.search.refine_tol}};
  return j.dump(2);
}

}  // namespace nlb
