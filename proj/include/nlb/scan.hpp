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

// Parameter sweeps, threshold search and report rendering behind the
// `nlbound` command-line tool.

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlb/bounds.hpp"

namespace nlb {

/// Raised when a computation is well-posed but has no answer, e.g. a
/// threshold bracket without a sign change. Maps to exit code 3.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { Werner, BellDiagonal, Isotropic, SigmaMixture, File };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

enum class OutputFormat { Csv, Json };

/// Inclusive linear range with `steps` points (steps == 1 yields `lo`).
struct Range {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 1;

  void validate(const char* name) const;
  double at(int k) const;
};

struct ScanSpec {
  Family family = Family::Werner;
  Range x{0.0, 1.0, 101};  // werner, isotropic
  int d = 3;               // isotropic
  Range p{-1.0, 1.0, 21};  // bell-diagonal, each axis
  /// Bell-diagonal cross sections: a set entry pins that coordinate.
  std::array<std::optional<double>, 3> fix_p;
  Range alpha{-1.0, 1.0, 21};  // sigma-mixture
  Range beta{0.0, 1.0, 21};
  std::vector<std::string> files;  // family == File
  SearchConfig search;
  KernelChoice kernels = KernelChoice::Both;
  OutputFormat format = OutputFormat::Csv;

  void validate() const;
};

/// Formatted table; every cell is already rendered (9 significant digits for
/// floats). Skipped points carry "skipped: <reason>" in the status column.
struct ScanTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Evaluates every grid point. Points run in parallel; rows keep grid order.
ScanTable run_scan(const ScanSpec& spec);

/// Number of rows run_scan produces for `spec`.
std::size_t scan_size(const ScanSpec& spec);

std::string render_csv(const ScanTable& table);
std::string render_json(const ScanTable& table);

std::string format_float(double v);

/// One-parameter family member; throws ValidationError outside the domain.
using StateFactory = std::function<DensityMatrix(double)>;

struct ThresholdResult {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  std::optional<KernelVariant> kernel_variant;  // at the final bracket
};

/// Bisection on bound(x) - 1 over [lo, hi] until hi - lo <= tol. Throws
/// DomainError if the endpoints do not bracket a sign change.
ThresholdResult find_threshold(const StateFactory& family, double lo, double hi, double tol,
                               const SearchConfig& cfg,
                               KernelChoice kernels = KernelChoice::Both);

/// JSON rendering of a BoundReport (keys in fixed order).
std::string report_to_json(const BoundReport& report);

}  // namespace nlb
