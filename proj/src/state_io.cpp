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

#include "nlb/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nlb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw ValidationError(source + ": " + what);
}

int read_dim(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) fail(source, std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) {
    fail(source, std::string("field '") + key + "' must be an integer, got " + v.dump());
  }
  return v.get<int>();
}

}  // namespace

DensityMatrix parse_density_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(source, "top-level value must be an object");

  const int dim_a = read_dim(doc, "dim_a", source);
  const int dim_b = read_dim(doc, "dim_b", source);
  if (dim_a < 2 || dim_b < 2) {
    fail(source, "dimension: dim_a and dim_b must be >= 2, got " +
                     std::to_string(dim_a) + " x " + std::to_string(dim_b));
  }
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    fail(source, "field 'entries' must be an array of [re, im] pairs");
  }
  const json& entries = doc.at("entries");
  const std::size_t n = static_cast<std::size_t>(dim_a) * dim_b;
  if (entries.size() != n * n) {
    fail(source, "entries: expected " + std::to_string(n * n) + " values, got " +
                     std::to_string(entries.size()));
  }
  Eigen::MatrixXcd m(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      fail(source, "entries[" + std::to_string(k) + "]: expected [re, im], got " + e.dump());
    }
    m(k / n, k % n) = {e[0].get<double>(), e[1].get<double>()};
  }
  try {
    return DensityMatrix(dim_a, dim_b, std::move(m));
  } catch (const ValidationError& e) {
    fail(source, e.what());
  }
}

DensityMatrix read_density_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_density_json(buf.str(), path.string());
}

std::string density_to_json(const DensityMatrix& rho) {
  json doc;
  doc["dim_a"] = rho.dim_a();
  doc["dim_b"] = rho.dim_b();
  json entries = json::array();
  const Eigen::MatrixXcd& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace nlb
