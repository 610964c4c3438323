// Copyright 2026 The erbox Authors
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

// JSON interchange for boxes:
//   { "task": "es" | "2epr-ghz" | "ghz-epr",
//     "branches": [ { "a": M, "b": M, "c": M }, ... ] }
// M is a row-major nested array of [re, im] pairs.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "erbox/boxes.hpp"
#include "json.hpp"

namespace erbox {

using Json = nlohmann::json;

/// Schema violation; `pointer` is the JSON pointer of the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = ptr + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].empty()) throw SchemaError(rp, "expected a non-empty array of entries");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw SchemaError(rp, "row length differs from row 0");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string ep = ptr + "/" + std::to_string(r) + "/" + std::to_string(c);
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw SchemaError(ep, "expected a [re, im] pair of numbers");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

inline Json box_to_json(const Box& box) {
  Json branches = Json::array();
  for (const auto& br : box.branches()) {
    branches.push_back({{"a", matrix_to_json(br.a)}, {"b", matrix_to_json(br.b)}, {"c", matrix_to_json(br.c)}});
  }
  return {{"task", std::string(task_name(box.task()))}, {"branches", std::move(branches)}};
}

inline Box box_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  if (!j.contains("task") || !j["task"].is_string()) throw SchemaError("/task", "expected a task name string");
  BoxTask task;
  try {
    task = parse_task(j["task"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/task", e.what());
  }
  if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].empty()) {
    throw SchemaError("/branches", "expected a non-empty array");
  }
  std::vector<SeparableBranch> branches;
  const Json& bs = j["branches"];
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string bp = "/branches/" + std::to_string(i);
    if (!bs[i].is_object()) throw SchemaError(bp, "expected an object");
    SeparableBranch br;
    for (const char* key : {"a", "b", "c"}) {
      if (!bs[i].contains(key)) throw SchemaError(bp + "/" + key, "missing factor");
    }
    br.a = matrix_from_json(bs[i]["a"], bp + "/a");
    br.b = matrix_from_json(bs[i]["b"], bp + "/b");
    br.c = matrix_from_json(bs[i]["c"], bp + "/c");
    if (br.a.rows() != 2 || br.a.cols() != 2) throw SchemaError(bp + "/a", "A factor must be 2x2");
    if (br.b.rows() != 2 || br.b.cols() != 2) throw SchemaError(bp + "/b", "B factor must be 2x2");
    if (br.c.cols() != charlie_input_dim(task)) {
      throw SchemaError(bp + "/c", "C factor must have " + std::to_string(charlie_input_dim(task)) + " columns");
    }
    if (i > 0 && br.c.rows() != branches.front().c.rows()) {
      throw SchemaError(bp + "/c", "C factor row count differs from branch 0");
    }
    br.label = i;
    branches.push_back(std::move(br));
  }
  return Box(task, std::move(branches));
}

inline Box parse_box(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return box_from_json(j);
}

inline Box load_box(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open box file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_box(ss.str());
}

/// Indented, deterministic serialization (key order is sorted by the
/// library; doubles are printed round-trip exact).
inline std::string dump_box(const Box& box) { return box_to_json(box).dump(2) + "\n"; }

}  // namespace erbox
