// Copyright 2026 The symclone authors
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
#include <string>
#include <utility>
#include <vector>

#include "symclone/capacity.hpp"
#include "symclone/channels.hpp"
#include "symclone/definetti.hpp"
#include "symclone/diamond.hpp"
#include "symclone/symspace.hpp"

namespace symclone {

/// 17-significant-digit decimal form; the canonical number format of every
/// emitted file, chosen so repeated runs are byte-identical.
std::string format_double(double v);

/// Insertion-ordered JSON value with deterministic serialisation.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue boolean(bool b);
  static JsonValue integer(std::int64_t v);
  static JsonValue number(double v);
  static JsonValue string(std::string s);
  static JsonValue object();
  static JsonValue array();

  JsonValue& add(const std::string& key, JsonValue v);
  JsonValue& push(JsonValue v);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  Kind kind_;
  bool b_ = false;
  std::int64_t i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;

  void dump_to(std::string& out, int indent, int depth) const;
};

/// {value, tolerance} pair for numbers carrying a certificate.
JsonValue certified(double value, double tolerance);

SymOperator read_sym_operator(const std::string& path);
SymChannel read_sym_channel(const std::string& path);

/// Full-space permutation-invariant state file (matrix side d^M); shares the
/// SymOperator JSON schema, distinguished by the matrix side.
Matrix read_full_operator(const std::string& path, int& d, int& M);

/// True when the file holds a symmetric-subspace operator (side sym_dim),
/// false when it holds a full d^M matrix.
bool sym_operator_file_is_subspace(const std::string& path);

void write_sym_operator(const SymOperator& op, const std::string& path);
void write_sym_channel(const SymChannel& ch, const std::string& path);

JsonValue to_json(const DeFinettiCertificate& cert, double tolerance);
JsonValue to_json(const CapacityReport& report, double tol_sdp);
JsonValue to_json(const BoundComparisonRow& row, double tol_sdp);
JsonValue to_json(const GapRow& row);

std::string csv_row(const std::vector<std::string>& cells);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal single-plot SVG with one polyline per series.
std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const std::string& x_label,
                          const std::string& y_label);

}  // namespace symclone
