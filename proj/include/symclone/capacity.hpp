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

#include <optional>

#include "symclone/diamond.hpp"

namespace symclone {

/// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

/// Upper bounds on the quantum capacity of the k-receiver restriction of a
/// symmetric broadcast channel with M receivers of dimension d and input
/// dimension d_in.
struct CapacityReport {
  int d = 0;
  int M = 0;
  int k = 0;
  std::int64_t d_in = 0;

  /// (16 k d / M) log2 sym_dim(d, k) + 4 H(2 k d / M); defined only while
  /// 2 k d / M <= 1, otherwise absent and flagged.
  std::optional<double> continuity_bound;
  double transpose_bound_log = 0.0;
  double transpose_bound_linear = 0.0;
  double min_bound = 0.0;
  std::optional<double> computed_transpose_diamond;

  bool continuity_defined = false;
};

CapacityReport capacity_bounds(int d, int M, int k, std::int64_t d_in);

/// log2 of the certified diamond norm of (channel ∘ transposition), the
/// Holevo-Werner capacity bound, computed on the Choi partial transpose.
double transpose_diamond(const SymChannel& e_k,
                         const DiamondOptions& opts = {});

}  // namespace symclone
