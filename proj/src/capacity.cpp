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

#include "symclone/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace symclone {

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

CapacityReport capacity_bounds(int d, int M, int k, std::int64_t d_in) {
  if (d < 1 || M < 1 || k < 1 || d_in < 1) {
    throw std::invalid_argument("capacity_bounds: arguments must be >= 1");
  }
  CapacityReport r;
  r.d = d;
  r.M = M;
  r.k = k;
  r.d_in = d_in;

  const double dim_k = static_cast<double>(sym_dim(d, k));
  const double ratio = 2.0 * k * d / static_cast<double>(M);
  if (ratio <= 1.0) {
    r.continuity_defined = true;
    r.continuity_bound =
        8.0 * ratio * std::log2(dim_k) + 4.0 * binary_entropy(ratio);
  }
  const double lin_sym = ratio * dim_k;
  const double lin_in = ratio * static_cast<double>(d_in);
  // Linearisation of the base-2 logarithm: log2(1 + x) <= x log2(e).
  r.transpose_bound_linear = std::min(lin_sym, lin_in) * std::log2(std::exp(1.0));
  r.transpose_bound_log =
      std::min(std::log2(1.0 + lin_sym), std::log2(1.0 + lin_in));
  r.min_bound = r.transpose_bound_log;
  if (r.continuity_bound) {
    r.min_bound = std::min(r.min_bound, *r.continuity_bound);
  }
  return r;
}

double transpose_diamond(const SymChannel& e_k, const DiamondOptions& opts) {
  validate_cptp(e_k);
  const Matrix pt =
      partial_transpose_input(e_k.choi, e_k.out_dim(), e_k.in_dim());
  const HermitianMap map(e_k.in_dim(), e_k.out_dim(), pt);
  const DiamondResult res = diamond_norm(map, opts);
  return std::log2(res.upper);
}

}  // namespace symclone
