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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symclone/errors.hpp"

namespace symclone {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, r), exact. Zero for r < 0 or r > n.
BigInt binomial(std::int64_t n, std::int64_t r);

/// Dimension of the symmetric subspace of M copies of a d-level system:
/// C(d + M - 1, M). Throws std::invalid_argument for d < 1 or M < 0.
BigInt sym_dim_big(int d, std::int64_t M);

/// sym_dim as int64; throws ResourceLimitError if it does not fit.
std::int64_t sym_dim(int d, std::int64_t M);

double rational_to_double(const Rational& q);

/// A finite probability distribution with exact rational entries that must
/// sum to one. Index s runs over 0..entries.size()-1.
struct ProbabilityVector {
  std::vector<Rational> entries;

  /// Throws ValidationError unless entries are >= 0 and sum to exactly 1.
  void validate() const;
};

/// Weights of the loss-then-clone mixture for the M-to-k universal
/// measure-and-prepare channel:
///   p_s = C(M,s) C(d+k-1, k-s) / C(d+M+k-1, k),  s = 0..min(k, M).
ProbabilityVector ps_distribution(int d, int M, int k);

/// Optimal estimation fidelity from M copies to k copies,
/// F_{M,k} = sym_dim(d,M) / sym_dim(d,M+k), exact.
Rational fidelity_est(int d, int M, int k);

/// The three analytic diamond-norm bounds for a (d, M, k) triple.
struct BoundReport {
  int d = 0;
  int M = 0;
  int k = 0;

  /// 2 k (d + k - 1) / (M + d)
  Rational bound_estimation_1;
  /// 4 (1 - sqrt(sym_dim(d,M-k)/sym_dim(d,M))); defined only for k <= M.
  std::optional<double> bound_estimation_2_exact;
  /// 2 k d / M; reported together with the exact form, absent for k > M.
  std::optional<Rational> bound_estimation_2_linear;
  /// 2 M (d + M - 1) / (k + d)
  Rational bound_cloning;

  /// min(bound_estimation_1, bound_estimation_2_exact when defined)
  double min_estimation_bound = 0.0;

  /// True when the second estimation bound is defined (k <= M).
  bool estimation2_defined = false;
  /// True when M (k - 1) <= d^2, the regime where bound 1 is the smaller.
  bool bound1_preferred_regime = false;
};

BoundReport analytic_bounds(int d, int M, int k);

/// Result of the exact combinatorial identity checks.
struct IdentityReport {
  bool passed = true;
  std::string first_counterexample;  // empty when passed
  std::size_t checks_run = 0;
};

/// Verifies, in exact big-integer arithmetic, for all 0 <= s <= M <= M_max:
///   (a) sum_n (-1)^(s-n) C(s,n) C(M+n,M) = C(M,s)
///   (b) sum_l C(s,l) C(M-s, M-s-l) = C(M,s)
/// and the Chu-Vandermonde convolution
///   (c) C(z+w, N) = sum_i C(z,i) C(w,N-i)
/// for nonnegative integers z, w, N <= M_max.
///
/// `inject_fault` perturbs one term; used to verify the checker rejects.
IdentityReport identity_suite(int M_max, bool inject_fault = false);

}  // namespace symclone
