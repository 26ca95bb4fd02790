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

#include "symclone/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace symclone {

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= (n - r + i);
    result /= i;  // exact at every step: result is C(n-r+i, i)
  }
  return result;
}

BigInt sym_dim_big(int d, std::int64_t M) {
  if (d < 1) throw std::invalid_argument("sym_dim: dimension d must be >= 1");
  if (M < 0) throw std::invalid_argument("sym_dim: copy number M must be >= 0");
  return binomial(d + M - 1, M);
}

std::int64_t sym_dim(int d, std::int64_t M) {
  BigInt v = sym_dim_big(d, M);
  if (v > std::numeric_limits<std::int64_t>::max()) {
    throw ResourceLimitError("sym_dim overflows int64 for d=" +
                             std::to_string(d) + ", M=" + std::to_string(M));
  }
  return static_cast<std::int64_t>(v);
}

double rational_to_double(const Rational& q) {
  return q.convert_to<double>();
}

void ProbabilityVector::validate() const {
  Rational sum = 0;
  for (const auto& p : entries) {
    if (p < 0) throw ValidationError("probability vector has negative entry");
    sum += p;
  }
  if (sum != 1) throw ValidationError("probability vector does not sum to 1");
}

ProbabilityVector ps_distribution(int d, int M, int k) {
  if (d < 1 || M < 1 || k < 1) {
    throw std::invalid_argument("ps_distribution: require d, M, k >= 1");
  }
  const BigInt denom = binomial(d + M + k - 1, k);
  ProbabilityVector p;
  const int s_max = std::min(k, M);
  p.entries.reserve(s_max + 1);
  for (int s = 0; s <= s_max; ++s) {
    p.entries.emplace_back(Rational(binomial(M, s) * binomial(d + k - 1, k - s),
                                    denom));
  }
  p.validate();
  return p;
}

Rational fidelity_est(int d, int M, int k) {
  if (d < 1 || M < 1 || k < 0) {
    throw std::invalid_argument("fidelity_est: require d >= 1, M >= 1, k >= 0");
  }
  return Rational(sym_dim_big(d, M), sym_dim_big(d, M + k));
}

BoundReport analytic_bounds(int d, int M, int k) {
  if (d < 1 || M < 1 || k < 1) {
    throw std::invalid_argument("analytic_bounds: require d, M, k >= 1");
  }
  BoundReport r;
  r.d = d;
  r.M = M;
  r.k = k;
  r.bound_estimation_1 = Rational(BigInt(2) * k * (d + k - 1), BigInt(M + d));
  r.bound_cloning = Rational(BigInt(2) * M * (d + M - 1), BigInt(k + d));
  r.bound1_preferred_regime =
      BigInt(M) * (k - 1) <= BigInt(d) * d;
  r.min_estimation_bound = rational_to_double(r.bound_estimation_1);
  if (k <= M) {
    r.estimation2_defined = true;
    const double ratio =
        rational_to_double(Rational(sym_dim_big(d, M - k), sym_dim_big(d, M)));
    r.bound_estimation_2_exact = 4.0 * (1.0 - std::sqrt(ratio));
    r.bound_estimation_2_linear = Rational(BigInt(2) * k * d, BigInt(M));
    r.min_estimation_bound =
        std::min(r.min_estimation_bound, *r.bound_estimation_2_exact);
  }
  return r;
}

namespace {

std::string triple_str(const char* tag, long a, long b, long c) {
  std::ostringstream os;
  os << tag << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

IdentityReport identity_suite(int M_max, bool inject_fault) {
  if (M_max < 1) throw std::invalid_argument("identity_suite: M_max >= 1");
  IdentityReport report;

  // Pascal triangle up to 2*M_max rows; every check below is a table lookup.
  const int rows = 2 * M_max + 1;
  std::vector<std::vector<BigInt>> C(rows);
  for (int n = 0; n < rows; ++n) {
    C[n].assign(n + 1, 1);
    for (int r = 1; r < n; ++r) C[n][r] = C[n - 1][r - 1] + C[n - 1][r];
  }
  auto choose = [&](int n, int r) -> BigInt {
    if (r < 0 || r > n) return 0;
    return C[n][r];
  };

  const BigInt fault = inject_fault ? 1 : 0;

  for (int M = 0; M <= M_max; ++M) {
    for (int s = 0; s <= M; ++s) {
      // (a) alternating sum against C(M, s)
      BigInt sum_a = fault;
      for (int n = 0; n <= s; ++n) {
        BigInt term = choose(s, n) * choose(M + n, M);
        if ((s - n) % 2 != 0) term = -term;
        sum_a += term;
      }
      ++report.checks_run;
      if (sum_a != choose(M, s)) {
        report.passed = false;
        report.first_counterexample = triple_str("alternating-sum", M, s, 0);
        return report;
      }
      // (b) convolution C(s,l) C(M-s, M-s-l) against C(M, s)
      BigInt sum_b = fault;
      for (int l = 0; l <= M - s; ++l) {
        sum_b += choose(s, l) * choose(M - s, M - s - l);
      }
      ++report.checks_run;
      if (sum_b != choose(M, s)) {
        report.passed = false;
        report.first_counterexample = triple_str("convolution", M, s, 0);
        return report;
      }
    }
  }

  // (c) Chu-Vandermonde over nonnegative integers
  for (int z = 0; z <= M_max; ++z) {
    for (int w = 0; w <= M_max; ++w) {
      for (int N = 0; N <= M_max; ++N) {
        BigInt sum = fault;
        for (int i = 0; i <= N; ++i) sum += choose(z, i) * choose(w, N - i);
        ++report.checks_run;
        if (sum != binomial(z + w, N)) {
          report.passed = false;
          report.first_counterexample = triple_str("chu-vandermonde", z, w, N);
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace symclone
