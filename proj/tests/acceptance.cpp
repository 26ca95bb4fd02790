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
//
// End-to-end acceptance suite. Each criterion prints a single PASS/FAIL
// line; the binary exits nonzero when any criterion fails.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symclone/capacity.hpp"
#include "symclone/channels.hpp"
#include "symclone/combinat.hpp"
#include "symclone/definetti.hpp"
#include "symclone/diamond.hpp"
#include "symclone/serialize.hpp"
#include "symclone/symspace.hpp"

namespace symclone {
namespace {

struct Runner {
  int failures = 0;

  void run(int number, const std::string& title,
           const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %d %s: %s (%.1fs)%s%s\n", number,
                ok ? "PASS" : "FAIL", title.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::int64_t int_pow(int d, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= d;
  return v;
}

// Exact average over S_M of U_pi rho U_pi^dag.
Matrix symmetrize_state(const Matrix& rho, int d, int M) {
  const std::int64_t dim = int_pow(d, M);
  std::vector<int> sigma(M), w(M), wp(M);
  for (int t = 0; t < M; ++t) sigma[t] = t;
  Matrix acc = Matrix::Zero(dim, dim);
  int count = 0;
  do {
    std::vector<std::int64_t> perm(dim);
    for (std::int64_t x = 0; x < dim; ++x) {
      std::int64_t v = x;
      for (int q = M - 1; q >= 0; --q) {
        w[q] = static_cast<int>(v % d);
        v /= d;
      }
      for (int q = 0; q < M; ++q) wp[q] = w[sigma[q]];
      std::int64_t y = 0;
      for (int q = 0; q < M; ++q) y = y * d + wp[q];
      perm[x] = y;
    }
    for (std::int64_t x = 0; x < dim; ++x) {
      for (std::int64_t y = 0; y < dim; ++y) acc(perm[x], perm[y]) += rho(x, y);
    }
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc / static_cast<double>(count);
}

bool criterion_identities(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const IdentityReport report = identity_suite(30);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!report.passed) {
    detail = "counterexample " + report.first_counterexample;
    return false;
  }
  if (secs >= 5.0) {
    detail = "runtime " + std::to_string(secs) + "s exceeds 5s";
    return false;
  }
  detail = std::to_string(report.checks_run) + " exact checks";
  return true;
}

bool criterion_decomposition(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 4; ++M) {
      for (int k = 1; k <= 4; ++k) {
        worst = std::max(worst, decomposition_residual(d, M, k));
        ps_distribution(d, M, k).validate();  // exact normalisation
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  detail = "max Choi residual " + format_double(worst);
  if (secs >= 120.0) {
    detail += "; runtime exceeds 2 min";
    return false;
  }
  return worst < 1e-10;
}

bool criterion_fidelity(std::string& detail) {
  Rng rng(7);
  double worst = 0.0;
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 4; ++M) {
      for (int k = 1; k <= 4; ++k) {
        const SymChannel ch = umeasprep_channel(d, M, k);
        const double expect = rational_to_double(fidelity_est(d, M, k));
        for (int trial = 0; trial < 20; ++trial) {
          const Vector psi = random_unit_vector(d, rng);
          const SymOperator out = apply(ch, product_state_operator(psi, M));
          const Vector target = coherent_amplitudes(psi, k);
          const double f = (target.adjoint() * out.matrix * target)(0).real();
          worst = std::max(worst, std::abs(f - expect));
        }
      }
    }
  }
  if (std::abs(rational_to_double(fidelity_est(2, 1, 1)) - 2.0 / 3.0) >
          1e-15 ||
      std::abs(rational_to_double(fidelity_est(2, 2, 1)) - 3.0 / 4.0) >
          1e-15) {
    detail = "frozen estimation fidelities wrong";
    return false;
  }
  // Universal 1 -> 2 qubit cloning, single-copy fidelity 5/6.
  const Vector psi = random_unit_vector(2, rng);
  const SymOperator clone =
      partial_trace_sym(apply(uclon_channel(2, 1, 2),
                              product_state_operator(psi, 1)), 1);
  const Vector amp = coherent_amplitudes(psi, 1);
  const double f_clone = (amp.adjoint() * clone.matrix * amp)(0).real();
  worst = std::max(worst, std::abs(f_clone - 5.0 / 6.0));
  detail = "max fidelity deviation " + format_double(worst);
  return worst < 1e-10;
}

bool criterion_bound_sandwich(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const int d = 2;
  double worst_gap = 0.0, worst_agreement = 0.0;
  for (int k = 1; k <= 2; ++k) {
    for (int M = k; M <= 6; ++M) {
      const DiamondResult r = diamond_distance(umeasprep_channel(d, M, k),
                                               trace_channel(d, M, k));
      const ProbabilityVector p = ps_distribution(d, M, k);
      const double chain1 = 2.0 * (1.0 - rational_to_double(p.entries[k]));
      const auto bounds = analytic_bounds(d, M, k);
      const double stated1 = rational_to_double(bounds.bound_estimation_1);
      const double exact2 = *bounds.bound_estimation_2_exact;
      if (r.upper > chain1 + 1e-9 || chain1 > stated1 + 1e-12 ||
          r.upper > exact2 + 1e-9) {
        detail = "estimation sandwich violated at M=" + std::to_string(M) +
                 ", k=" + std::to_string(k);
        return false;
      }
      worst_gap = std::max(worst_gap, r.sdp.certified_gap);
      worst_agreement = std::max(worst_agreement, r.upper - r.lower);
    }
  }
  for (int k = 2; k <= 8; ++k) {
    const DiamondResult r = diamond_distance(umeasprep_channel(d, 1, k),
                                             uclon_channel(d, 1, k));
    const ProbabilityVector p = ps_distribution(d, 1, k);
    const double chain = 2.0 * (1.0 - rational_to_double(p.entries[1]));
    const double stated =
        rational_to_double(analytic_bounds(d, 1, k).bound_cloning);
    if (r.upper > chain + 1e-9 || chain > stated + 1e-12) {
      detail = "cloning sandwich violated at k=" + std::to_string(k);
      return false;
    }
    worst_gap = std::max(worst_gap, r.sdp.certified_gap);
    worst_agreement = std::max(worst_agreement, r.upper - r.lower);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  detail = "max SDP gap " + format_double(worst_gap) +
           ", max seesaw/SDP disagreement " + format_double(worst_agreement);
  if (secs >= 600.0) {
    detail += "; runtime exceeds 10 min";
    return false;
  }
  return worst_gap <= 1e-6 && worst_agreement <= 1e-3;
}

bool criterion_definetti(std::string& detail) {
  Rng rng(11);
  double worst_margin = 1e300;
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 6; ++M) {
      for (int k = 1; k <= M; ++k) {
        for (int trial = 0; trial < 100; ++trial) {
          const SymOperator rho = random_sym_state(d, M, rng);
          const auto cert = definetti_state(rho, k).second;
          worst_margin = std::min(worst_margin, cert.margin);
        }
      }
    }
  }
  if (worst_margin < 0.0) {
    detail = "negative margin " + format_double(worst_margin);
    return false;
  }
  // Permutation-invariant route at base d^2.
  for (int M = 2; M <= 4; ++M) {
    for (int k = 1; k <= M; ++k) {
      for (int trial = 0; trial < 100; ++trial) {
        Matrix rho = random_density(int_pow(2, M), rng);
        rho = symmetrize_state(rho, 2, M);
        const auto cert = definetti_perm_invariant(rho, 2, M, k);
        worst_margin = std::min(worst_margin, cert.margin);
      }
    }
  }
  if (worst_margin < 0.0) {
    detail = "negative margin on purification route";
    return false;
  }
  // Restriction consistency.
  double worst_res = 0.0;
  for (int d = 2; d <= 3; ++d) {
    for (int M = 2; M <= 4; ++M) {
      const SymChannel full = umeasprep_channel(d, M, M);
      for (int k = 1; k < M; ++k) {
        const SymOperator rho = random_sym_state(d, M, rng);
        const SymOperator via_full = partial_trace_sym(apply(full, rho), k);
        const SymOperator direct = apply(umeasprep_channel(d, M, k), rho);
        worst_res = std::max(
            worst_res,
            (via_full.matrix - direct.matrix).cwiseAbs().maxCoeff());
      }
    }
  }
  detail = "min margin " + format_double(worst_margin) +
           ", restriction residual " + format_double(worst_res);
  return worst_res < 1e-10;
}

bool criterion_broadcast(std::string& detail) {
  double worst_margin = 1e300;
  for (int k = 1; k <= 2; ++k) {
    for (int M = std::max(2, k); M <= 5; ++M) {
      const auto ident = broadcast_approx(identity_channel(2, M), k).second;
      worst_margin = std::min(worst_margin, ident.margin);
      const auto clone = broadcast_approx(uclon_channel(2, 1, M), k).second;
      worst_margin = std::min(worst_margin, clone.margin);
    }
  }
  detail = "min margin " + format_double(worst_margin);
  return worst_margin >= 0.0;
}

bool criterion_clonegap(std::string& detail) {
  for (int d = 2; d <= 3; ++d) {
    const auto rows = cloning_estimation_gap(d, 1, 2, 500);
    for (const auto& row : rows) {
      if (row.gap < 0.0 || row.gap > 2.0 * d / row.M + 1e-15) {
        detail = "gap outside [0, 2d/M] at M=" + std::to_string(row.M);
        return false;
      }
    }
    double cmin = 1e300, cmax = 0.0;
    for (const auto& row : rows) {
      if (row.M < 50) continue;
      cmin = std::min(cmin, row.gap * row.M);
      cmax = std::max(cmax, row.gap * row.M);
    }
    if (cmax - cmin > 0.05 * cmax) {
      detail = "gap*M drifts more than 5%";
      return false;
    }
  }
  detail = "closed-form gap certified for M in {2..500}";
  return true;
}

bool criterion_capacity(std::string& detail) {
  for (int d = 2; d <= 4; ++d) {
    for (int M = 2; M <= 30; ++M) {
      for (int k = 1; k <= 3; ++k) {
        const CapacityReport r = capacity_bounds(d, M, k, d);
        if (r.transpose_bound_linear < r.transpose_bound_log - 1e-14) {
          detail = "linearised bound below log bound";
          return false;
        }
      }
    }
  }
  double worst = -1e300;
  for (int M = 2; M <= 6; ++M) {
    const double v = transpose_diamond(trace_channel(2, M, 1));
    const double bound = std::log2(1.0 + 8.0 / M);
    worst = std::max(worst, v - bound);
    if (v > bound + 1e-3) {
      detail = "transpose-diamond above bound at M=" + std::to_string(M);
      return false;
    }
  }
  detail = "max transpose-diamond slack " + format_double(worst);
  return true;
}

bool criterion_determinism(std::string& detail) {
#ifndef SYMCLONE_CLI_PATH
  detail = "CLI path not configured";
  return false;
#else
  const std::string cli = SYMCLONE_CLI_PATH;
  const std::string out1 = "/tmp/symclone_acc_run1.json";
  const std::string out2 = "/tmp/symclone_acc_run2.json";
  const std::string cmd_base =
      cli + " bounds --d 2 --k 1 --M-range 2:4 --exact --seed 7 --out ";
  if (std::system((cmd_base + out1).c_str()) != 0 ||
      std::system((cmd_base + out2).c_str()) != 0) {
    detail = "CLI invocation failed";
    return false;
  }
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  if (a.empty() || a != b) {
    detail = "repeated runs differ or are empty";
    return false;
  }
  detail = std::to_string(a.size()) + " bytes, byte-identical";
  return true;
#endif
}

}  // namespace
}  // namespace symclone

int main() {
  using namespace symclone;
  Runner r;
  r.run(1, "exact combinatorial identity suite (M <= 30)",
        criterion_identities);
  r.run(2, "loss-plus-cloning decomposition residuals (d in {2,3})",
        criterion_decomposition);
  r.run(3, "estimation and cloning fidelities", criterion_fidelity);
  r.run(4, "certified diamond-distance bound sandwich",
        criterion_bound_sandwich);
  r.run(5, "de Finetti certificates and restriction consistency",
        criterion_definetti);
  r.run(6, "broadcast-channel approximation certificates",
        criterion_broadcast);
  r.run(7, "cloning-estimation fidelity gap", criterion_clonegap);
  r.run(8, "capacity bounds and transpose-diamond values",
        criterion_capacity);
  r.run(9, "seeded CLI determinism", criterion_determinism);
  if (r.failures > 0) {
    std::printf("%d criterion(s) failed\n", r.failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
