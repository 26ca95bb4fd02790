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

#include <string>
#include <utility>
#include <vector>

#include "symclone/channels.hpp"
#include "symclone/diamond.hpp"

namespace symclone {

/// Slack against a numerically computed certificate.
inline constexpr double kTolNum = 1e-9;

struct DeFinettiCertificate {
  int k = 0;
  double distance = 0.0;  // trace-norm or diamond, see `norm`
  double bound = 0.0;     // the applicable analytic bound
  double margin = 0.0;    // bound - distance
  int dimension_used = 0; // d, or d^2 on the purification route
  std::string norm;       // "trace" or "diamond"
};

/// A purification of a permutation-invariant state on H^(x)M, expressed in
/// the occupation basis of (K^(x)M)_+ with K = H (x) H.
struct PurifiedSymState {
  int base_d = 0;  // dimension of H; the pair space K has dimension d^2
  int M = 0;
  Vector amplitudes;  // occupation coordinates over K^(x)M
};

/// Finite de Finetti approximation for a state on the symmetric subspace:
/// returns the k-copy restriction of the measure-and-prepare image together
/// with its certified trace-norm distance from the true k-copy marginal.
std::pair<SymOperator, DeFinettiCertificate> definetti_state(
    const SymOperator& rho, int k);

/// Purifies a permutation-invariant state on the full product space H^(x)M
/// into the symmetric subspace of pair systems. Membership and marginal
/// reconstruction are verified, never assumed.
PurifiedSymState purify_perm_invariant(const Matrix& rho_full, int d, int M,
                                       double tol = kTolAlg);

/// De Finetti certificate for a permutation-invariant state on H^(x)M via
/// purification; pays the d -> d^2 substitution in the bound.
DeFinettiCertificate definetti_perm_invariant(const Matrix& rho_full, int d,
                                              int M, int k);

/// Approximation of a broadcast channel with output in the
/// symmetric subspace: the k-receiver restriction of UMeasPrep_{M,M} ∘ E
/// versus the k-receiver restriction of E, in diamond norm.
std::pair<SymChannel, DeFinettiCertificate> broadcast_approx(
    const SymChannel& e, int k, const DiamondOptions& opts = {});

/// Dilation route for a caller-supplied pairwise-symmetric isometry.
/// `v` is an isometry from a d_in-dimensional input into
/// (K^(x)M)_+ (x) H_env, rows indexed (symmetric K-basis index, env index)
/// as s * env_dim + e with K of dimension d^2. Works at base d^2 and
/// certifies the environment-traced k-receiver restrictions on H^(x)k.
DeFinettiCertificate broadcast_approx_general(const Matrix& v, int d, int M,
                                              Eigen::Index env_dim, int k,
                                              const DiamondOptions& opts = {});

struct GapRow {
  int M = 0;
  double f_clon = 0.0;  // single-copy fidelity of universal N -> M cloning
  double f_est = 0.0;   // optimal estimation fidelity from N copies
  double gap = 0.0;
  double bound = 0.0;   // 2 d / M, the k = 1 symmetric-output bound
};

/// Closed-form cloning-versus-estimation fidelity gap across output counts.
std::vector<GapRow> cloning_estimation_gap(int d, int N, int M_lo, int M_hi);

}  // namespace symclone
