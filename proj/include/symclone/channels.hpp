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

#include "symclone/combinat.hpp"
#include "symclone/linalg.hpp"
#include "symclone/symspace.hpp"

namespace symclone {

/// A CPTP map between symmetric subspaces, stored as a Choi matrix
///   choi = (Phi (x) id)(|Omega><Omega|),  |Omega> = sum_i |i>|i>,
/// with output (x) input ordering and both factors in the canonical
/// occupation ordering. Row/column index (y, i) flattens to
/// y * in_dim + i.
struct SymChannel {
  int d = 0;
  int copies_in = 0;
  int copies_out = 0;
  Matrix choi;

  SymChannel() = default;
  SymChannel(int d_, int in, int out, Matrix c);

  Eigen::Index in_dim() const { return sym_dim(d, copies_in); }
  Eigen::Index out_dim() const { return sym_dim(d, copies_out); }
};

struct CptpResiduals {
  double hermiticity = 0.0;
  double psd = 0.0;    // max(0, -lambda_min(choi))
  double trace_preserving = 0.0;  // max |Tr_out(choi) - I|

  double max() const;
};

CptpResiduals cptp_residuals(const SymChannel& ch);

/// Throws ValidationError when any CPTP residual exceeds tol.
void validate_cptp(const SymChannel& ch, double tol = kTolAlg);

/// Identity channel on the symmetric subspace of M copies.
SymChannel identity_channel(int d, int M);

/// Universal s-to-k cloning channel
///   rho -> (sym_dim(d,s)/sym_dim(d,k)) P_+ (rho (x) I^(x)(k-s)) P_+.
/// s = 0 is permitted: it prepares the maximally mixed symmetric state.
SymChannel uclon_channel(int d, int s, int k);

/// Universal measure-and-prepare channel from M to k copies,
///   rho -> (sym_dim(d,M)/sym_dim(d,M+k)) Tr_M[(rho (x) I^(x)k) P_+^(M+k)].
SymChannel umeasprep_channel(int d, int M, int k);

/// Partial trace over M-k copies as a channel between symmetric subspaces.
SymChannel trace_channel(int d, int M, int k);

/// Applies the channel through its Choi matrix.
SymOperator apply(const SymChannel& ch, const SymOperator& rho);

/// Choi of the composition after ∘ before.
SymChannel compose(const SymChannel& after, const SymChannel& before);

/// Composition on raw Choi matrices with explicit dimensions; `after` maps
/// mid -> out_a and `before` maps in_b -> mid.
Matrix compose_choi(const Matrix& after, Eigen::Index out_a, Eigen::Index mid,
                    const Matrix& before, Eigen::Index in_b);

/// Convex mixture with exact rational weights.
SymChannel mix(const std::vector<SymChannel>& channels,
               const ProbabilityVector& weights);

/// Trace norm of the Choi difference between umeasprep(d, M, k) and the
/// mixture sum_s p_s uclon(d, s, k) ∘ trace(d, M, s).
double decomposition_residual(int d, int M, int k);

}  // namespace symclone
