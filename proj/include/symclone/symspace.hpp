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
#include <functional>
#include <map>
#include <vector>

#include "symclone/combinat.hpp"
#include "symclone/linalg.hpp"

namespace symclone {

/// Word-count guard for dense constructions that touch the full d^M space.
/// Overridable through the SYMCLONE_MAX_DENSE environment variable.
std::int64_t max_dense_dim();

/// A partition of M into d nonnegative parts; labels one occupation-number
/// basis state |n> of the symmetric subspace.
struct OccupationVector {
  int d = 0;
  std::vector<int> counts;

  int total() const;
  bool operator==(const OccupationVector&) const = default;
};

/// The canonical occupation basis of the symmetric subspace of M copies of
/// a d-level system. Ordering is lexicographically descending on counts and
/// is fixed project-wide; all SymOperator / SymChannel matrices use it.
class OccupationBasis {
 public:
  OccupationBasis(int d, int M);

  int d() const { return d_; }
  int copies() const { return M_; }
  Eigen::Index size() const {
    return static_cast<Eigen::Index>(states_.size());
  }
  const OccupationVector& at(Eigen::Index idx) const { return states_[idx]; }
  const std::vector<OccupationVector>& states() const { return states_; }

  /// Index of a counts vector; throws std::invalid_argument when absent.
  Eigen::Index index_of(const std::vector<int>& counts) const;
  /// -1 when absent.
  Eigen::Index find(const std::vector<int>& counts) const;

  /// Amplitude carried by each computational word of class idx inside |n>,
  /// i.e. 1/sqrt(multinomial(M; n)).
  double word_amplitude(Eigen::Index idx) const { return amp_[idx]; }

 private:
  int d_, M_;
  std::vector<OccupationVector> states_;
  std::map<std::vector<int>, Eigen::Index, std::greater<std::vector<int>>>
      index_;
  std::vector<double> amp_;
};

/// All partitions of M into d parts in the canonical order.
std::vector<OccupationVector> occupation_basis(int d, int M);

/// Overlap coefficient of the split |m>_{L} -> |u>_{l} (x) |m-u>_{L-l}:
/// sqrt(prod_i C(m_i, u_i) / C(L, l)). Zero unless u <= m componentwise.
double split_coefficient(const OccupationVector& whole,
                         const OccupationVector& part);

/// Enumerate every u with |u| = k and u <= m componentwise.
void for_each_sub_occupation(const OccupationVector& m, int k,
                             const std::function<void(const OccupationVector&)>& fn);

/// Isometry V : (H^(x)M)_+ -> H^(x)M, shape d^M x sym_dim(d, M); column n
/// holds |n> in the computational product basis. Guarded by max_dense_dim().
Matrix embed_isometry(int d, int M);

/// Projector on the symmetric subspace, V V^dag, shape d^M x d^M.
Matrix symmetrizer(int d, int M);

/// Occupation-basis amplitudes of |psi>^(x)M for a unit vector psi in C^d.
Vector coherent_amplitudes(const Vector& psi, int M);

/// An operator on the symmetric subspace of M copies of a d-level system,
/// stored in the canonical occupation ordering.
struct SymOperator {
  int d = 0;
  int M = 0;
  Matrix matrix;

  SymOperator() = default;
  SymOperator(int d_, int M_, Matrix m);

  Eigen::Index dim() const { return matrix.rows(); }

  /// Throws ValidationError unless Hermitian, PSD and unit trace within tol.
  void validate_state(double tol = kTolAlg) const;
};

/// Pure state projector |psi><psi|^(x)M in occupation coordinates.
SymOperator product_state_operator(const Vector& psi, int M);

/// Maximally mixed state on the symmetric subspace.
SymOperator maximally_mixed_sym(int d, int M);

/// Random density matrix supported on the symmetric subspace.
SymOperator random_sym_state(int d, int M, Rng& rng);

/// k-particle marginal of a symmetric-subspace operator, in the occupation
/// basis of (H^(x)k)_+. Exact combinatorial evaluation; agrees with the
/// embedding route V_k^dag Tr_{M-k}[V_M rho V_M^dag] V_k.
SymOperator partial_trace_sym(const SymOperator& rho, int k);

/// Monte-Carlo check of int dphi |phi><phi|^(x)M = P_+ / sym_dim: returns
/// the operator-norm residual between the sample mean (in occupation
/// coordinates) and I/sym_dim for n_samples Haar states.
double haar_moment_residual(int d, int M, std::int64_t n_samples,
                            std::uint64_t seed);

}  // namespace symclone
