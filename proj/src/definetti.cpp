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

#include "symclone/definetti.hpp"

#include <cmath>

namespace symclone {

namespace {

std::int64_t int_pow(std::int64_t base, int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void check_guard(std::int64_t dim, const char* where) {
  if (dim > max_dense_dim()) {
    throw ResourceLimitError(std::string(where) +
                             ": dense dimension exceeds guard");
  }
}

// Digits of x in base d, most significant first, length M.
void to_word(std::int64_t x, int d, int M, std::vector<int>& w) {
  for (int t = M - 1; t >= 0; --t) {
    w[t] = static_cast<int>(x % d);
    x /= d;
  }
}

std::int64_t from_word(const std::vector<int>& w, int d) {
  std::int64_t x = 0;
  for (int digit : w) x = x * d + digit;
  return x;
}

}  // namespace

std::pair<SymOperator, DeFinettiCertificate> definetti_state(
    const SymOperator& rho, int k) {
  if (k < 0 || k > rho.M) {
    throw std::invalid_argument("definetti_state: require 0 <= k <= M");
  }
  rho.validate_state();
  const SymOperator approx = apply(umeasprep_channel(rho.d, rho.M, k), rho);
  const SymOperator exact = partial_trace_sym(rho, k);

  DeFinettiCertificate cert;
  cert.k = k;
  cert.norm = "trace";
  cert.dimension_used = rho.d;
  cert.distance = trace_norm_hermitian(approx.matrix - exact.matrix);
  cert.bound = rational_to_double(
      Rational(BigInt(2) * k * (rho.d + k - 1), BigInt(rho.M + rho.d)));
  cert.margin = cert.bound - cert.distance;
  if (cert.margin < -kTolNum) {
    throw ValidationError("definetti_state: distance exceeds the bound");
  }
  return {approx, cert};
}

PurifiedSymState purify_perm_invariant(const Matrix& rho_full, int d, int M,
                                       double tol) {
  const std::int64_t dim = int_pow(d, M);
  check_guard(dim * dim, "purify_perm_invariant");
  if (rho_full.rows() != dim || rho_full.cols() != dim) {
    throw std::invalid_argument("purify_perm_invariant: matrix is not d^M");
  }
  if (hermiticity_residual(rho_full) > tol ||
      std::abs(rho_full.trace().real() - 1.0) > tol ||
      min_eigenvalue(rho_full) < -tol) {
    throw ValidationError("purify_perm_invariant: input is not a state");
  }

  // Invariance under adjacent transpositions generates full S_M invariance.
  std::vector<int> w(M);
  for (int t = 0; t + 1 < M; ++t) {
    std::vector<std::int64_t> perm(dim);
    for (std::int64_t x = 0; x < dim; ++x) {
      to_word(x, d, M, w);
      std::swap(w[t], w[t + 1]);
      perm[x] = from_word(w, d);
    }
    double residual = 0.0;
    for (std::int64_t x = 0; x < dim; ++x) {
      for (std::int64_t y = 0; y < dim; ++y) {
        residual = std::max(
            residual, std::abs(rho_full(perm[x], perm[y]) - rho_full(x, y)));
      }
    }
    if (residual > tol) {
      throw std::invalid_argument(
          "purify_perm_invariant: state not invariant under transposition (" +
          std::to_string(t) + " " + std::to_string(t + 1) + "), residual " +
          std::to_string(residual));
    }
  }

  const Matrix root = sqrt_psd(rho_full);

  // |Psi> = (rho^(1/2) (x) I)|Omega>, re-grouped so that factor t of the
  // first copy pairs with factor t of the second.
  const int dk = d * d;
  const std::int64_t pair_dim = int_pow(dk, M);
  Vector psi(pair_dim);
  std::vector<int> wx(M), wy(M), wz(M);
  for (std::int64_t x = 0; x < dim; ++x) {
    to_word(x, d, M, wx);
    for (std::int64_t y = 0; y < dim; ++y) {
      to_word(y, d, M, wy);
      for (int t = 0; t < M; ++t) wz[t] = wx[t] * d + wy[t];
      psi(from_word(wz, dk)) = root(x, y);
    }
  }

  // Project onto the occupation basis of the pair space and verify that
  // nothing is lost: the vector must lie in (K^(x)M)_+.
  OccupationBasis basis(dk, M);
  Vector coords = Vector::Zero(basis.size());
  std::vector<int> counts(dk);
  std::vector<Eigen::Index> word_class(pair_dim);
  for (std::int64_t z = 0; z < pair_dim; ++z) {
    to_word(z, dk, M, wz);
    std::fill(counts.begin(), counts.end(), 0);
    for (int t = 0; t < M; ++t) ++counts[wz[t]];
    word_class[z] = basis.index_of(counts);
    coords(word_class[z]) += basis.word_amplitude(word_class[z]) * psi(z);
  }
  double membership_sq = 0.0;
  for (std::int64_t z = 0; z < pair_dim; ++z) {
    const Eigen::Index idx = word_class[z];
    membership_sq +=
        std::norm(psi(z) - basis.word_amplitude(idx) * coords(idx));
  }
  const double membership = std::sqrt(membership_sq);
  if (membership > tol) {
    throw ValidationError(
        "purify_perm_invariant: purification left the symmetric subspace, "
        "residual " + std::to_string(membership));
  }

  // Marginal reconstruction: tracing the purifying halves returns the input.
  if ((root * root.adjoint() - rho_full).cwiseAbs().maxCoeff() > 1e2 * tol) {
    throw ValidationError("purify_perm_invariant: marginal reconstruction "
                          "failed");
  }

  PurifiedSymState out;
  out.base_d = d;
  out.M = M;
  out.amplitudes = coords;
  return out;
}

namespace {

// Reduce an operator on (K^(x)k)_+ (occupation coordinates, K = d^2 pairs)
// to the first halves of the pairs: an operator on H^(x)k of side d^k.
Matrix pair_reduce(const Matrix& op, int d, int k) {
  const int dk = d * d;
  const std::int64_t full = int_pow(dk, k);
  check_guard(full, "pair_reduce");
  OccupationBasis basis(dk, k);
  // Embedded symmetric vectors, indexed by the (x, y) split of each word.
  const std::int64_t half = int_pow(d, k);
  Matrix emb = Matrix::Zero(full, basis.size());
  std::vector<int> wz(k), counts(dk);
  for (std::int64_t z = 0; z < full; ++z) {
    to_word(z, dk, k, wz);
    std::fill(counts.begin(), counts.end(), 0);
    for (int t = 0; t < k; ++t) ++counts[wz[t]];
    const Eigen::Index idx = basis.index_of(counts);
    emb(z, idx) = basis.word_amplitude(idx);
  }
  const Matrix lifted = emb * op * emb.adjoint();
  Matrix out = Matrix::Zero(half, half);
  std::vector<int> wxv(k), wyv(k), wxpv(k), pair(k);
  for (std::int64_t x = 0; x < half; ++x) {
    to_word(x, d, k, wxv);
    for (std::int64_t xp = 0; xp < half; ++xp) {
      to_word(xp, d, k, wxpv);
      Complex acc = 0;
      for (std::int64_t y = 0; y < half; ++y) {
        to_word(y, d, k, wyv);
        for (int t = 0; t < k; ++t) pair[t] = wxv[t] * d + wyv[t];
        const std::int64_t z1 = from_word(pair, dk);
        for (int t = 0; t < k; ++t) pair[t] = wxpv[t] * d + wyv[t];
        const std::int64_t z2 = from_word(pair, dk);
        acc += lifted(z1, z2);
      }
      out(x, xp) = acc;
    }
  }
  return out;
}

}  // namespace

DeFinettiCertificate definetti_perm_invariant(const Matrix& rho_full, int d,
                                              int M, int k) {
  if (k < 0 || k > M) {
    throw std::invalid_argument("definetti_perm_invariant: 0 <= k <= M");
  }
  const PurifiedSymState pure = purify_perm_invariant(rho_full, d, M);
  const int dk = d * d;
  const SymOperator sigma(dk, M,
                          pure.amplitudes * pure.amplitudes.adjoint());

  const SymOperator approx_k = apply(umeasprep_channel(dk, M, k), sigma);
  const SymOperator exact_k = partial_trace_sym(sigma, k);

  const Matrix approx_h = pair_reduce(approx_k.matrix, d, k);
  const Matrix exact_h = pair_reduce(exact_k.matrix, d, k);

  DeFinettiCertificate cert;
  cert.k = k;
  cert.norm = "trace";
  cert.dimension_used = dk;
  cert.distance = trace_norm_hermitian(approx_h - exact_h);
  cert.bound = rational_to_double(
      Rational(BigInt(2) * k * (dk + k - 1), BigInt(M + dk)));
  cert.margin = cert.bound - cert.distance;
  if (cert.margin < -kTolNum) {
    throw ValidationError(
        "definetti_perm_invariant: distance exceeds the bound");
  }
  return cert;
}

std::pair<SymChannel, DeFinettiCertificate> broadcast_approx(
    const SymChannel& e, int k, const DiamondOptions& opts) {
  if (k < 0 || k > e.copies_out) {
    throw std::invalid_argument("broadcast_approx: require 0 <= k <= M");
  }
  validate_cptp(e);
  const int d = e.d;
  const int M = e.copies_out;
  const SymChannel approx_k = compose(umeasprep_channel(d, M, k), e);
  const SymChannel exact_k = compose(trace_channel(d, M, k), e);
  const DiamondResult dist = diamond_distance(approx_k, exact_k, opts);

  DeFinettiCertificate cert;
  cert.k = k;
  cert.norm = "diamond";
  cert.dimension_used = d;
  cert.distance = dist.upper;
  const double ratio = rational_to_double(
      Rational(sym_dim_big(d, M - k), sym_dim_big(d, M)));
  cert.bound = std::min(4.0 * (1.0 - std::sqrt(ratio)),
                        2.0 * k * d / static_cast<double>(M));
  cert.margin = cert.bound - cert.distance;
  if (cert.margin < -kTolNum) {
    throw ValidationError("broadcast_approx: distance exceeds the bound");
  }
  return {approx_k, cert};
}

DeFinettiCertificate broadcast_approx_general(const Matrix& v, int d, int M,
                                              Eigen::Index env_dim, int k,
                                              const DiamondOptions& opts) {
  if (k < 0 || k > M) {
    throw std::invalid_argument("broadcast_approx_general: 0 <= k <= M");
  }
  const int dk = d * d;
  const Eigen::Index sym_k_dim = sym_dim(dk, M);
  if (env_dim < 1 || v.rows() != sym_k_dim * env_dim) {
    throw std::invalid_argument(
        "broadcast_approx_general: isometry rows must be sym_dim(d^2, M) * "
        "env_dim");
  }
  const Eigen::Index d_in = v.cols();
  if ((v.adjoint() * v - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() >
      kTolAlg) {
    throw std::invalid_argument("broadcast_approx_general: v is not an "
                                "isometry");
  }

  // F = Tr_env ∘ V . V^dag : Lin(H_in) -> Lin((K^(x)M)_+)
  Matrix choi_f = Matrix::Zero(sym_k_dim * d_in, sym_k_dim * d_in);
  for (Eigen::Index i = 0; i < d_in; ++i) {
    Matrix pi(sym_k_dim, env_dim);
    for (Eigen::Index s = 0; s < sym_k_dim; ++s) {
      for (Eigen::Index e = 0; e < env_dim; ++e) pi(s, e) = v(s * env_dim + e, i);
    }
    for (Eigen::Index j = 0; j < d_in; ++j) {
      Matrix pj(sym_k_dim, env_dim);
      for (Eigen::Index s = 0; s < sym_k_dim; ++s) {
        for (Eigen::Index e = 0; e < env_dim; ++e) {
          pj(s, e) = v(s * env_dim + e, j);
        }
      }
      const Matrix block = pi * pj.adjoint();
      for (Eigen::Index s = 0; s < sym_k_dim; ++s) {
        for (Eigen::Index sp = 0; sp < sym_k_dim; ++sp) {
          choi_f(s * d_in + i, sp * d_in + j) = block(s, sp);
        }
      }
    }
  }

  const SymChannel ump = umeasprep_channel(dk, M, k);
  const SymChannel trk = trace_channel(dk, M, k);
  const Eigen::Index out_k = sym_dim(dk, k);
  const Matrix approx_k =
      compose_choi(ump.choi, out_k, sym_k_dim, choi_f, d_in);
  const Matrix exact_k = compose_choi(trk.choi, out_k, sym_k_dim, choi_f, d_in);

  // Choi of the pair-trace map (K^(x)k)_+ -> H^(x)k that discards the
  // purifying halves of the k receiver pairs.
  const std::int64_t half = int_pow(d, k);
  const std::int64_t full = int_pow(dk, k);
  check_guard(full, "broadcast_approx_general");
  OccupationBasis kbasis(dk, k);
  Matrix emb = Matrix::Zero(full, kbasis.size());
  {
    std::vector<int> wz(k), counts(dk);
    for (std::int64_t z = 0; z < full; ++z) {
      to_word(z, dk, k, wz);
      std::fill(counts.begin(), counts.end(), 0);
      for (int t = 0; t < k; ++t) ++counts[wz[t]];
      const Eigen::Index idx = kbasis.index_of(counts);
      emb(z, idx) = kbasis.word_amplitude(idx);
    }
  }
  Matrix choi_t = Matrix::Zero(half * kbasis.size(), half * kbasis.size());
  {
    std::vector<int> wx(k), wy(k), pair(k);
    for (Eigen::Index s = 0; s < kbasis.size(); ++s) {
      for (Eigen::Index sp = 0; sp < kbasis.size(); ++sp) {
        for (std::int64_t x = 0; x < half; ++x) {
          to_word(x, d, k, wx);
          for (std::int64_t xp = 0; xp < half; ++xp) {
            to_word(xp, d, k, wy);
            Complex acc = 0;
            std::vector<int> wyv(k);
            for (std::int64_t y = 0; y < half; ++y) {
              to_word(y, d, k, wyv);
              for (int t = 0; t < k; ++t) pair[t] = wx[t] * d + wyv[t];
              const std::int64_t z1 = from_word(pair, dk);
              for (int t = 0; t < k; ++t) pair[t] = wy[t] * d + wyv[t];
              const std::int64_t z2 = from_word(pair, dk);
              acc += emb(z1, s) * std::conj(emb(z2, sp));
            }
            choi_t(x * kbasis.size() + s, xp * kbasis.size() + sp) = acc;
          }
        }
      }
    }
  }

  const Matrix approx_h = compose_choi(choi_t, half, out_k, approx_k, d_in);
  const Matrix exact_h = compose_choi(choi_t, half, out_k, exact_k, d_in);
  const HermitianMap diff(d_in, half, approx_h - exact_h);
  const DiamondResult dist = diamond_norm(diff, opts);

  DeFinettiCertificate cert;
  cert.k = k;
  cert.norm = "diamond";
  cert.dimension_used = dk;
  cert.distance = dist.upper;
  const double ratio = rational_to_double(
      Rational(sym_dim_big(dk, M - k), sym_dim_big(dk, M)));
  cert.bound = std::min(4.0 * (1.0 - std::sqrt(ratio)),
                        2.0 * k * dk / static_cast<double>(M));
  cert.margin = cert.bound - cert.distance;
  if (cert.margin < -kTolNum) {
    throw ValidationError(
        "broadcast_approx_general: distance exceeds the bound");
  }
  return cert;
}

std::vector<GapRow> cloning_estimation_gap(int d, int N, int M_lo, int M_hi) {
  if (d < 2 || N < 1 || M_lo < N || M_hi < M_lo) {
    throw std::invalid_argument("cloning_estimation_gap: bad range");
  }
  const Rational f_est = fidelity_est(d, N, 1);
  std::vector<GapRow> rows;
  rows.reserve(M_hi - M_lo + 1);
  for (int M = M_lo; M <= M_hi; ++M) {
    const Rational f_clon = Rational(N, M) +
                            Rational(BigInt(M - N) * (N + 1),
                                     BigInt(M) * (N + d));
    const Rational gap = f_clon - f_est;
    const Rational bound(BigInt(2) * d, BigInt(M));
    if (gap < 0 || gap > bound) {
      throw ValidationError("cloning_estimation_gap: gap outside [0, 2d/M]");
    }
    GapRow row;
    row.M = M;
    row.f_clon = rational_to_double(f_clon);
    row.f_est = rational_to_double(f_est);
    row.gap = rational_to_double(gap);
    row.bound = rational_to_double(bound);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace symclone
