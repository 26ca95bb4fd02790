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

#include "symclone/symspace.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace symclone {

std::int64_t max_dense_dim() {
  static const std::int64_t value = [] {
    if (const char* env = std::getenv("SYMCLONE_MAX_DENSE")) {
      const std::int64_t v = std::atoll(env);
      if (v > 0) return v;
    }
    return std::int64_t{1} << 20;
  }();
  return value;
}

int OccupationVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

namespace {

void build_partitions(int d, int M, std::vector<int>& prefix,
                      std::vector<OccupationVector>& out) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(M);
    out.push_back({d, prefix});
    prefix.pop_back();
    return;
  }
  for (int n = M; n >= 0; --n) {
    prefix.push_back(n);
    build_partitions(d, M - n, prefix, out);
    prefix.pop_back();
  }
}

std::int64_t checked_pow(int d, int M) {
  const std::int64_t guard = max_dense_dim();
  std::int64_t v = 1;
  for (int i = 0; i < M; ++i) {
    v *= d;
    if (v > guard) {
      throw ResourceLimitError("dense size d^M = " + std::to_string(d) + "^" +
                               std::to_string(M) + " exceeds guard " +
                               std::to_string(guard));
    }
  }
  return v;
}

BigInt multinomial(const std::vector<int>& counts) {
  BigInt v = 1;
  int used = 0;
  for (int c : counts) {
    used += c;
    v *= binomial(used, c);
  }
  return v;
}

}  // namespace

OccupationBasis::OccupationBasis(int d, int M) : d_(d), M_(M) {
  if (d < 1) throw std::invalid_argument("OccupationBasis: d must be >= 1");
  if (M < 0) throw std::invalid_argument("OccupationBasis: M must be >= 0");
  std::vector<int> prefix;
  build_partitions(d, M, prefix, states_);
  amp_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_[states_[i].counts] = static_cast<Eigen::Index>(i);
    amp_[i] = 1.0 / std::sqrt(
        multinomial(states_[i].counts).convert_to<double>());
  }
}

Eigen::Index OccupationBasis::index_of(const std::vector<int>& counts) const {
  const Eigen::Index idx = find(counts);
  if (idx < 0) {
    throw std::invalid_argument("occupation vector not in basis");
  }
  return idx;
}

Eigen::Index OccupationBasis::find(const std::vector<int>& counts) const {
  auto it = index_.find(counts);
  return it == index_.end() ? Eigen::Index{-1} : it->second;
}

std::vector<OccupationVector> occupation_basis(int d, int M) {
  return OccupationBasis(d, M).states();
}

double split_coefficient(const OccupationVector& whole,
                         const OccupationVector& part) {
  Rational r(1);
  for (int i = 0; i < whole.d; ++i) {
    if (part.counts[i] > whole.counts[i]) return 0.0;
    r *= Rational(binomial(whole.counts[i], part.counts[i]));
  }
  r /= Rational(binomial(whole.total(), part.total()));
  return std::sqrt(rational_to_double(r));
}

void for_each_sub_occupation(
    const OccupationVector& m, int k,
    const std::function<void(const OccupationVector&)>& fn) {
  OccupationVector u{m.d, std::vector<int>(m.d, 0)};
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m.d - 1) {
      if (left <= m.counts[pos]) {
        u.counts[pos] = left;
        fn(u);
      }
      return;
    }
    const int cap = std::min(left, m.counts[pos]);
    for (int c = 0; c <= cap; ++c) {
      u.counts[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, k);
}

namespace {

// Calls fn(word_index, counts) for every word of {0..d-1}^M, with counts
// maintained incrementally.
void for_each_word(int d, int M, std::int64_t dim,
                   const std::function<void(std::int64_t,
                                            const std::vector<int>&)>& fn) {
  std::vector<int> word(M, 0);
  std::vector<int> counts(d, 0);
  if (M > 0) counts[0] = M;
  for (std::int64_t w = 0; w < dim; ++w) {
    fn(w, counts);
    for (int pos = M - 1; pos >= 0; --pos) {
      --counts[word[pos]];
      if (++word[pos] < d) {
        ++counts[word[pos]];
        break;
      }
      word[pos] = 0;
      ++counts[0];
    }
  }
}

}  // namespace

Matrix embed_isometry(int d, int M) {
  const std::int64_t dim = checked_pow(d, M);
  OccupationBasis basis(d, M);
  Matrix v = Matrix::Zero(dim, basis.size());
  for_each_word(d, M, dim,
                [&](std::int64_t w, const std::vector<int>& counts) {
                  const Eigen::Index idx = basis.index_of(counts);
                  v(w, idx) = basis.word_amplitude(idx);
                });
  return v;
}

Matrix symmetrizer(int d, int M) {
  Matrix v = embed_isometry(d, M);
  return v * v.adjoint();
}

Vector coherent_amplitudes(const Vector& psi, int M) {
  if (std::abs(psi.norm() - 1.0) > kTolAlg) {
    throw ValidationError("coherent_amplitudes: input vector is not unit norm");
  }
  const int d = static_cast<int>(psi.size());
  OccupationBasis basis(d, M);
  Vector out(basis.size());
  for (Eigen::Index idx = 0; idx < basis.size(); ++idx) {
    Complex a = 1.0 / basis.word_amplitude(idx);  // sqrt(M!/prod n_i!)
    for (int i = 0; i < d; ++i) {
      for (int r = 0; r < basis.at(idx).counts[i]; ++r) a *= psi(i);
    }
    out(idx) = a;
  }
  return out;
}

SymOperator::SymOperator(int d_, int M_, Matrix m)
    : d(d_), M(M_), matrix(std::move(m)) {
  const Eigen::Index expected = sym_dim(d, M);
  if (matrix.rows() != expected || matrix.cols() != expected) {
    throw std::invalid_argument("SymOperator: matrix side does not match "
                                "sym_dim(d, M)");
  }
}

void SymOperator::validate_state(double tol) const {
  if (hermiticity_residual(matrix) > tol) {
    throw ValidationError("state is not Hermitian within tolerance");
  }
  if (std::abs(matrix.trace().real() - 1.0) > tol ||
      std::abs(matrix.trace().imag()) > tol) {
    throw ValidationError("state trace differs from 1 beyond tolerance");
  }
  if (min_eigenvalue(matrix) < -tol) {
    throw ValidationError("state has a negative eigenvalue beyond tolerance");
  }
}

SymOperator product_state_operator(const Vector& psi, int M) {
  Vector a = coherent_amplitudes(psi, M);
  return SymOperator(static_cast<int>(psi.size()), M, a * a.adjoint());
}

SymOperator maximally_mixed_sym(int d, int M) {
  const Eigen::Index n = sym_dim(d, M);
  return SymOperator(d, M,
                     Matrix::Identity(n, n) / static_cast<double>(n));
}

SymOperator random_sym_state(int d, int M, Rng& rng) {
  return SymOperator(d, M, random_density(sym_dim(d, M), rng));
}

SymOperator partial_trace_sym(const SymOperator& rho, int k) {
  if (k < 0 || k > rho.M) {
    throw std::invalid_argument("partial_trace_sym: require 0 <= k <= M");
  }
  const int d = rho.d;
  OccupationBasis big(d, rho.M);
  OccupationBasis small(d, k);
  Matrix out = Matrix::Zero(small.size(), small.size());
  std::vector<int> b(d);
  for (Eigen::Index mi = 0; mi < big.size(); ++mi) {
    const OccupationVector& m = big.at(mi);
    for (Eigen::Index ni = 0; ni < big.size(); ++ni) {
      const OccupationVector& n = big.at(ni);
      const Complex val = rho.matrix(mi, ni);
      if (val == Complex(0, 0)) continue;
      for_each_sub_occupation(m, k, [&](const OccupationVector& a) {
        // b = a - m + n must be a valid sub-occupation of n.
        for (int i = 0; i < d; ++i) {
          b[i] = a.counts[i] - m.counts[i] + n.counts[i];
          if (b[i] < 0 || b[i] > n.counts[i]) return;
        }
        const double coeff = split_coefficient(m, a) *
                             split_coefficient(n, {d, b});
        out(small.index_of(a.counts), small.index_of(b)) += coeff * val;
      });
    }
  }
  return SymOperator(d, k, std::move(out));
}

double haar_moment_residual(int d, int M, std::int64_t n_samples,
                            std::uint64_t seed) {
  if (n_samples < 1) {
    throw std::invalid_argument("haar_moment_residual: n_samples >= 1");
  }
  const Eigen::Index dim = sym_dim(d, M);
  Rng rng(seed);
  Matrix acc = Matrix::Zero(dim, dim);
  for (std::int64_t s = 0; s < n_samples; ++s) {
    Vector a = coherent_amplitudes(random_unit_vector(d, rng), M);
    acc.noalias() += a * a.adjoint();
  }
  acc /= static_cast<double>(n_samples);
  acc -= Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return op_norm(acc);
}

}  // namespace symclone
