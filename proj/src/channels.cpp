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

#include "symclone/channels.hpp"

#include <algorithm>
#include <string>

namespace symclone {

namespace {

void check_dense_guard(int d, int copies, const char* where) {
  const std::int64_t guard = max_dense_dim();
  std::int64_t v = 1;
  for (int i = 0; i < copies; ++i) {
    v *= d;
    if (v > guard) {
      throw ResourceLimitError(std::string(where) + ": d^copies = " +
                               std::to_string(d) + "^" +
                               std::to_string(copies) + " exceeds guard " +
                               std::to_string(guard));
    }
  }
}

std::vector<int> add_counts(const std::vector<int>& a,
                            const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// a - b, or empty when any coordinate would go negative.
std::vector<int> sub_counts(const std::vector<int>& a,
                            const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] - b[i];
    if (out[i] < 0) return {};
  }
  return out;
}

}  // namespace

SymChannel::SymChannel(int d_, int in, int out, Matrix c)
    : d(d_), copies_in(in), copies_out(out), choi(std::move(c)) {
  const Eigen::Index expected = sym_dim(d, in) * sym_dim(d, out);
  if (choi.rows() != expected || choi.cols() != expected) {
    throw std::invalid_argument(
        "SymChannel: Choi side does not match sym_dim(out) * sym_dim(in)");
  }
}

double CptpResiduals::max() const {
  return std::max({hermiticity, psd, trace_preserving});
}

CptpResiduals cptp_residuals(const SymChannel& ch) {
  CptpResiduals r;
  r.hermiticity = hermiticity_residual(ch.choi);
  r.psd = std::max(0.0, -min_eigenvalue(ch.choi));
  Matrix marg = partial_trace_first(ch.choi, ch.out_dim(), ch.in_dim());
  r.trace_preserving =
      (marg - Matrix::Identity(ch.in_dim(), ch.in_dim())).cwiseAbs().maxCoeff();
  return r;
}

void validate_cptp(const SymChannel& ch, double tol) {
  const CptpResiduals r = cptp_residuals(ch);
  if (r.max() > tol) {
    throw ValidationError("channel violates CPTP invariants: residual " +
                          std::to_string(r.max()));
  }
}

SymChannel identity_channel(int d, int M) {
  const Eigen::Index n = sym_dim(d, M);
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      choi(i * n + i, j * n + j) = 1.0;
    }
  }
  return SymChannel(d, M, M, std::move(choi));
}

SymChannel uclon_channel(int d, int s, int k) {
  if (s < 0 || s > k) {
    throw std::invalid_argument("uclon_channel: require 0 <= s <= k");
  }
  check_dense_guard(d, k, "uclon_channel");
  OccupationBasis in(d, s);
  OccupationBasis out(d, k);
  const double scale =
      rational_to_double(Rational(sym_dim_big(d, s), sym_dim_big(d, k)));
  Matrix choi = Matrix::Zero(out.size() * in.size(), out.size() * in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    for (Eigen::Index j = 0; j < in.size(); ++j) {
      for (Eigen::Index a = 0; a < out.size(); ++a) {
        const std::vector<int> c =
            sub_counts(out.at(a).counts, in.at(i).counts);
        if (c.empty()) continue;
        const Eigen::Index bi = out.find(add_counts(c, in.at(j).counts));
        if (bi < 0) continue;
        choi(a * in.size() + i, bi * in.size() + j) =
            scale * split_coefficient(out.at(a), in.at(i)) *
            split_coefficient(out.at(bi), in.at(j));
      }
    }
  }
  return SymChannel(d, s, k, std::move(choi));
}

SymChannel umeasprep_channel(int d, int M, int k) {
  if (d < 1 || M < 0 || k < 0) {
    throw std::invalid_argument("umeasprep_channel: bad arguments");
  }
  check_dense_guard(d, M + k, "umeasprep_channel");
  OccupationBasis in(d, M);
  OccupationBasis out(d, k);
  const double scale =
      rational_to_double(Rational(sym_dim_big(d, M), sym_dim_big(d, M + k)));
  Matrix choi = Matrix::Zero(out.size() * in.size(), out.size() * in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    for (Eigen::Index j = 0; j < in.size(); ++j) {
      for (Eigen::Index y = 0; y < out.size(); ++y) {
        const OccupationVector m{d, add_counts(out.at(y).counts,
                                               in.at(j).counts)};
        // y' on the output side is pinned by y + j = y' + i.
        const std::vector<int> yp = sub_counts(m.counts, in.at(i).counts);
        if (yp.empty()) continue;
        const Eigen::Index ypi = out.find(yp);
        if (ypi < 0) continue;
        choi(y * in.size() + i, ypi * in.size() + j) =
            scale * split_coefficient(m, in.at(j)) *
            split_coefficient(m, in.at(i));
      }
    }
  }
  return SymChannel(d, M, k, std::move(choi));
}

SymChannel trace_channel(int d, int M, int k) {
  if (k < 0 || k > M) {
    throw std::invalid_argument("trace_channel: require 0 <= k <= M");
  }
  OccupationBasis in(d, M);
  OccupationBasis out(d, k);
  Matrix choi = Matrix::Zero(out.size() * in.size(), out.size() * in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    for (Eigen::Index j = 0; j < in.size(); ++j) {
      for (Eigen::Index a = 0; a < out.size(); ++a) {
        const std::vector<int> c = sub_counts(in.at(i).counts,
                                              out.at(a).counts);
        if (c.empty()) continue;
        const std::vector<int> b = sub_counts(in.at(j).counts, c);
        if (b.empty()) continue;
        const Eigen::Index bi = out.find(b);
        if (bi < 0) continue;
        choi(a * in.size() + i, bi * in.size() + j) =
            split_coefficient(in.at(i), out.at(a)) *
            split_coefficient(in.at(j), out.at(bi));
      }
    }
  }
  return SymChannel(d, M, k, std::move(choi));
}

SymOperator apply(const SymChannel& ch, const SymOperator& rho) {
  if (rho.d != ch.d || rho.M != ch.copies_in) {
    throw std::invalid_argument("apply: operator does not match channel input");
  }
  const Eigen::Index din = ch.in_dim();
  const Eigen::Index dout = ch.out_dim();
  Matrix r = reshuffle(ch.choi, dout, din);
  Vector rho_vec(din * din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) rho_vec(i * din + j) = rho.matrix(i, j);
  }
  Vector out_vec = r * rho_vec;
  Matrix out(dout, dout);
  for (Eigen::Index y = 0; y < dout; ++y) {
    for (Eigen::Index yp = 0; yp < dout; ++yp) out(y, yp) = out_vec(y * dout + yp);
  }
  return SymOperator(ch.d, ch.copies_out, std::move(out));
}

Matrix compose_choi(const Matrix& after, Eigen::Index out_a, Eigen::Index mid,
                    const Matrix& before, Eigen::Index in_b) {
  if (after.rows() != out_a * mid || before.rows() != mid * in_b) {
    throw std::invalid_argument("compose_choi: dimension mismatch");
  }
  Matrix ra = reshuffle(after, out_a, mid);
  Matrix rb = reshuffle(before, mid, in_b);
  return unreshuffle(ra * rb, out_a, in_b);
}

SymChannel compose(const SymChannel& after, const SymChannel& before) {
  if (after.d != before.d || after.copies_in != before.copies_out) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  return SymChannel(after.d, before.copies_in, after.copies_out,
                    compose_choi(after.choi, after.out_dim(),
                                 before.out_dim(), before.choi,
                                 before.in_dim()));
}

SymChannel mix(const std::vector<SymChannel>& channels,
               const ProbabilityVector& weights) {
  if (channels.empty() || channels.size() != weights.entries.size()) {
    throw std::invalid_argument("mix: need one weight per channel");
  }
  weights.validate();
  SymChannel out = channels.front();
  out.choi *= rational_to_double(weights.entries.front());
  for (std::size_t i = 1; i < channels.size(); ++i) {
    const SymChannel& ch = channels[i];
    if (ch.d != out.d || ch.copies_in != out.copies_in ||
        ch.copies_out != out.copies_out) {
      throw std::invalid_argument("mix: channel shapes differ");
    }
    out.choi += rational_to_double(weights.entries[i]) * ch.choi;
  }
  return out;
}

double decomposition_residual(int d, int M, int k) {
  SymChannel lhs = umeasprep_channel(d, M, k);
  const ProbabilityVector p = ps_distribution(d, M, k);
  std::vector<SymChannel> branches;
  branches.reserve(p.entries.size());
  for (int s = 0; s < static_cast<int>(p.entries.size()); ++s) {
    branches.push_back(compose(uclon_channel(d, s, k), trace_channel(d, M, s)));
  }
  SymChannel rhs = mix(branches, p);
  return trace_norm_hermitian(lhs.choi - rhs.choi);
}

}  // namespace symclone
