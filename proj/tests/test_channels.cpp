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

#include <doctest.h>

#include <cmath>

namespace symclone {
namespace {

Eigen::Index int_pow(int d, int e) {
  Eigen::Index v = 1;
  for (int i = 0; i < e; ++i) v *= d;
  return v;
}

// Dense embedding oracles: build each channel by explicitly symmetrising in
// the full d^copies product space and projecting back.

SymChannel umeasprep_oracle(int d, int M, int k) {
  const Matrix v_joint = embed_isometry(d, M + k);
  const Matrix p_joint = v_joint * v_joint.adjoint();
  const Matrix v_in = embed_isometry(d, M);
  const Matrix v_out = embed_isometry(d, k);
  const double scale =
      rational_to_double(Rational(sym_dim_big(d, M), sym_dim_big(d, M + k)));
  const Eigen::Index din = v_in.cols(), dout = v_out.cols();
  const Matrix eye_k = Matrix::Identity(int_pow(d, k), int_pow(d, k));
  Matrix choi = Matrix::Zero(dout * din, dout * din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      const Matrix emb = v_in.col(i) * v_in.col(j).adjoint();
      const Matrix traced = partial_trace_first(
          kron(emb, eye_k) * p_joint, int_pow(d, M), int_pow(d, k));
      const Matrix block = scale * v_out.adjoint() * traced * v_out;
      for (Eigen::Index y = 0; y < dout; ++y) {
        for (Eigen::Index yp = 0; yp < dout; ++yp) {
          choi(y * din + i, yp * din + j) = block(y, yp);
        }
      }
    }
  }
  return SymChannel(d, M, k, std::move(choi));
}

SymChannel uclon_oracle(int d, int s, int k) {
  const Matrix v_in = embed_isometry(d, s);
  const Matrix v_out = embed_isometry(d, k);
  const double scale =
      rational_to_double(Rational(sym_dim_big(d, s), sym_dim_big(d, k)));
  const Eigen::Index din = v_in.cols(), dout = v_out.cols();
  const Matrix eye_rest =
      Matrix::Identity(int_pow(d, k - s), int_pow(d, k - s));
  Matrix choi = Matrix::Zero(dout * din, dout * din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      const Matrix emb = v_in.col(i) * v_in.col(j).adjoint();
      // P_+ V_k = V_k, so projecting with V_k absorbs both symmetrisers.
      const Matrix block =
          scale * v_out.adjoint() * kron(emb, eye_rest) * v_out;
      for (Eigen::Index y = 0; y < dout; ++y) {
        for (Eigen::Index yp = 0; yp < dout; ++yp) {
          choi(y * din + i, yp * din + j) = block(y, yp);
        }
      }
    }
  }
  return SymChannel(d, s, k, std::move(choi));
}

SymChannel trace_oracle(int d, int M, int k) {
  const Matrix v_in = embed_isometry(d, M);
  const Matrix v_out = embed_isometry(d, k);
  const Eigen::Index din = v_in.cols(), dout = v_out.cols();
  Matrix choi = Matrix::Zero(dout * din, dout * din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      const Matrix emb = v_in.col(i) * v_in.col(j).adjoint();
      const Matrix traced =
          partial_trace_second(emb, int_pow(d, k), int_pow(d, M - k));
      const Matrix block = v_out.adjoint() * traced * v_out;
      for (Eigen::Index y = 0; y < dout; ++y) {
        for (Eigen::Index yp = 0; yp < dout; ++yp) {
          choi(y * din + i, yp * din + j) = block(y, yp);
        }
      }
    }
  }
  return SymChannel(d, M, k, std::move(choi));
}

// Unitary U acting on the symmetric subspace through U^(x)M.
Matrix sym_rep(const Matrix& u, int M) {
  const int d = static_cast<int>(u.rows());
  Matrix lifted(1, 1);
  lifted(0, 0) = 1.0;
  for (int i = 0; i < M; ++i) lifted = kron(lifted, u).eval();
  const Matrix v = embed_isometry(d, M);
  return v.adjoint() * lifted * v;
}

double state_fidelity(const SymOperator& rho, const Vector& psi) {
  const Vector amp = coherent_amplitudes(psi, rho.M);
  return (amp.adjoint() * rho.matrix * amp)(0, 0).real();
}

TEST_CASE("constructed channels satisfy CPTP invariants") {
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 4; ++M) {
      for (int k = 0; k <= 4; ++k) {
        CHECK(cptp_residuals(umeasprep_channel(d, M, k)).max() < 1e-10);
        if (k >= 1) {
          for (int s = 0; s <= k; ++s) {
            CHECK(cptp_residuals(uclon_channel(d, s, k)).max() < 1e-10);
          }
        }
        if (k <= M) {
          CHECK(cptp_residuals(trace_channel(d, M, k)).max() < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("channel constructions match the dense embedding oracles") {
  for (int d = 2; d <= 3; ++d) {
    const int cap = (d == 2) ? 3 : 2;
    for (int M = 1; M <= cap; ++M) {
      for (int k = 1; k <= cap; ++k) {
        CHECK((umeasprep_channel(d, M, k).choi -
               umeasprep_oracle(d, M, k).choi).cwiseAbs().maxCoeff() < 1e-12);
        if (k <= M) {
          CHECK((trace_channel(d, M, k).choi -
                 trace_oracle(d, M, k).choi).cwiseAbs().maxCoeff() < 1e-12);
        }
        if (M <= k) {
          CHECK((uclon_channel(d, M, k).choi -
                 uclon_oracle(d, M, k).choi).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("uclon at s = k is the identity channel") {
  for (int d = 2; d <= 3; ++d) {
    for (int k = 1; k <= 3; ++k) {
      CHECK((uclon_channel(d, k, k).choi -
             identity_channel(d, k).choi).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(uclon_channel(2, 3, 2), std::invalid_argument);
}

TEST_CASE("single-copy cloning fidelity matches the closed form") {
  Rng rng(31);
  // 1 -> 2 qubit cloning: 5/6 for any input.
  for (int trial = 0; trial < 5; ++trial) {
    const Vector psi = random_unit_vector(2, rng);
    const SymOperator out =
        apply(uclon_channel(2, 1, 2), product_state_operator(psi, 1));
    const SymOperator one = partial_trace_sym(out, 1);
    CHECK(state_fidelity(one, psi) == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
  }
  // General s -> k: F = s/k + (k-s)(s+1)/(k(s+d)).
  for (int d = 2; d <= 3; ++d) {
    for (int k = 1; k <= 4; ++k) {
      for (int s = 1; s <= k; ++s) {
        const Vector psi = random_unit_vector(d, rng);
        const SymOperator out =
            apply(uclon_channel(d, s, k), product_state_operator(psi, s));
        const double f = state_fidelity(partial_trace_sym(out, 1), psi);
        const double expect =
            static_cast<double>(s) / k +
            static_cast<double>(k - s) * (s + 1) / (static_cast<double>(k) *
                                                    (s + d));
        CHECK(f == doctest::Approx(expect).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("umeasprep output fidelity equals the estimation fidelity") {
  Rng rng(32);
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 4; ++M) {
      for (int k = 1; k <= 4; ++k) {
        const SymChannel ch = umeasprep_channel(d, M, k);
        const double expect = rational_to_double(fidelity_est(d, M, k));
        for (int trial = 0; trial < 3; ++trial) {
          const Vector psi = random_unit_vector(d, rng);
          const SymOperator out = apply(ch, product_state_operator(psi, M));
          const Vector target = coherent_amplitudes(psi, k);
          const double f = (target.adjoint() * out.matrix * target)(0).real();
          CHECK(f == doctest::Approx(expect).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("measure-and-prepare output on a basis power is diagonal") {
  // On |1><1|^(x)M the output is diagonal in the occupation basis with
  // weight proportional to C(M + n_1, M).
  for (int d = 2; d <= 3; ++d) {
    for (int M = 1; M <= 3; ++M) {
      for (int k = 1; k <= 3; ++k) {
        Vector e1 = Vector::Zero(d);
        e1(0) = 1.0;
        const SymOperator out =
            apply(umeasprep_channel(d, M, k), product_state_operator(e1, M));
        const OccupationBasis basis(d, k);
        const double scale = rational_to_double(
            Rational(sym_dim_big(d, M), sym_dim_big(d, M + k)) /
            Rational(binomial(M + k, k)));
        for (Eigen::Index a = 0; a < basis.size(); ++a) {
          for (Eigen::Index b = 0; b < basis.size(); ++b) {
            const double expect =
                (a == b) ? scale * binomial(M + basis.at(a).counts[0], M)
                                       .convert_to<double>()
                         : 0.0;
            CHECK(std::abs(out.matrix(a, b) - expect) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("umeasprep(2,1,1) acts as (rho + I)/3") {
  const SymChannel ch = umeasprep_channel(2, 1, 1);
  Rng rng(33);
  const Matrix rho = random_density(2, rng);
  const SymOperator out = apply(ch, SymOperator(2, 1, rho));
  const Matrix expect = (rho + Matrix::Identity(2, 2)) / 3.0;
  CHECK((out.matrix - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("k = 0 measure-and-prepare is the trace functional") {
  for (int d = 2; d <= 3; ++d) {
    const SymChannel ch = umeasprep_channel(d, 3, 0);
    const SymChannel tr = trace_channel(d, 3, 0);
    CHECK((ch.choi - tr.choi).norm() < 1e-14);
    CHECK((ch.choi - Matrix::Identity(ch.in_dim(), ch.in_dim())).norm() <
          1e-14);
  }
}

TEST_CASE("trace channel behaviour") {
  CHECK((trace_channel(2, 3, 3).choi - identity_channel(2, 3).choi).norm() <
        1e-14);
  CHECK_THROWS_AS(trace_channel(2, 2, 3), std::invalid_argument);

  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const SymOperator rho = random_sym_state(2, 4, rng);
    const SymOperator via_channel = apply(trace_channel(2, 4, 2), rho);
    const SymOperator direct = partial_trace_sym(rho, 2);
    CHECK((via_channel.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }

  Matrix pure = Matrix::Zero(3, 3);
  pure(1, 1) = 1.0;
  const SymOperator red =
      apply(trace_channel(2, 2, 1), SymOperator(2, 2, pure));
  CHECK((red.matrix - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
}

TEST_CASE("compose and mix") {
  const SymChannel ch = umeasprep_channel(2, 2, 2);
  CHECK((compose(identity_channel(2, 2), ch).choi - ch.choi).norm() < 1e-12);
  CHECK((compose(ch, identity_channel(2, 2)).choi - ch.choi).norm() < 1e-12);

  // Tr_{k-j} ∘ Tr_{M-k} = Tr_{M-j}
  const SymChannel lhs =
      compose(trace_channel(2, 3, 1), trace_channel(2, 5, 3));
  CHECK((lhs.choi - trace_channel(2, 5, 1).choi).norm() < 1e-12);

  ProbabilityVector one;
  one.entries = {Rational(1)};
  CHECK((mix({ch}, one).choi - ch.choi).norm() == 0.0);

  ProbabilityVector bad;
  bad.entries = {Rational(1, 2)};
  CHECK_THROWS_AS(mix({ch}, bad), ValidationError);
  CHECK_THROWS_AS(compose(trace_channel(2, 3, 1), trace_channel(2, 5, 2)),
                  std::invalid_argument);
}

TEST_CASE("measure-and-prepare decomposes into loss plus cloning") {
  CHECK(decomposition_residual(2, 2, 2) < 1e-10);
  CHECK(decomposition_residual(3, 2, 3) < 1e-10);
  CHECK(decomposition_residual(2, 1, 1) < 1e-12);
  CHECK(decomposition_residual(2, 4, 3) < 1e-10);
}

TEST_CASE("relabeling covariance of the measure-and-prepare channel") {
  Rng rng(35);
  const int d = 2, M = 3, k = 2;
  const SymChannel ch = umeasprep_channel(d, M, k);
  const Matrix u = random_unitary(d, rng);
  const Matrix r_in = sym_rep(u, M);
  const Matrix r_out = sym_rep(u, k);
  const SymOperator rho = random_sym_state(d, M, rng);
  const SymOperator lhs =
      apply(ch, SymOperator(d, M, r_in * rho.matrix * r_in.adjoint()));
  const SymOperator rhs = apply(ch, rho);
  CHECK((lhs.matrix - r_out * rhs.matrix * r_out.adjoint())
            .cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("apply rejects mismatched shapes") {
  Rng rng(36);
  const SymOperator rho = random_sym_state(2, 3, rng);
  CHECK_THROWS_AS(apply(umeasprep_channel(2, 2, 1), rho),
                  std::invalid_argument);
}

}  // namespace
}  // namespace symclone
