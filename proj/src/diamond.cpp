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

#include "symclone/diamond.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace symclone {

HermitianMap::HermitianMap(Eigen::Index in, Eigen::Index out, Matrix c,
                           double tol)
    : in_dim(in), out_dim(out) {
  if (c.rows() != in * out || c.cols() != in * out) {
    throw std::invalid_argument("HermitianMap: Choi side must be in*out");
  }
  if (hermiticity_residual(c) > tol) {
    throw std::invalid_argument("HermitianMap: Choi matrix is not Hermitian");
  }
  choi = (c + c.adjoint()) / 2.0;
}

HermitianMap channel_difference(const SymChannel& a, const SymChannel& b) {
  if (a.d != b.d || a.copies_in != b.copies_in ||
      a.copies_out != b.copies_out) {
    throw std::invalid_argument("channel_difference: shapes do not match");
  }
  return HermitianMap(a.in_dim(), a.out_dim(), a.choi - b.choi);
}

HermitianMap as_hermitian_map(const SymChannel& a) {
  return HermitianMap(a.in_dim(), a.out_dim(), a.choi);
}

Matrix partial_transpose_input(const Matrix& choi, Eigen::Index out_dim,
                               Eigen::Index in_dim) {
  Matrix out(choi.rows(), choi.cols());
  for (Eigen::Index y = 0; y < out_dim; ++y) {
    for (Eigen::Index yp = 0; yp < out_dim; ++yp) {
      for (Eigen::Index i = 0; i < in_dim; ++i) {
        for (Eigen::Index j = 0; j < in_dim; ++j) {
          out(y * in_dim + i, yp * in_dim + j) =
              choi(y * in_dim + j, yp * in_dim + i);
        }
      }
    }
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Real coordinates on Hermitian matrices (orthonormal basis: E_ii, symmetric
// and antisymmetric off-diagonal pairs). Used by the interior-point solver.

const double kSqrt2 = std::sqrt(2.0);

RealVector herm_to_coords(const Matrix& h) {
  const Eigen::Index n = h.rows();
  RealVector c(n * n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) c(idx++) = h(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      c(idx++) = kSqrt2 * h(i, j).real();
      c(idx++) = kSqrt2 * h(i, j).imag();
    }
  }
  return c;
}

Matrix coords_to_herm(const RealVector& c, Eigen::Index n) {
  Matrix h(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = c(idx++);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double re = c(idx++) / kSqrt2;
      const double im = c(idx++) / kSqrt2;
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return h;
}

// I_out (x) small added in place.
void add_lifted(Matrix& target, const Matrix& small, Eigen::Index out_dim) {
  const Eigen::Index nin = small.rows();
  for (Eigen::Index y = 0; y < out_dim; ++y) {
    target.block(y * nin, y * nin, nin, nin) += small;
  }
}

Matrix lift(const Matrix& small, Eigen::Index out_dim) {
  const Eigen::Index nin = small.rows();
  Matrix out = Matrix::Zero(nin * out_dim, nin * out_dim);
  add_lifted(out, small, out_dim);
  return out;
}

// NT scaling W with W S W = X, for X, S > 0.
Matrix nt_scaling(const Matrix& x, const Matrix& s) {
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success) {
    throw SolverError("interior point lost positive definiteness");
  }
  const Matrix l = llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Matrix> es(l.adjoint() * s * l);
  const RealVector lam = es.eigenvalues().cwiseMax(1e-300);
  const Matrix inv_sqrt = es.eigenvectors() *
                          lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                          es.eigenvectors().adjoint();
  return l * inv_sqrt * l.adjoint();
}

// Largest alpha in (0, 1] with X + alpha D >= 0.
double max_step(const Matrix& x, const Matrix& d) {
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const Matrix l = llt.matrixL();
  Matrix a = l.triangularView<Eigen::Lower>().solve(d);
  Matrix b =
      l.triangularView<Eigen::Lower>().solve(Matrix(a.adjoint())).adjoint();
  const double lam = min_eigenvalue((b + b.adjoint()) / 2.0);
  if (lam >= 0.0) return 1.0;
  return std::min(1.0, -1.0 / lam);
}

struct Blocks {
  Matrix b1, b2, b3;  // two Choi-sized blocks and one input-sized block
};

double inner(const Blocks& x, const Blocks& y) {
  return ((x.b1.adjoint() * y.b1).trace() + (x.b2.adjoint() * y.b2).trace() +
          (x.b3.adjoint() * y.b3).trace())
      .real();
}

// Dual lower bound f(rho) = || (I (x) sqrt(rho)) J (I (x) sqrt(rho)) ||_1,
// valid for every density matrix rho on the input space.
double dual_value_for_rho(const Matrix& j, Eigen::Index out_dim,
                          const Matrix& rho_raw) {
  Matrix rho = positive_part(rho_raw);
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) return 0.0;
  rho /= tr;
  const Matrix root = lift(sqrt_psd(rho), out_dim);
  return trace_norm_hermitian(root * j * root);
}

struct CertifiedSolution {
  double upper = 0.0;
  double dual = 0.0;
  int iterations = 0;
};

// Interior-point solve of
//   min ||Tr_out Z||_inf  s.t.  Z >= J, Z >= -J
// written as  min t  s.t.  S = diag(Z - J, Z + J, t I - Tr_out Z) >= 0,
// the Hermitian-Choi reduction of the block diamond-norm program. The primal
// of the pair carries blocks (X1, X2, rho) with X1 + X2 = I (x) rho.
CertifiedSolution solve_diamond_sdp(const Matrix& j, Eigen::Index out_dim,
                                    Eigen::Index in_dim, double tol,
                                    const std::vector<Matrix>& rho_hints) {
  const Eigen::Index n = j.rows();
  const Eigen::Index nin = in_dim;
  const Eigen::Index m = n * n + 1;  // scalar t plus Herm(n) coordinates
  const double n_total = static_cast<double>(2 * n + nin);

  const double scale_j = std::max(1.0, op_norm(j));

  // Strictly feasible start on both sides.
  const double z0 = 1.1 * scale_j + 1.0;
  double t = 1.5 * z0 * static_cast<double>(out_dim) + 1.0;
  Matrix z = z0 * Matrix::Identity(n, n);
  Blocks s{z - j, z + j,
           t * Matrix::Identity(nin, nin) -
               partial_trace_first(z, out_dim, nin)};
  Blocks x{Matrix::Identity(n, n) / (2.0 * nin),
           Matrix::Identity(n, n) / (2.0 * nin),
           Matrix::Identity(nin, nin) / static_cast<double>(nin)};

  const int max_iters = 120;
  int iter = 0;
  RealMatrix schur(m, m);
  for (; iter < max_iters; ++iter) {
    const double mu = inner(x, s) / n_total;
    const double obj_p = ((x.b2 - x.b1).adjoint() * j).trace().real();
    if (mu * n_total < 1e-12 * (1.0 + std::abs(t) + std::abs(obj_p))) break;
    try {

    // Residuals (stay near zero for the feasible start, kept for safety).
    const double r_t = x.b3.trace().real() - 1.0;
    const Matrix r_zmat = x.b1 + x.b2 - lift(x.b3, out_dim);
    Blocks rd{z - j - s.b1, z + j - s.b2,
              t * Matrix::Identity(nin, nin) -
                  partial_trace_first(z, out_dim, nin) - s.b3};

    const Matrix w1 = nt_scaling(x.b1, s.b1);
    const Matrix w2 = nt_scaling(x.b2, s.b2);
    const Matrix w3 = nt_scaling(x.b3, s.b3);

    // Schur complement over (t, Z) coordinates.
    const Matrix w3sq = w3 * w3;
    const RealVector tz = herm_to_coords(lift(w3sq, out_dim));
    schur(0, 0) = w3sq.trace().real();
    schur.block(0, 1, 1, m - 1) = -tz.transpose();
    schur.block(1, 0, m - 1, 1) = -tz;
    {
      Matrix g(n, n), g3(nin, nin);
      Eigen::Index beta = 0;
      auto emit = [&](const Matrix& gtot) {
        schur.block(1, 1 + beta, m - 1, 1) = herm_to_coords(gtot);
        ++beta;
      };
      auto small_from = [&](Eigen::Index p, Eigen::Index q, Complex v,
                            Matrix& smal) {
        // contribution of v * e_{p,q} to Tr_out
        if (p / nin == q / nin) smal(p % nin, q % nin) += v;
      };
      for (Eigen::Index i = 0; i < n; ++i) {
        g.noalias() = w1.col(i) * w1.row(i);
        g.noalias() += w2.col(i) * w2.row(i);
        g3.setZero();
        small_from(i, i, 1.0, g3);
        if (!g3.isZero(0.0)) add_lifted(g, w3 * g3 * w3, out_dim);
        emit(g);
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index jj = i + 1; jj < n; ++jj) {
          // symmetric element
          g.noalias() = (w1.col(i) * w1.row(jj) + w1.col(jj) * w1.row(i)) /
                        kSqrt2;
          g.noalias() += (w2.col(i) * w2.row(jj) + w2.col(jj) * w2.row(i)) /
                         kSqrt2;
          g3.setZero();
          small_from(i, jj, Complex(1.0 / kSqrt2, 0), g3);
          small_from(jj, i, Complex(1.0 / kSqrt2, 0), g3);
          if (!g3.isZero(0.0)) add_lifted(g, w3 * g3 * w3, out_dim);
          emit(g);
          // antisymmetric element
          g.noalias() = Complex(0, 1) *
                        (w1.col(i) * w1.row(jj) - w1.col(jj) * w1.row(i)) /
                        kSqrt2;
          g.noalias() += Complex(0, 1) *
                         (w2.col(i) * w2.row(jj) - w2.col(jj) * w2.row(i)) /
                         kSqrt2;
          g3.setZero();
          small_from(i, jj, Complex(0, 1.0 / kSqrt2), g3);
          small_from(jj, i, Complex(0, -1.0 / kSqrt2), g3);
          if (!g3.isZero(0.0)) add_lifted(g, w3 * g3 * w3, out_dim);
          emit(g);
        }
      }
    }
    Eigen::LDLT<RealMatrix> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      throw SolverError("diamond SDP: Schur factorisation failed");
    }

    auto solve_direction = [&](const Blocks& rc, double& dt, Matrix& dz,
                               Blocks& dx, Blocks& ds) {
      RealVector rhs(m);
      rhs(0) = r_t + rc.b3.trace().real() - (w3 * rd.b3 * w3).trace().real();
      const Matrix wrdw1 = w1 * rd.b1 * w1;
      const Matrix wrdw2 = w2 * rd.b2 * w2;
      const Matrix wrdw3 = w3 * rd.b3 * w3;
      rhs.tail(m - 1) =
          herm_to_coords(r_zmat + rc.b1 + rc.b2 - lift(rc.b3, out_dim) -
                         wrdw1 - wrdw2 + lift(wrdw3, out_dim));
      const RealVector dy = ldlt.solve(rhs);
      dt = dy(0);
      dz = coords_to_herm(dy.tail(m - 1), n);
      ds.b1 = rd.b1 + dz;
      ds.b2 = rd.b2 + dz;
      ds.b3 = rd.b3 - partial_trace_first(dz, out_dim, nin) +
              dt * Matrix::Identity(nin, nin);
      dx.b1 = rc.b1 - w1 * ds.b1 * w1;
      dx.b2 = rc.b2 - w2 * ds.b2 * w2;
      dx.b3 = rc.b3 - w3 * ds.b3 * w3;
    };

    auto step_lengths = [&](const Blocks& dx, const Blocks& ds, double& ap,
                            double& ad) {
      ap = std::min({max_step(x.b1, dx.b1), max_step(x.b2, dx.b2),
                     max_step(x.b3, dx.b3)});
      ad = std::min({max_step(s.b1, ds.b1), max_step(s.b2, ds.b2),
                     max_step(s.b3, ds.b3)});
    };

    // Predictor.
    Blocks rc{-x.b1, -x.b2, -x.b3};
    double dt_aff;
    Matrix dz_aff;
    Blocks dx_aff, ds_aff;
    solve_direction(rc, dt_aff, dz_aff, dx_aff, ds_aff);
    double ap, ad;
    step_lengths(dx_aff, ds_aff, ap, ad);
    Blocks x_aff{x.b1 + 0.99 * ap * dx_aff.b1, x.b2 + 0.99 * ap * dx_aff.b2,
                 x.b3 + 0.99 * ap * dx_aff.b3};
    Blocks s_aff{s.b1 + 0.99 * ad * ds_aff.b1, s.b2 + 0.99 * ad * ds_aff.b2,
                 s.b3 + 0.99 * ad * ds_aff.b3};
    const double mu_aff = inner(x_aff, s_aff) / n_total;
    double sigma = std::pow(mu_aff / mu, 3);
    sigma = std::clamp(sigma, 1e-8, 0.999);

    // Corrector (centering step with the Mehrotra sigma heuristic).
    auto inv_of = [](const Matrix& a) {
      Eigen::LLT<Matrix> llt(a);
      return llt.solve(Matrix::Identity(a.rows(), a.cols())).eval();
    };
    rc.b1 = sigma * mu * inv_of(s.b1) - x.b1;
    rc.b2 = sigma * mu * inv_of(s.b2) - x.b2;
    rc.b3 = sigma * mu * inv_of(s.b3) - x.b3;
    double dt;
    Matrix dz;
    Blocks dx, ds;
    solve_direction(rc, dt, dz, dx, ds);
    step_lengths(dx, ds, ap, ad);
    const double tau = 0.99;
    t += tau * ad * dt;
    z += tau * ad * dz;
    x.b1 += tau * ap * dx.b1;
    x.b2 += tau * ap * dx.b2;
    x.b3 += tau * ap * dx.b3;
    s.b1 += tau * ad * ds.b1;
    s.b2 += tau * ad * ds.b2;
    s.b3 += tau * ad * ds.b3;
    } catch (const SolverError&) {
      // Numerical breakdown near the boundary; the certificate extracted
      // from the current iterates decides whether the solve succeeded.
      break;
    }
  }

  // Exact primal certificate: shift Z until Z >= +-J holds in floating
  // point, then evaluate the objective directly.
  CertifiedSolution out;
  out.iterations = iter;
  const double floor = -1e-12 * scale_j;
  double shift = 0.0;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 60) {
      throw SolverError("diamond SDP: could not repair primal feasibility");
    }
    const Matrix zs = z + shift * Matrix::Identity(n, n);
    const double lam =
        std::min(min_eigenvalue(zs - j), min_eigenvalue(zs + j));
    if (lam >= floor) {
      // Z >= +-J makes Z and its output-trace PSD; the objective is the
      // largest eigenvalue of Tr_out Z.
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          partial_trace_first(zs, out_dim, nin), Eigen::EigenvaluesOnly);
      out.upper = std::max(0.0, es.eigenvalues().maxCoeff());
      break;
    }
    shift = (shift == 0.0) ? std::max(-lam * 1.0000001, 1e-15 * scale_j)
                           : shift * 2.0;
  }

  // Exact dual certificate: best f(rho) over the interior-point rho and any
  // caller-provided hints.
  out.dual = dual_value_for_rho(j, out_dim, x.b3);
  out.dual = std::max(out.dual,
                      dual_value_for_rho(
                          j, out_dim,
                          Matrix(Matrix::Identity(nin, nin) /
                                 static_cast<double>(nin))));
  for (const Matrix& hint : rho_hints) {
    if (hint.rows() == nin && hint.cols() == nin) {
      out.dual = std::max(out.dual, dual_value_for_rho(j, out_dim, hint));
      out.dual = std::max(out.dual, dual_value_for_rho(
                                        j, out_dim, Matrix(hint.transpose())));
    }
  }
  if (out.upper - out.dual > tol) {
    throw SolverError("diamond SDP: certified gap " +
                      std::to_string(out.upper - out.dual) +
                      " exceeds tolerance " + std::to_string(tol));
  }
  return out;
}

}  // namespace

SdpResult sdp_upper(const HermitianMap& map, double tol,
                    const std::vector<Matrix>& rho_hints,
                    Eigen::Index max_side) {
  if (map.choi.rows() > max_side) {
    throw ResourceLimitError("sdp_upper: Choi side " +
                             std::to_string(map.choi.rows()) +
                             " exceeds the SDP size guard " +
                             std::to_string(max_side));
  }
  const CertifiedSolution sol = solve_diamond_sdp(
      map.choi, map.out_dim, map.in_dim, tol, rho_hints);
  SdpResult r;
  r.value = sol.upper;
  r.dual_value = sol.dual;
  r.certified_gap = sol.upper - sol.dual;
  r.iterations = sol.iterations;
  return r;
}

namespace {

// (I (x) P) J (I (x) P)^dag for the ancilla-extended output of a witness
// with matrix P (ancilla x input).
Matrix witness_output(const Matrix& j, Eigen::Index out_dim, const Matrix& p) {
  const Matrix ext = kron(Matrix::Identity(out_dim, out_dim), p);
  return ext * j * ext.adjoint();
}

}  // namespace

SeesawResult seesaw_lower(const HermitianMap& map, int restarts, int iters,
                          std::uint64_t seed) {
  const Eigen::Index nin = map.in_dim;
  const Eigen::Index nout = map.out_dim;
  const Matrix& j = map.choi;
  Rng rng(seed);

  SeesawResult best;
  best.value = -1.0;

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int start = 0; start <= restarts; ++start) {
    Matrix p(nin, nin);
    if (start == 0) {
      p = Matrix::Identity(nin, nin) / std::sqrt(static_cast<double>(nin));
    } else {
      for (Eigen::Index a = 0; a < nin; ++a) {
        for (Eigen::Index b = 0; b < nin; ++b) {
          p(a, b) = Complex(gauss(rng), gauss(rng));
        }
      }
      p /= p.norm();
    }

    double value = trace_norm_hermitian(witness_output(j, nout, p));
    bool monotone = true;
    int it = 0;
    for (; it < iters; ++it) {
      const Matrix tmat = witness_output(j, nout, p);
      Eigen::SelfAdjointEigenSolver<Matrix> es(tmat);
      RealVector sgn(es.eigenvalues().size());
      for (Eigen::Index q = 0; q < sgn.size(); ++q) {
        sgn(q) = es.eigenvalues()(q) >= 0.0 ? 1.0 : -1.0;
      }
      const Matrix v = es.eigenvectors() * sgn.asDiagonal() *
                       es.eigenvectors().adjoint();

      // Pulled-back Hermitian form on witnesses for this dual operator.
      Matrix h = Matrix::Zero(nin * nin, nin * nin);
      for (Eigen::Index a = 0; a < nin; ++a) {
        for (Eigen::Index b = 0; b < nin; ++b) {
          for (Eigen::Index i = 0; i < nin; ++i) {
            for (Eigen::Index jj = 0; jj < nin; ++jj) {
              Complex acc = 0;
              for (Eigen::Index y = 0; y < nout; ++y) {
                for (Eigen::Index yp = 0; yp < nout; ++yp) {
                  acc += v(y * nin + a, yp * nin + b) *
                         j(yp * nin + jj, y * nin + i);
                }
              }
              h(a * nin + i, b * nin + jj) = acc;
            }
          }
        }
      }
      Eigen::SelfAdjointEigenSolver<Matrix> hes((h + h.adjoint()) / 2.0);
      const Vector top = hes.eigenvectors().col(hes.eigenvalues().size() - 1);
      Matrix p_next(nin, nin);
      for (Eigen::Index a = 0; a < nin; ++a) {
        for (Eigen::Index i = 0; i < nin; ++i) {
          p_next(a, i) = top(a * nin + i);
        }
      }
      const double next_value =
          trace_norm_hermitian(witness_output(j, nout, p_next));
      if (next_value < value - 1e-11) {
        monotone = false;
      }
      const bool stalled = next_value <= value + 1e-12;
      if (next_value > value) {
        value = next_value;
        p = p_next;
      }
      if (stalled) break;
    }

    if (value > best.value) {
      best.value = value;
      best.iterations = it;
      best.monotone = monotone;
      best.witness = Vector(nin * nin);
      for (Eigen::Index a = 0; a < nin; ++a) {
        for (Eigen::Index i = 0; i < nin; ++i) {
          best.witness(a * nin + i) = p(a, i);
        }
      }
    }
  }
  return best;
}

DiamondResult diamond_norm(const HermitianMap& map,
                           const DiamondOptions& opts) {
  DiamondResult r;
  r.seesaw = seesaw_lower(map, opts.restarts, opts.iters, opts.seed);
  r.lower = r.seesaw.value;

  // Witness marginal as a dual hint for the certificate.
  std::vector<Matrix> hints;
  if (r.seesaw.witness.size() == map.in_dim * map.in_dim) {
    Matrix p(map.in_dim, map.in_dim);
    for (Eigen::Index a = 0; a < map.in_dim; ++a) {
      for (Eigen::Index i = 0; i < map.in_dim; ++i) {
        p(a, i) = r.seesaw.witness(a * map.in_dim + i);
      }
    }
    hints.push_back(p.adjoint() * p);  // input marginal of the witness
    hints.push_back(p * p.adjoint());
  }
  r.sdp = sdp_upper(map, opts.tol_sdp, hints, opts.sdp_max_side);
  r.upper = r.sdp.value;
  r.gap = r.upper - r.lower;
  r.witness = r.seesaw.witness;
  if (r.lower > r.upper + opts.tol_sdp) {
    throw ValidationError("diamond_norm: lower bound exceeds certified upper");
  }
  return r;
}

DiamondResult diamond_distance(const SymChannel& a, const SymChannel& b,
                               const DiamondOptions& opts) {
  return diamond_norm(channel_difference(a, b), opts);
}

std::vector<BoundComparisonRow> bound_comparison_table(
    int d, int M_lo, int M_hi, int k, bool exact, const DiamondOptions& opts) {
  if (M_lo > M_hi) {
    throw std::invalid_argument("bound_comparison_table: empty M range");
  }
  std::vector<BoundComparisonRow> rows;
  for (int M = M_lo; M <= M_hi; ++M) {
    BoundComparisonRow row;
    row.d = d;
    row.M = M;
    row.k = k;
    row.bounds = analytic_bounds(d, M, k);
    if (exact && k <= M) {
      row.computed = diamond_distance(umeasprep_channel(d, M, k),
                                      trace_channel(d, M, k), opts);
      const double bound = row.bounds.min_estimation_bound;
      if (row.computed->upper > bound + opts.tol_sdp) {
        throw ValidationError(
            "bound_comparison_table: computed distance exceeds the analytic "
            "bound at M = " + std::to_string(M));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace symclone
