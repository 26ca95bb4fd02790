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

#include "symclone/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace symclone {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace_first(const Matrix& m, Eigen::Index dim_a,
                           Eigen::Index dim_b) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  }
  return out;
}

Matrix partial_trace_second(const Matrix& m, Eigen::Index dim_a,
                            Eigen::Index dim_b) {
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      Complex s = 0;
      for (Eigen::Index b = 0; b < dim_b; ++b) {
        s += m(i * dim_b + b, j * dim_b + b);
      }
      out(i, j) = s;
    }
  }
  return out;
}

Matrix swap_factors(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  const Eigen::Index n = dim_a * dim_b;
  Matrix out(n, n);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index b = 0; b < dim_b; ++b) {
      for (Eigen::Index c = 0; c < dim_a; ++c) {
        for (Eigen::Index e = 0; e < dim_b; ++e) {
          out(b * dim_a + a, e * dim_a + c) = m(a * dim_b + b, c * dim_b + e);
        }
      }
    }
  }
  return out;
}

Matrix reshuffle(const Matrix& m, Eigen::Index p, Eigen::Index q) {
  Matrix out(p * p, q * q);
  for (Eigen::Index y = 0; y < p; ++y) {
    for (Eigen::Index yp = 0; yp < p; ++yp) {
      for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index j = 0; j < q; ++j) {
          out(y * p + yp, i * q + j) = m(y * q + i, yp * q + j);
        }
      }
    }
  }
  return out;
}

Matrix unreshuffle(const Matrix& r, Eigen::Index p, Eigen::Index q) {
  Matrix out(p * q, p * q);
  for (Eigen::Index y = 0; y < p; ++y) {
    for (Eigen::Index yp = 0; yp < p; ++yp) {
      for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index j = 0; j < q; ++j) {
          out(y * q + i, yp * q + j) = r(y * p + yp, i * q + j);
        }
      }
    }
  }
  return out;
}

double trace_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double op_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm_hermitian(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double hermiticity_residual(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& a) {
  Matrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix positive_part(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  RealVector lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix sqrt_psd(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  RealVector lam = es.eigenvalues();
  // Rounding noise in the kernel would blow up to sqrt(eps) otherwise.
  const double floor = 1e-13 * std::max(0.0, lam.maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) <= floor ? 0.0 : std::sqrt(lam(i));
  }
  return es.eigenvectors() * lam.asDiagonal() *
         es.eigenvectors().adjoint();
}

Vector random_unit_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

Matrix random_density(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace symclone
