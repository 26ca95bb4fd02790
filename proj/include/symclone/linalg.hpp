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

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace symclone {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Default algebraic tolerance for Hermiticity / PSD / trace checks.
inline constexpr double kTolAlg = 1e-10;

Matrix kron(const Matrix& a, const Matrix& b);

/// Trace over the first (dim_a) or second (dim_b) tensor factor of an
/// operator on C^dim_a (x) C^dim_b.
Matrix partial_trace_first(const Matrix& m, Eigen::Index dim_a,
                           Eigen::Index dim_b);
Matrix partial_trace_second(const Matrix& m, Eigen::Index dim_a,
                            Eigen::Index dim_b);

/// Swap the tensor factors of an operator on C^dim_a (x) C^dim_b.
Matrix swap_factors(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b);

/// Reshuffle an operator M on C^p (x) C^q into the (p p') x (q q') matrix
/// R[(y,y'), (i,j)] = M[(y,i), (y',j)]. Applying it twice with dims
/// (p, q) then (p, q) swapped appropriately is the identity.
Matrix reshuffle(const Matrix& m, Eigen::Index p, Eigen::Index q);

/// Inverse of reshuffle: R of shape p^2 x q^2 back to an operator on
/// C^p (x) C^q with M[(y,i),(y',j)] = R[(y,y'),(i,j)].
Matrix unreshuffle(const Matrix& r, Eigen::Index p, Eigen::Index q);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Largest singular value.
double op_norm(const Matrix& a);

/// Sum of |eigenvalues| for a Hermitian matrix (faster than a full SVD).
double trace_norm_hermitian(const Matrix& a);

double hermiticity_residual(const Matrix& a);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Matrix& a);

/// PSD part: clamp negative eigenvalues of a Hermitian matrix to zero.
Matrix positive_part(const Matrix& a);

/// Principal square root of a PSD matrix (negative rounding clamped).
Matrix sqrt_psd(const Matrix& a);

/// Haar-random unit vector of dimension n (normalised complex Gaussian).
Vector random_unit_vector(Eigen::Index n, Rng& rng);

/// Haar-random unitary via QR of a complex Ginibre matrix.
Matrix random_unitary(Eigen::Index n, Rng& rng);

/// Random density matrix G G^dag / tr (Ginibre ensemble).
Matrix random_density(Eigen::Index n, Rng& rng);

}  // namespace symclone
