// Copyright 2026 The umebh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMEBH_NUMERICS_H_
#define UMEBH_NUMERICS_H_

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace umebh {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Numerical thresholds shared by every verifier.
struct Tolerances {
  double eps_orth = 1e-9;
  double eps_unitary = 1e-8;
  double eps_unimodular = 1e-9;

  // Throws DomainError unless all are positive and eps_orth <= eps_unitary.
  void validate() const;
};

// omega_d^k = exp(2 pi i k / d) with k reduced mod d before the angle is
// formed, so omega_d^d is exactly 1.
Complex root_of_unity(long long k, long long d);

// Throws DomainError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);
void require_finite(const ComplexVector& v, const char* what);

// Tr(a b^dagger). Throws DimensionError unless both are square and the same
// size.
Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Modified Gram-Schmidt with one reorthogonalisation pass. Vectors whose
// residual norm falls below eps_orth * max(1, |v|) are dropped; survivors
// keep their input order.
std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> vs,
                                          double eps_orth = 1e-9);

// Orthonormal basis of the orthogonal complement of the row span of `rows`
// (k x d, k <= d), built by orthogonalising e_1..e_d against the rows and
// keeping survivors in index order.
std::vector<ComplexVector> complement_basis(const ComplexMatrix& rows,
                                            double eps_orth = 1e-9);

// sum_i <b_i, v> b_i. Throws PreconditionError if `basis` is not orthonormal
// within eps_orth.
ComplexVector project_onto_span(std::span<const ComplexVector> basis,
                                const ComplexVector& v,
                                double eps_orth = 1e-9);

// Max |<b_i, b_j> - delta_ij| over the set.
double orthonormality_deviation(std::span<const ComplexVector> basis);

struct UnitarityReport {
  bool unitary = false;
  double max_deviation = 0.0;  // max entry of |M M^dagger - I|
};

UnitarityReport is_unitary(const ComplexMatrix& m, const Tolerances& tol = {});

// Rows of the result are the given vectors.
ComplexMatrix stack_rows(std::span<const ComplexVector> rows);
std::vector<ComplexVector> matrix_rows(const ComplexMatrix& m);

// Numerical rank: number of vectors surviving orthonormalize.
int rank(const ComplexMatrix& rows, double eps_orth = 1e-9);

// Max entry modulus deviation from 1.
double unimodularity_deviation(const ComplexVector& v);

}  // namespace umebh

#endif  // UMEBH_NUMERICS_H_
