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

#ifndef UMEBH_WEYL_BASIS_H_
#define UMEBH_WEYL_BASIS_H_

#include <vector>

#include "umebh/numerics.h"

namespace umebh {

// Exponents of X^m Z^n in dimension d.
struct WeylIndex {
  int m = 0;
  int n = 0;
  int d = 2;

  // Throws DomainError unless d >= 2 and 0 <= m, n < d.
  void validate() const;
};

// X = sum_j |j+1><j| (indices mod d): entry (r, c) is 1 iff r = c + 1 mod d.
ComplexMatrix shift_matrix(int d);

// Z = diag(omega_d^j).
ComplexMatrix clock_matrix(int d);

// X^m Z^n, assembled entrywise: column c carries omega_d^{nc} in row c + m.
ComplexMatrix weyl(const WeylIndex& idx);

// All d^2 Weyl operators, lexicographic in (m, n).
std::vector<ComplexMatrix> weyl_family(int d);

// The d(d-1) operators X^m Z^n with m in [1, d), n in [0, d), lexicographic
// in (m, n). Their orthogonal complement in M_d is the diagonal matrices.
std::vector<ComplexMatrix> s0_family(int d);

}  // namespace umebh

#endif  // UMEBH_WEYL_BASIS_H_
