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

#include "umebh/weyl_basis.h"

#include <string>

#include "umebh/errors.h"

namespace umebh {

namespace {

void require_dimension(int d, const char* what) {
  if (d < 2) throw DomainError(std::string(what) + ": d must be >= 2");
}

}  // namespace

void WeylIndex::validate() const {
  require_dimension(d, "WeylIndex");
  if (m < 0 || m >= d || n < 0 || n >= d) {
    throw DomainError("WeylIndex: exponents must lie in [0, d)");
  }
}

ComplexMatrix shift_matrix(int d) {
  require_dimension(d, "shift_matrix");
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int c = 0; c < d; ++c) x((c + 1) % d, c) = 1.0;
  return x;
}

ComplexMatrix clock_matrix(int d) {
  require_dimension(d, "clock_matrix");
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) z(j, j) = root_of_unity(j, d);
  return z;
}

ComplexMatrix weyl(const WeylIndex& idx) {
  idx.validate();
  const int d = idx.d;
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    w((c + idx.m) % d, c) = root_of_unity(static_cast<long long>(idx.n) * c, d);
  }
  return w;
}

std::vector<ComplexMatrix> weyl_family(int d) {
  require_dimension(d, "weyl_family");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) out.push_back(weyl({m, n, d}));
  }
  return out;
}

std::vector<ComplexMatrix> s0_family(int d) {
  require_dimension(d, "s0_family");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * (d - 1));
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n < d; ++n) out.push_back(weyl({m, n, d}));
  }
  return out;
}

}  // namespace umebh
