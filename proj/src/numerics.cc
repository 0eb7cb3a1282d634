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

#include "umebh/numerics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "umebh/errors.h"

namespace umebh {

void Tolerances::validate() const {
  if (!(eps_orth > 0.0) || !(eps_unitary > 0.0) || !(eps_unimodular > 0.0)) {
    throw DomainError("tolerances must be strictly positive");
  }
  if (eps_orth > eps_unitary) {
    throw DomainError("eps_orth must not exceed eps_unitary");
  }
}

Complex root_of_unity(long long k, long long d) {
  if (d < 1) throw DomainError("root_of_unity: order must be >= 1");
  long long r = k % d;
  if (r < 0) r += d;
  if (r == 0) return {1.0, 0.0};
  // Quarter turns are exact.
  if (4 * r == d) return {0.0, 1.0};
  if (2 * r == d) return {-1.0, 0.0};
  if (4 * r == 3 * d) return {0.0, -1.0};
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const ComplexVector& v, const char* what) {
  if (!v.allFinite()) {
    throw DomainError(std::string(what) + ": non-finite entry");
  }
}

Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("trace_inner: operands must be square and equal size");
  }
  require_finite(a, "trace_inner");
  require_finite(b, "trace_inner");
  // Tr(a b^dagger) = sum_ij a_ij conj(b_ij)
  Complex acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      acc += a(i, j) * std::conj(b(i, j));
    }
  }
  return acc;
}

namespace {

// Removes the components of w along `basis`; two passes.
void orthogonalize_against(const std::vector<ComplexVector>& basis,
                           ComplexVector& w) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) w -= q.dot(w) * q;
  }
}

}  // namespace

std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> vs,
                                          double eps_orth) {
  std::vector<ComplexVector> out;
  if (vs.empty()) return out;
  const auto d = vs.front().size();
  for (const auto& v : vs) {
    if (v.size() != d) {
      throw DimensionError("orthonormalize: vectors must share length");
    }
    require_finite(v, "orthonormalize");
    ComplexVector w = v;
    orthogonalize_against(out, w);
    const double norm = w.norm();
    if (norm < eps_orth * std::max(1.0, v.norm())) continue;
    out.push_back(w / norm);
  }
  return out;
}

std::vector<ComplexVector> complement_basis(const ComplexMatrix& rows,
                                            double eps_orth) {
  if (rows.rows() > rows.cols()) {
    throw ShapeError("complement_basis: more rows than columns");
  }
  require_finite(rows, "complement_basis");
  const Eigen::Index d = rows.cols();
  // Row vectors as column vectors with their entries unchanged, so the
  // complement is orthogonal to the rows as elements of C^d.
  auto span_basis = orthonormalize(matrix_rows(rows), eps_orth);
  const auto target = d - static_cast<Eigen::Index>(span_basis.size());

  std::vector<ComplexVector> out;
  for (Eigen::Index j = 0;
       j < d && static_cast<Eigen::Index>(out.size()) < target; ++j) {
    ComplexVector w = ComplexVector::Unit(d, j);
    orthogonalize_against(span_basis, w);
    orthogonalize_against(out, w);
    const double norm = w.norm();
    if (norm < eps_orth) continue;
    out.push_back(w / norm);
  }
  return out;
}

double orthonormality_deviation(std::span<const ComplexVector> basis) {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Complex g = basis[i].dot(basis[j]);
      const double dev = std::abs(g - (i == j ? Complex{1.0, 0.0} : Complex{}));
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

ComplexVector project_onto_span(std::span<const ComplexVector> basis,
                                const ComplexVector& v, double eps_orth) {
  require_finite(v, "project_onto_span");
  for (const auto& b : basis) {
    if (b.size() != v.size()) {
      throw DimensionError("project_onto_span: length mismatch");
    }
  }
  if (orthonormality_deviation(basis) > eps_orth) {
    throw PreconditionError("project_onto_span: basis is not orthonormal");
  }
  ComplexVector out = ComplexVector::Zero(v.size());
  for (const auto& b : basis) out += b.dot(v) * b;
  return out;
}

UnitarityReport is_unitary(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw ShapeError("is_unitary: matrix must be square");
  }
  require_finite(m, "is_unitary");
  const ComplexMatrix gram = m * m.adjoint();
  const ComplexMatrix diff =
      gram - ComplexMatrix::Identity(m.rows(), m.cols());
  UnitarityReport report;
  report.max_deviation = diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
  report.unitary = report.max_deviation <= tol.eps_unitary;
  return report;
}

ComplexMatrix stack_rows(std::span<const ComplexVector> rows) {
  if (rows.empty()) return ComplexMatrix(0, 0);
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) {
      throw DimensionError("stack_rows: ragged rows");
    }
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

std::vector<ComplexVector> matrix_rows(const ComplexMatrix& m) {
  std::vector<ComplexVector> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.emplace_back(m.row(i).transpose());
  }
  return out;
}

int rank(const ComplexMatrix& rows, double eps_orth) {
  return static_cast<int>(orthonormalize(matrix_rows(rows), eps_orth).size());
}

double unimodularity_deviation(const ComplexVector& v) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    worst = std::max(worst, std::abs(std::abs(v(j)) - 1.0));
  }
  return worst;
}

}  // namespace umebh
