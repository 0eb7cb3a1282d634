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

#include "umebh/hadamard.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "umebh/errors.h"

namespace umebh {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

std::string PartialCheck::describe() const {
  std::ostringstream os;
  os << "modulus " << (modulus_ok ? "ok" : "VIOLATED") << " (worst "
     << worst_modulus_deviation;
  if (worst_modulus_row >= 0) {
    os << " at [" << worst_modulus_row << "," << worst_modulus_col << "]";
  }
  os << "), gram " << (gram_ok ? "ok" : "VIOLATED") << " (worst "
     << worst_gram_deviation;
  if (worst_gram_row >= 0) {
    os << " at [" << worst_gram_row << "," << worst_gram_col << "]";
  }
  os << ")";
  return os.str();
}

PartialCheck check_partial(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() > h.cols()) {
    throw ShapeError("verify_partial: more rows than columns");
  }
  require_finite(h, "verify_partial");
  PartialCheck out;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      const double dev = std::abs(std::abs(h(r, c)) - 1.0);
      if (dev > out.worst_modulus_deviation || out.worst_modulus_row < 0) {
        out.worst_modulus_deviation = dev;
        out.worst_modulus_row = r;
        out.worst_modulus_col = c;
      }
    }
  }
  out.modulus_ok = out.worst_modulus_deviation <= tol.eps_unimodular;

  const ComplexMatrix gram = h * h.adjoint();
  const double d = static_cast<double>(h.cols());
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    for (Eigen::Index s = 0; s < gram.cols(); ++s) {
      const Complex expected = r == s ? Complex{d, 0.0} : Complex{};
      const double dev = std::abs(gram(r, s) - expected);
      if (dev > out.worst_gram_deviation || out.worst_gram_row < 0) {
        out.worst_gram_deviation = dev;
        out.worst_gram_row = r;
        out.worst_gram_col = s;
      }
    }
  }
  out.gram_ok = out.worst_gram_deviation <= tol.eps_orth;
  return out;
}

PartialVerification verify_partial(const ComplexMatrix& h,
                                   const Tolerances& tol) {
  PartialVerification out;
  out.report = check_partial(h, tol);
  if (out.report.accepted()) {
    out.value = PartialHadamard::from_matrix(h, tol);
  }
  return out;
}

PartialHadamard PartialHadamard::from_matrix(const ComplexMatrix& m,
                                             const Tolerances& tol) {
  const PartialCheck report = check_partial(m, tol);
  if (!report.accepted()) {
    throw VerificationError("not a partial Hadamard matrix: " +
                            report.describe());
  }
  return PartialHadamard(m);
}

PartialHadamard fourier(int d) {
  if (d < 1) throw DomainError("fourier: d must be >= 1");
  ComplexMatrix f(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      f(r, c) = root_of_unity(static_cast<long long>(r) * c, d);
    }
  }
  return PartialHadamard::from_matrix(f);
}

PartialHadamard prop2_matrix(int n) {
  if (n < 1) throw DomainError("prop2_matrix: n must be >= 1");
  const int half = 2 * n;
  const int d = 4 * n + 1;
  ComplexMatrix a(half, d);
  for (int r = 0; r < half; ++r) {
    for (int j = 0; j < half; ++j) {
      a(r, j) = root_of_unity(static_cast<long long>(r) * j, half);
    }
    for (int j = 0; j <= half; ++j) {
      a(r, half + j) = root_of_unity(static_cast<long long>(r) * j, half + 1);
    }
  }
  return PartialHadamard::from_matrix(a);
}

std::vector<ComplexVector> prop2_beta_basis(int n) {
  if (n < 1) throw DomainError("prop2_beta_basis: n must be >= 1");
  const int half = 2 * n;
  const int d = 4 * n + 1;

  ComplexVector beta1 = ComplexVector::Zero(d);
  beta1(0) = 1.0 / std::sqrt(2.0);
  beta1(half) = -1.0 / std::sqrt(2.0);

  const double s = std::sqrt(8.0 * n + 2.0);
  ComplexVector beta2 = ComplexVector::Zero(d);
  beta2(0) = 1.0 / s;
  beta2(half) = 1.0 / s;
  // Remaining sigma-block entries: 2 sigma^{2n}, 2 sigma^{2n-1}, ..., 2 sigma.
  for (int j = 1; j <= half; ++j) {
    beta2(half + j) = 2.0 * root_of_unity(half + 1 - j, half + 1) / s;
  }

  std::vector<ComplexVector> seeds = matrix_rows(prop2_matrix(n).matrix());
  seeds.push_back(beta1);
  seeds.push_back(beta2);
  for (int j = 1; j < half; ++j) seeds.push_back(ComplexVector::Unit(d, j));
  const auto ortho = orthonormalize(seeds);
  if (static_cast<int>(ortho.size()) != d) {
    throw InternalConsistencyError("prop2_beta_basis: unexpected rank");
  }
  std::vector<ComplexVector> out;
  out.push_back(beta1);
  out.push_back(beta2);
  // orthonormalize scales rows to unit norm; the complement part starts at
  // index 2n (beta1, beta2 are already orthonormal to the rows, so they
  // survive unchanged up to rounding).
  for (int j = half + 2; j < d; ++j) out.push_back(ortho[j]);
  return out;
}

std::vector<ComplexVector> example5_nu_basis() {
  const Complex w = root_of_unity(1, 3);
  const Complex w2 = root_of_unity(2, 3);
  const double r2 = std::sqrt(2.0);
  const double r10 = std::sqrt(10.0);
  const double r15 = std::sqrt(15.0);
  ComplexVector nu1(5), nu2(5), nu3(5);
  nu1 << 1.0 / r2, 0.0, -1.0 / r2, 0.0, 0.0;
  nu2 << 1.0 / r10, 0.0, 1.0 / r10, 2.0 * w2 / r10, 2.0 * w / r10;
  nu3 << 0.0, std::sqrt(3.0 / 5.0), 0.0, (w - 1.0) / r15, (w2 - 1.0) / r15;
  return {nu1, nu2, nu3};
}

PartialHadamard example5_b() {
  const auto nu = example5_nu_basis();
  const double k = std::sqrt(5.0 / 3.0);
  const ComplexVector alpha3 = k * nu[0] + kI * k * nu[1] + kI * k * nu[2];
  const ComplexMatrix a = prop2_matrix(1).matrix();
  ComplexMatrix b(3, 5);
  b.topRows(2) = a;
  b.row(2) = alpha3.transpose();
  return PartialHadamard::from_matrix(b);
}

PartialHadamard example7_a() {
  const Complex w = root_of_unity(1, 3);
  const Complex w2 = root_of_unity(2, 3);
  ComplexMatrix a(3, 7);
  a << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
       1.0, w, w2, 1.0, kI, -1.0, -kI,
       1.0, w2, w, 1.0, -1.0, 1.0, -1.0;
  return PartialHadamard::from_matrix(a);
}

std::vector<ComplexVector> example7_printed_beta() {
  const Complex w = root_of_unity(1, 3);
  const Complex w2 = root_of_unity(2, 3);
  const double r2 = std::sqrt(2.0);
  const double r14 = std::sqrt(14.0);
  ComplexVector b1(7), b2(7), b3(7), b4(7);
  b1 << 1.0 / r2, 0.0, 0.0, -1.0 / r2, 0.0, 0.0, 0.0;
  b2 << 1.0 / r14, 0.0, 0.0, 1.0 / r14, -2.0 * kI / r14, -2.0 / r14,
      2.0 * kI / r14;
  b3 << 0.0, 2.0 * w / r14, 2.0 * w2 / r14, 0.0, -kI / r14, 2.0 / r14,
      kI / r14;
  b4 << 0.0, 2.0 / r14, -2.0 * w2 / r14, 0.0, (w - 1.0) / r14, 0.0,
      (w - 1.0) / r14;
  return {b1, b2, b3, b4};
}

PrintedBasisCrosscheck crosscheck_printed_basis(
    const PartialHadamard& h, const std::vector<ComplexVector>& printed,
    double flag_threshold) {
  PrintedBasisCrosscheck out;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    if (printed[i].size() != h.dim()) {
      throw DimensionError("crosscheck_printed_basis: length mismatch");
    }
    double worst = 0.0;
    for (int r = 0; r < h.rows(); ++r) {
      worst = std::max(worst, std::abs(h.row(r).dot(printed[i])));
    }
    out.row_overlap.push_back(worst);
    if (worst > flag_threshold) out.flagged.push_back(static_cast<int>(i));
  }
  out.orthonormality_deviation = orthonormality_deviation(printed);
  return out;
}

PartialHadamard complete_last_row(const PartialHadamard& h,
                                  const Tolerances& tol) {
  const int d = h.dim();
  if (h.rows() != d - 1) {
    throw RankError("complete_last_row: need exactly d-1 rows");
  }
  const auto comp = complement_basis(h.matrix(), tol.eps_orth);
  if (comp.size() != 1) {
    throw RankError("complete_last_row: complement is not 1-dimensional");
  }
  ComplexVector nu = comp.front();
  // Gauge: first entry real positive.
  const double a0 = std::abs(nu(0));
  if (a0 > 0.0) nu *= std::conj(nu(0)) / a0;
  ComplexVector row = std::sqrt(static_cast<double>(d)) * nu;
  const double dev = unimodularity_deviation(row);
  if (dev > tol.eps_unimodular) {
    throw InternalConsistencyError(
        "complete_last_row: appended row is not unimodular (deviation " +
        std::to_string(dev) + ")");
  }
  ComplexMatrix full(d, d);
  full.topRows(d - 1) = h.matrix();
  full.row(d - 1) = row.transpose();
  return PartialHadamard::from_matrix(full, tol);
}

ScrambleMoves ScrambleMoves::identity(int rows, int cols) {
  ScrambleMoves m;
  m.row_phases.assign(static_cast<std::size_t>(rows), Complex{1.0, 0.0});
  m.col_phases.assign(static_cast<std::size_t>(cols), Complex{1.0, 0.0});
  m.row_order.resize(static_cast<std::size_t>(rows));
  m.col_order.resize(static_cast<std::size_t>(cols));
  std::iota(m.row_order.begin(), m.row_order.end(), 0);
  std::iota(m.col_order.begin(), m.col_order.end(), 0);
  return m;
}

ScrambleMoves ScrambleMoves::random(int rows, int cols, std::uint64_t seed) {
  ScrambleMoves m = identity(rows, cols);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (auto& p : m.row_phases) p = std::polar(1.0, phase(rng));
  for (auto& p : m.col_phases) p = std::polar(1.0, phase(rng));
  std::shuffle(m.row_order.begin(), m.row_order.end(), rng);
  std::shuffle(m.col_order.begin(), m.col_order.end(), rng);
  return m;
}

PartialHadamard scramble(const PartialHadamard& h, const ScrambleMoves& moves) {
  const int k = h.rows();
  const int d = h.dim();
  if (static_cast<int>(moves.row_phases.size()) != k ||
      static_cast<int>(moves.row_order.size()) != k ||
      static_cast<int>(moves.col_phases.size()) != d ||
      static_cast<int>(moves.col_order.size()) != d) {
    throw ShapeError("scramble: moves do not match matrix shape");
  }
  ComplexMatrix out(k, d);
  for (int i = 0; i < k; ++i) {
    const int src_r = moves.row_order[static_cast<std::size_t>(i)];
    for (int j = 0; j < d; ++j) {
      const int src_c = moves.col_order[static_cast<std::size_t>(j)];
      out(i, j) = moves.row_phases[static_cast<std::size_t>(src_r)] *
                  h.matrix()(src_r, src_c) *
                  moves.col_phases[static_cast<std::size_t>(src_c)];
    }
  }
  return PartialHadamard::from_matrix(out);
}

PartialHadamard scramble(const PartialHadamard& h, std::uint64_t seed) {
  return scramble(h, ScrambleMoves::random(h.rows(), h.dim(), seed));
}

ParityCertificate parity_certificate(int n,
                                     const std::vector<ComplexVector>& solutions,
                                     double tol) {
  if (n < 1) throw DomainError("parity_certificate: n must be >= 1");
  ParityCertificate cert;
  cert.n = n;
  cert.parity_rows = 2 * n + 1;
  cert.forced_modulus =
      std::sqrt((4.0 * n + 1.0) / (2.0 * n + 1.0));
  if (solutions.empty()) {
    cert.warning = "no solutions supplied; certificate is vacuous";
    return cert;
  }
  bool ok = true;
  for (const auto& k : solutions) {
    if (k.size() != cert.parity_rows) {
      throw DimensionError("parity_certificate: expected 2n+1 coefficients");
    }
    for (Eigen::Index j = 0; j < k.size(); ++j) {
      const double dev = std::abs(std::abs(k(j)) - cert.forced_modulus);
      cert.worst_modulus_deviation = std::max(cert.worst_modulus_deviation, dev);
      if (dev > tol) ok = false;
    }
    if (std::abs(k(1)) == 0.0) {
      ok = false;
      cert.worst_coupling_deviation = std::numeric_limits<double>::infinity();
      continue;
    }
    const Complex ratio = k(0) / k(1);
    const double dev = std::min(std::abs(ratio - kI), std::abs(ratio + kI));
    cert.worst_coupling_deviation = std::max(cert.worst_coupling_deviation, dev);
    if (dev > tol) ok = false;
    ++cert.solutions_checked;
  }
  cert.coupling_verified = ok;
  return cert;
}

SignPatternCertificate example5_sign_certificate() {
  const auto nu = example5_nu_basis();
  const ComplexVector alpha3 = example5_b().row(2);
  const double k = std::sqrt(5.0 / 3.0);
  SignPatternCertificate cert;
  cert.min_overlap = std::numeric_limits<double>::infinity();
  for (double s2 : {1.0, -1.0}) {
    for (double s3 : {1.0, -1.0}) {
      const ComplexVector v = k * (nu[0] + s2 * kI * nu[1] + s3 * kI * nu[2]);
      const double overlap = std::abs(alpha3.dot(v));
      cert.overlaps.push_back(overlap);
      cert.min_overlap = std::min(cert.min_overlap, overlap);
    }
  }
  return cert;
}

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return (a - b).cwiseAbs().maxCoeff() <= eps;
}

}  // namespace umebh
