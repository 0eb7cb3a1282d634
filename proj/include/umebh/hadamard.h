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

#ifndef UMEBH_HADAMARD_H_
#define UMEBH_HADAMARD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umebh/numerics.h"

namespace umebh {

// Outcome of checking the two partial Hadamard invariants. Unimodularity is
// checked first; both are always reported.
struct PartialCheck {
  bool modulus_ok = false;
  bool gram_ok = false;
  double worst_modulus_deviation = 0.0;
  Eigen::Index worst_modulus_row = -1;
  Eigen::Index worst_modulus_col = -1;
  // max |(H H^dagger - d I)_{rs}|, diagonal included.
  double worst_gram_deviation = 0.0;
  Eigen::Index worst_gram_row = -1;
  Eigen::Index worst_gram_col = -1;

  bool accepted() const { return modulus_ok && gram_ok; }
  std::string describe() const;
};

// k x d matrix (k <= d) with unimodular entries and H H^dagger = d I_k.
// Instances only come out of verify_partial or the generators below, so the
// invariants hold for every value of this type.
class PartialHadamard {
 public:
  const ComplexMatrix& matrix() const { return mat_; }
  int rows() const { return static_cast<int>(mat_.rows()); }
  int dim() const { return static_cast<int>(mat_.cols()); }
  bool complete() const { return rows() == dim(); }
  ComplexVector row(int i) const { return mat_.row(i).transpose(); }

  // Throws VerificationError (with the check summary) on failure.
  static PartialHadamard from_matrix(const ComplexMatrix& m,
                                     const Tolerances& tol = {});

 private:
  explicit PartialHadamard(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

struct PartialVerification {
  PartialCheck report;
  std::optional<PartialHadamard> value;
};

// Throws ShapeError if h has more rows than columns.
PartialCheck check_partial(const ComplexMatrix& h, const Tolerances& tol = {});
PartialVerification verify_partial(const ComplexMatrix& h,
                                   const Tolerances& tol = {});

// Entry (r, c) = omega_d^{rc}.
PartialHadamard fourier(int d);

// 2n x (4n+1): row r is (omega^{rj})_{j<2n} followed by (sigma^{rj})_{j<=2n},
// omega = e^{2 pi i / 2n}, sigma = e^{2 pi i / (2n+1)}.
PartialHadamard prop2_matrix(int n);

// Orthonormal basis beta_1..beta_{2n+1} of the complement of prop2_matrix(n):
// beta_1, beta_2 in closed form, the rest by orthonormalising e_2..e_{2n}
// against the rows and beta_1, beta_2. beta_{j+2} has a single nonzero entry
// sqrt((2n+1)/(4n+1)) among the first 2n+1 coordinates, at coordinate j.
std::vector<ComplexVector> prop2_beta_basis(int n);

// nu_1, nu_2, nu_3 of the d = 5 example, evaluated from their closed forms.
std::vector<ComplexVector> example5_nu_basis();

// prop2_matrix(1) with alpha_3 = sqrt(5/3) (nu_1 + i nu_2 + i nu_3) appended.
PartialHadamard example5_b();

// The printed 3 x 7 matrix of the d = 7 example.
PartialHadamard example7_a();

// The four complement vectors printed alongside example7_a, transcribed
// as-is.
std::vector<ComplexVector> example7_printed_beta();

struct PrintedBasisCrosscheck {
  // Per vector: max |<alpha_r, beta>| over the matrix rows.
  std::vector<double> row_overlap;
  double orthonormality_deviation = 0.0;
  // Vectors whose overlap exceeds `flag_threshold`.
  std::vector<int> flagged;
  bool consistent() const { return flagged.empty(); }
};

// Flags printed complement vectors that are not orthogonal to the rows of h.
PrintedBasisCrosscheck crosscheck_printed_basis(
    const PartialHadamard& h, const std::vector<ComplexVector>& printed,
    double flag_threshold = 1e-8);

// Appends sqrt(d) * nu for the unit vector nu spanning the 1-dimensional
// complement of a (d-1) x d partial Hadamard matrix. The appended row is
// phase-fixed so its first entry is real positive. Throws RankError if the
// complement is not 1-dimensional and InternalConsistencyError if the new
// row is not unimodular within eps_unimodular.
PartialHadamard complete_last_row(const PartialHadamard& h,
                                  const Tolerances& tol = {});

// Hadamard equivalence moves, applied as
// H' = P_row * diag(row_phases) * H * diag(col_phases) * P_col.
struct ScrambleMoves {
  std::vector<Complex> row_phases;
  std::vector<Complex> col_phases;
  std::vector<int> row_order;  // new row i is old row row_order[i]
  std::vector<int> col_order;  // new column j is old column col_order[j]

  static ScrambleMoves identity(int rows, int cols);
  static ScrambleMoves random(int rows, int cols, std::uint64_t seed);
};

PartialHadamard scramble(const PartialHadamard& h, const ScrambleMoves& moves);
PartialHadamard scramble(const PartialHadamard& h, std::uint64_t seed);

// Evidence that every unimodular vector of prop2_matrix(n)'s complement has
// coefficients of equal modulus sqrt((4n+1)/(2n+1)) with k_1 = +-i k_2, which
// with 2n+1 odd blocks a full completion.
struct ParityCertificate {
  int n = 0;
  double forced_modulus = 0.0;
  int parity_rows = 0;
  bool coupling_verified = false;
  int solutions_checked = 0;
  double worst_modulus_deviation = 0.0;
  double worst_coupling_deviation = 0.0;
  std::string warning;

  bool parity_odd() const { return parity_rows % 2 == 1; }
  bool valid() const { return coupling_verified && parity_odd(); }
};

// `solutions` are coefficient vectors (k_1..k_{2n+1}) over prop2_beta_basis(n).
ParityCertificate parity_certificate(int n,
                                     const std::vector<ComplexVector>& solutions,
                                     double tol = 1e-6);

// Every unimodular vector in span(nu_1, nu_2, nu_3) has the form
// k (nu_1 + s2 i nu_2 + s3 i nu_3), s2, s3 in {+1, -1}. The certificate
// records |<alpha_3, .>| for the four sign patterns; all nonzero means no
// unimodular vector is orthogonal to example5_b's rows.
struct SignPatternCertificate {
  std::vector<double> overlaps;  // one per (s2, s3) in ++, +-, -+, --
  double min_overlap = 0.0;
  bool valid(double eps = 1e-9) const { return min_overlap > eps; }
};

SignPatternCertificate example5_sign_certificate();

// True iff a and b have the same shape and agree entrywise within eps.
bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                 double eps = 1e-12);

}  // namespace umebh

#endif  // UMEBH_HADAMARD_H_
