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
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "test_util.h"
#include "umebh/errors.h"

namespace umebh {
namespace {

using testing::max_abs;

const Complex kI(0.0, 1.0);

Complex expi(double turns) {
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

// Gram deviation computed directly, without check_partial.
double gram_deviation(const ComplexMatrix& h) {
  const ComplexMatrix g = h * h.adjoint();
  return max_abs(g - static_cast<double>(h.cols()) *
                         ComplexMatrix::Identity(h.rows(), h.rows()));
}

TEST(CheckPartialTest, FourierAccepted) {
  for (int d = 1; d <= 9; ++d) {
    const auto c = check_partial(fourier(d).matrix());
    EXPECT_TRUE(c.accepted()) << d << " " << c.describe();
  }
}

TEST(CheckPartialTest, PerturbedEntryLocated) {
  ComplexMatrix h = fourier(4).matrix();
  h(2, 3) *= 1.001;
  const auto c = check_partial(h);
  EXPECT_FALSE(c.modulus_ok);
  EXPECT_EQ(c.worst_modulus_row, 2);
  EXPECT_EQ(c.worst_modulus_col, 3);
  EXPECT_NEAR(c.worst_modulus_deviation, 1e-3, 1e-12);
}

TEST(CheckPartialTest, NonOrthogonalRowsRejected) {
  ComplexMatrix h(2, 3);
  h << 1, 1, 1, 1, 1, -1;
  const auto c = check_partial(h);
  EXPECT_TRUE(c.modulus_ok);
  EXPECT_FALSE(c.gram_ok);
  EXPECT_FALSE(verify_partial(h).value.has_value());
  EXPECT_THROW(PartialHadamard::from_matrix(h), VerificationError);
}

TEST(CheckPartialTest, TooManyRowsIsShapeError) {
  EXPECT_THROW(check_partial(ComplexMatrix::Ones(3, 2)), ShapeError);
}

TEST(CheckPartialTest, NaNIsDomainError) {
  ComplexMatrix h = fourier(3).matrix();
  h(0, 0) = std::nan("");
  EXPECT_THROW(check_partial(h), DomainError);
}

TEST(Prop2Test, N1MatchesPrintedMatrix) {
  const Complex w = expi(1.0 / 3.0);
  ComplexMatrix a(2, 5);
  a << 1, 1, 1, 1, 1, 1, -1, 1, w, w * w;
  EXPECT_LT(max_abs(prop2_matrix(1).matrix() - a), 1e-15);
}

TEST(Prop2Test, IsPartialHadamardForSeveralN) {
  for (int n = 1; n <= 6; ++n) {
    const auto h = prop2_matrix(n);
    EXPECT_EQ(h.rows(), 2 * n);
    EXPECT_EQ(h.dim(), 4 * n + 1);
    EXPECT_LT(gram_deviation(h.matrix()), 1e-10);
  }
}

TEST(Prop2Test, RejectsNonPositiveN) {
  EXPECT_THROW(prop2_matrix(0), DomainError);
}

TEST(Prop2BetaTest, ClosedFormVectors) {
  for (int n = 1; n <= 4; ++n) {
    const int d = 4 * n + 1;
    const auto beta = prop2_beta_basis(n);
    ASSERT_EQ(static_cast<int>(beta.size()), 2 * n + 1);
    ComplexVector b1 = ComplexVector::Zero(d), b2 = ComplexVector::Zero(d);
    b1(0) = 1.0 / std::sqrt(2.0);
    b1(2 * n) = -1.0 / std::sqrt(2.0);
    const double s = std::sqrt(8.0 * n + 2.0);
    b2(0) = 1.0 / s;
    b2(2 * n) = 1.0 / s;
    for (int j = 1; j <= 2 * n; ++j) {
      b2(2 * n + j) =
          2.0 * expi(static_cast<double>(2 * n + 1 - j) / (2 * n + 1)) / s;
    }
    EXPECT_LT(max_abs(beta[0] - b1), 1e-14) << n;
    EXPECT_LT(max_abs(beta[1] - b2), 1e-14) << n;
    const double lead = std::sqrt((2.0 * n + 1.0) / (4.0 * n + 1.0));
    for (int j = 1; j <= 2 * n - 1; ++j) {
      const ComplexVector& b = beta[j + 1];
      for (int c = 0; c <= 2 * n; ++c) {
        EXPECT_NEAR(std::abs(b(c)), c == j ? lead : 0.0, 1e-12)
            << n << " " << j << " " << c;
      }
    }
  }
}

TEST(Prop2BetaTest, SpansComplement) {
  for (int n = 1; n <= 4; ++n) {
    const auto beta = prop2_beta_basis(n);
    EXPECT_LT(orthonormality_deviation(beta), 1e-12);
    ComplexMatrix proj = ComplexMatrix::Zero(4 * n + 1, 4 * n + 1);
    for (const auto& b : beta) proj += b * b.adjoint();
    EXPECT_LT(max_abs(proj - testing::svd_complement_projector(
                                 prop2_matrix(n).matrix())),
              1e-10);
  }
}

std::vector<ComplexVector> printed_nu() {
  const Complex w = expi(1.0 / 3.0);
  const double r2 = std::sqrt(2.0), r10 = std::sqrt(10.0),
               r15 = std::sqrt(15.0);
  ComplexVector n1(5), n2(5), n3(5);
  n1 << 1 / r2, 0, -1 / r2, 0, 0;
  n2 << 1 / r10, 0, 1 / r10, 2.0 * w * w / r10, 2.0 * w / r10;
  n3 << 0, std::sqrt(0.6), 0, (w - 1.0) / r15, (w * w - 1.0) / r15;
  return {n1, n2, n3};
}

TEST(Example5Test, NuBasisMatchesPrintedValues) {
  const auto nu = example5_nu_basis();
  const auto expected = printed_nu();
  ASSERT_EQ(nu.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_LT(max_abs(nu[i] - expected[i]), 1e-14);
}

TEST(Example5Test, NuBasisIsOrthonormalComplement) {
  const auto nu = example5_nu_basis();
  EXPECT_LT(orthonormality_deviation(nu), 1e-12);
  ComplexMatrix proj = ComplexMatrix::Zero(5, 5);
  for (const auto& b : nu) proj += b * b.adjoint();
  EXPECT_LT(max_abs(proj - testing::svd_complement_projector(
                               prop2_matrix(1).matrix())),
            1e-10);
}

TEST(Example5Test, ThirdRowFromPrintedCombination) {
  const auto nu = printed_nu();
  const double k = std::sqrt(5.0 / 3.0);
  const ComplexVector alpha3 = k * (nu[0] + kI * nu[1] + kI * nu[2]);
  const auto b = example5_b();
  ASSERT_EQ(b.rows(), 3);
  EXPECT_LT(max_abs(b.row(2) - alpha3), 1e-14);
  EXPECT_LT(gram_deviation(b.matrix()), 1e-12);
  EXPECT_LT(unimodularity_deviation(alpha3), 1e-14);
}

TEST(SignCertificateTest, OverlapsFollowSignPatterns) {
  const auto cert = example5_sign_certificate();
  ASSERT_EQ(cert.overlaps.size(), 4u);
  // <alpha_3, k(nu_1 + s2 i nu_2 + s3 i nu_3)> = (5/3)(1 + s2 + s3).
  const double expected[4] = {5.0, 5.0 / 3.0, 5.0 / 3.0, 5.0 / 3.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(cert.overlaps[i], expected[i], 1e-12);
  EXPECT_NEAR(cert.min_overlap, 5.0 / 3.0, 1e-12);
  EXPECT_TRUE(cert.valid());
}

TEST(Example7Test, MatchesPrintedMatrix) {
  const Complex w = expi(1.0 / 3.0);
  ComplexMatrix a(3, 7);
  a << 1, 1, 1, 1, 1, 1, 1,
       1, w, w * w, 1, kI, -1, -kI,
       1, w * w, w, 1, -1, 1, -1;
  EXPECT_LT(max_abs(example7_a().matrix() - a), 1e-15);
  EXPECT_LT(gram_deviation(a), 1e-12);
}

TEST(Example7Test, PrintedComplementVectors) {
  const Complex w = expi(1.0 / 3.0);
  const double r14 = std::sqrt(14.0);
  ComplexVector b1(7), b2(7), b3(7), b4(7);
  b1 << 1 / std::sqrt(2.0), 0, 0, -1 / std::sqrt(2.0), 0, 0, 0;
  b2 << 1 / r14, 0, 0, 1 / r14, -2.0 * kI / r14, -2 / r14, 2.0 * kI / r14;
  b3 << 0, 2.0 * w / r14, 2.0 * w * w / r14, 0, -kI / r14, 2 / r14, kI / r14;
  b4 << 0, 2 / r14, -2.0 * w * w / r14, 0, (w - 1.0) / r14, 0, (w - 1.0) / r14;
  const auto printed = example7_printed_beta();
  ASSERT_EQ(printed.size(), 4u);
  const ComplexVector expected[4] = {b1, b2, b3, b4};
  for (int i = 0; i < 4; ++i) EXPECT_LT(max_abs(printed[i] - expected[i]), 1e-14);

  // Direct overlap with the rows: the first three vanish, the fourth does not.
  const ComplexMatrix a = example7_a().matrix();
  for (int i = 0; i < 4; ++i) {
    const double overlap = (a.conjugate() * expected[i]).cwiseAbs().maxCoeff();
    if (i < 3) {
      EXPECT_LT(overlap, 1e-12) << i;
    } else {
      EXPECT_GT(overlap, 0.5);
    }
  }
  const auto cross = crosscheck_printed_basis(example7_a(), printed);
  EXPECT_EQ(cross.flagged, std::vector<int>{3});
  EXPECT_FALSE(cross.consistent());
}

TEST(CompleteLastRowTest, FourierRecoversMissingRow) {
  for (int d = 2; d <= 10; ++d) {
    const ComplexMatrix f = fourier(d).matrix();
    const auto partial = PartialHadamard::from_matrix(f.topRows(d - 1));
    const auto full = complete_last_row(partial);
    ASSERT_TRUE(full.complete());
    // Fourier's last row starts with 1, already phase-fixed.
    EXPECT_LT(max_abs(full.row(d - 1) - f.row(d - 1).transpose()), 1e-12) << d;
  }
}

TEST(CompleteLastRowTest, FirstEntryRealPositive) {
  const auto h = scramble(fourier(7), 17);
  const ComplexMatrix top = h.matrix().topRows(6);
  const auto full = complete_last_row(PartialHadamard::from_matrix(top));
  const Complex first = full.row(6)(0);
  EXPECT_NEAR(first.imag(), 0.0, 1e-12);
  EXPECT_NEAR(first.real(), 1.0, 1e-12);
  EXPECT_LT(gram_deviation(full.matrix()), 1e-10);
}

TEST(CompleteLastRowTest, WrongRowCountIsRankError) {
  EXPECT_THROW(complete_last_row(prop2_matrix(1)), RankError);
  EXPECT_THROW(complete_last_row(fourier(4)), RankError);
}

TEST(ScrambleTest, IdentityIsNoOp) {
  const auto h = prop2_matrix(2);
  const auto s = scramble(h, ScrambleMoves::identity(h.rows(), h.dim()));
  EXPECT_TRUE(same_matrix(s.matrix(), h.matrix()));
}

TEST(ScrambleTest, RandomMovesArePermutationsAndPhases) {
  const auto m = ScrambleMoves::random(4, 9, 123);
  std::vector<int> rows = m.row_order, cols = m.col_order;
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  std::vector<int> r4(4), c9(9);
  std::iota(r4.begin(), r4.end(), 0);
  std::iota(c9.begin(), c9.end(), 0);
  EXPECT_EQ(rows, r4);
  EXPECT_EQ(cols, c9);
  for (const auto& p : m.row_phases) EXPECT_NEAR(std::abs(p), 1.0, 1e-15);
  for (const auto& p : m.col_phases) EXPECT_NEAR(std::abs(p), 1.0, 1e-15);
}

TEST(ScramblePropertyTest, PreservesPartialHadamardInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto h = scramble(prop2_matrix(1 + seed % 3), seed);
    EXPECT_TRUE(check_partial(h.matrix()).accepted()) << seed;
  }
}

TEST(ScramblePropertyTest, DeterministicInSeed) {
  EXPECT_TRUE(same_matrix(scramble(fourier(6), 5).matrix(),
                          scramble(fourier(6), 5).matrix(), 0.0));
  EXPECT_FALSE(same_matrix(scramble(fourier(6), 5).matrix(),
                           scramble(fourier(6), 6).matrix()));
}

TEST(ParityCertificateTest, EmptyIsVacuousWithWarning) {
  const auto c = parity_certificate(2, {});
  EXPECT_FALSE(c.warning.empty());
  EXPECT_FALSE(c.valid());
  EXPECT_EQ(c.parity_rows, 5);
  EXPECT_TRUE(c.parity_odd());
  EXPECT_NEAR(c.forced_modulus, std::sqrt(9.0 / 5.0), 1e-15);
}

TEST(ParityCertificateTest, AcceptsForcedShape) {
  const double k = std::sqrt(5.0 / 3.0);
  ComplexVector good(3);
  good << k * kI, k, -k;
  const auto c = parity_certificate(1, {good});
  EXPECT_TRUE(c.valid());
  EXPECT_EQ(c.solutions_checked, 1);
  ComplexVector bad = good;
  bad(0) = k;  // k_1 = k_2, not +-i k_2
  EXPECT_FALSE(parity_certificate(1, {bad}).valid());
}

TEST(ParityCertificateTest, WrongLengthThrows) {
  EXPECT_THROW(parity_certificate(1, {ComplexVector::Ones(4)}), DimensionError);
}

TEST(SameMatrixTest, ShapeAndTolerance) {
  EXPECT_FALSE(same_matrix(ComplexMatrix::Ones(2, 2), ComplexMatrix::Ones(2, 3)));
  EXPECT_TRUE(same_matrix(ComplexMatrix::Ones(2, 2),
                          ComplexMatrix::Ones(2, 2) * (1 + 1e-13)));
}

}  // namespace
}  // namespace umebh
