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

#ifndef UMEBH_UMEB_H_
#define UMEBH_UMEB_H_

#include <optional>
#include <string>
#include <vector>

#include "umebh/hadamard.h"
#include "umebh/numerics.h"
#include "umebh/torus_feasibility.h"

namespace umebh {

struct MemberLabel {
  enum class Kind { kWeyl, kDiagonalRow, kExternal };
  Kind kind = Kind::kExternal;
  int m = 0;    // kWeyl
  int n = 0;    // kWeyl
  int row = 0;  // kDiagonalRow

  static MemberLabel weyl(int m, int n) { return {Kind::kWeyl, m, n, 0}; }
  static MemberLabel diag_row(int row) { return {Kind::kDiagonalRow, 0, 0, row}; }
  static MemberLabel external() { return {}; }
  std::string to_string() const;
};

// d x d unitaries U_a standing for the states (I (x) U_a) |Phi_d>.
struct UnitaryBasisSet {
  int d = 0;
  std::vector<ComplexMatrix> members;
  std::vector<MemberLabel> labels;

  int size() const { return static_cast<int>(members.size()); }
};

// diag(alpha_s) for every row alpha_s of h.
std::vector<ComplexMatrix> diag_set(const PartialHadamard& h);

// s0_family(d) followed by diag_set(h). Throws DomainError if h has d rows.
UnitaryBasisSet special_umeb(const PartialHadamard& h);

struct MebReport {
  int member_count = 0;
  int bound = 0;  // d^2
  bool count_ok = false;
  double worst_unitarity_deviation = 0.0;
  bool unitary_ok = false;
  // max |Tr(U_a^dagger U_b) - d delta_ab|
  double worst_gram_deviation = 0.0;
  bool gram_ok = false;

  bool passed() const { return count_ok && unitary_ok && gram_ok; }
};

MebReport verify_meb_conditions(const UnitaryBasisSet& s,
                                const Tolerances& tol = {});

enum class UnextendibilityVerdict { kUmebCertified, kExtendible };

enum class EvidenceTier { kAlgebraic, kGridExhaustive, kHeuristic, kNone };

const char* to_string(UnextendibilityVerdict v);
const char* to_string(EvidenceTier t);

struct UnextendibilityReport {
  UnextendibilityVerdict verdict = UnextendibilityVerdict::kUmebCertified;
  EvidenceTier tier = EvidenceTier::kNone;
  FeasibilityOutcome solver;
  std::optional<FeasibilityOutcome> oracle;
  std::string oracle_note;
  std::vector<ForcedConstraint> constraints;
  std::optional<ComplexVector> witness_row;  // unimodular, first entry > 0
  // Which evidence classes fired, human readable.
  std::vector<std::string> evidence;
  std::optional<SignPatternCertificate> sign_certificate;
  std::optional<QuadraticCertificate> quadratic_certificate;
};

// Solver, grid oracle (when within budget) and forced-constraint scan on the
// complement of h's rows. Extendible as soon as any search finds a witness;
// otherwise certified, with the strongest tier that applies.
UnextendibilityReport verify_unextendible_special(const PartialHadamard& h,
                                                  const SolverConfig& cfg);

// Amplitude at index i*d + j is u(j, i) / sqrt(d). Throws PreconditionError
// for non-unitary input.
ComplexVector state_vector(const ComplexMatrix& u, const Tolerances& tol = {});

enum class ExistenceStatus { kExists, kNotExists, kUnknown };

enum class ExistenceRoute {
  kD2Impossible,
  kKnownSmall,
  kDivisibleBy4,
  kDivisor4nPlus1,
  kDivisibleBy3,
  kDimension7Example,
  kDivisibleBy7,
  kNone,
};

const char* to_string(ExistenceStatus s);

struct ExistenceVerdict {
  int d = 0;
  ExistenceStatus status = ExistenceStatus::kUnknown;
  ExistenceRoute route = ExistenceRoute::kNone;
  int divisor = 0;  // for kDivisor4nPlus1
  std::string caveat;

  std::string route_name() const;
};

// Throws DomainError for d < 2.
ExistenceVerdict classify_dimension(int d);

enum class LiftFormula { kLemmaStatement, kDiscussionParagraph };

const char* to_string(LiftFormula f);

struct LiftCount {
  long long members = 0;
  long long deficiency = 0;
  LiftFormula formula = LiftFormula::kLemmaStatement;
};

// Member count of the lifted set in dimension q*d.
// kLemmaStatement: (qd)^2 - (d^2 - N). kDiscussionParagraph: (qd)^2 - q(d^2 - N).
LiftCount lift_count(int d, long long n_members, int q, LiftFormula formula);

// special_umeb(example5_b()), 23 members.
UnitaryBasisSet umeb5();
// special_umeb(example7_a()), 45 members.
UnitaryBasisSet umeb7();

// Basis of the orthogonal complement of span(s.members) in M_d, normalised so
// trace_inner(M_i, M_j) = d delta_ij.
std::vector<ComplexMatrix> matrix_complement(const UnitaryBasisSet& s);

}  // namespace umebh

#endif  // UMEBH_UMEB_H_
