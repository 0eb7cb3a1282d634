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

#ifndef UMEBH_TORUS_FEASIBILITY_H_
#define UMEBH_TORUS_FEASIBILITY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "umebh/hadamard.h"
#include "umebh/numerics.h"

namespace umebh {

// Orthonormal basis of a subspace of C^d.
class SubspaceSpec {
 public:
  // Throws PreconditionError unless the basis is orthonormal within eps_orth
  // and 1 <= k <= d.
  static SubspaceSpec from_basis(std::vector<ComplexVector> basis,
                                 double eps_orth = 1e-9);
  // Complement of the row span of `rows`. Throws RankError if the rows span
  // everything.
  static SubspaceSpec complement_of(const ComplexMatrix& rows,
                                    double eps_orth = 1e-9);

  int ambient_dim() const { return static_cast<int>(basis_matrix_.rows()); }
  int dim() const { return static_cast<int>(basis_matrix_.cols()); }
  const std::vector<ComplexVector>& basis() const { return basis_; }
  // d x k, columns are the basis vectors.
  const ComplexMatrix& basis_matrix() const { return basis_matrix_; }

  ComplexVector coefficients(const ComplexVector& v) const;
  ComplexVector project(const ComplexVector& v) const;
  // Euclidean distance from v to the subspace.
  double distance(const ComplexVector& v) const;

 private:
  explicit SubspaceSpec(std::vector<ComplexVector> basis);
  std::vector<ComplexVector> basis_;
  ComplexMatrix basis_matrix_;
};

struct SolverConfig {
  int starts = 1000;
  int max_iter = 2000;
  double tol_success = 1e-7;
  double tol_evidence = 1e-3;
  std::uint64_t seed = 0;
  int grid_order = 24;

  // Throws DomainError on inconsistent settings.
  void validate() const;
};

enum class FeasibilityStatus { kFound, kNotFoundEvidence };

const char* to_string(FeasibilityStatus s);

// Grid enumeration summary. `excluded` is a proof of non-existence (up to
// rounding): every unimodular vector has a grid neighbour within
// `resolution_bound`, and no grid point came that close to the span.
struct GridEvidence {
  int order = 0;
  std::uint64_t candidates = 0;
  double resolution_bound = 0.0;
  bool excluded = false;
};

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kNotFoundEvidence;
  std::optional<ComplexVector> vector;
  std::optional<ComplexVector> coefficients;
  // Solver: max(inf-norm distance to span, max ||v_j| - 1|).
  // Grid: Euclidean distance of the best grid vector to the span.
  double residual = 0.0;
  int starts_used = 0;
  bool oracle_checked = false;
  std::optional<GridEvidence> grid;

  bool found() const { return status == FeasibilityStatus::kFound; }
};

// Multi-start alternating projection between the subspace and the torus,
// with a Gauss-Newton polish on the phases once a trajectory gets close.
// Starts run in index order and the first Found start wins; NotFoundEvidence
// reports the minimum residual over all starts and is heuristic only.
FeasibilityOutcome find_unimodular_in_span(const SubspaceSpec& s,
                                           const SolverConfig& cfg);

// Euclidean span distances of the unimodular iterates of one start.
// Non-increasing by construction of alternating projections.
std::vector<double> trajectory_span_distances(const SubspaceSpec& s,
                                              const SolverConfig& cfg,
                                              int start_index);

inline constexpr int kGridMaxDim = 8;
inline constexpr std::uint64_t kGridMaxCandidates = 100'000'000;

// L^(d-1), saturating.
std::uint64_t grid_candidate_count(int d, int order);
bool grid_within_budget(int d, int order);

// Enumerates all vectors with first entry 1 and remaining entries L-th roots
// of unity. Found iff some grid vector lies in the span within tol_success.
// Throws BudgetError past kGridMaxDim or kGridMaxCandidates.
FeasibilityOutcome grid_oracle(const SubspaceSpec& s, int order,
                               double tol_success = 1e-7);

// Necessary conditions on the coefficients k of any unimodular vector
// sum_i k_i b_i. Indices are 0-based.
struct ForcedModulus {
  int index = 0;
  double modulus = 0.0;  // |k_index| must equal this
  int coordinate = 0;
};

// Two coordinates where only basis vectors `first` and `second` are nonzero,
// with entries (a, b) and (-a u, b u) for a unimodular u. Then
// Re(a k_first conj(b k_second)) = 0 and
// |a|^2 |k_first|^2 + |b|^2 |k_second|^2 = 1.
struct ForcedOrthogonalCoupling {
  int first = 0;
  int second = 0;
  Complex a;
  Complex b;
  int coordinate_plus = 0;
  int coordinate_minus = 0;
};

using ForcedConstraint = std::variant<ForcedModulus, ForcedOrthogonalCoupling>;

std::vector<ForcedConstraint> magnitude_constraint_reduce(
    const SubspaceSpec& s, double zero_eps = 1e-12);

// How far a coefficient vector is from satisfying the constraint.
double constraint_violation(const ForcedConstraint& c,
                            const ComplexVector& coefficients);

std::string describe(const ForcedConstraint& c);

struct MatrixFeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kNotFoundEvidence;
  std::optional<ComplexMatrix> unitary;
  std::optional<ComplexVector> coefficients;
  // max entry of |U - P(U)| for the best unitary iterate.
  double residual = 0.0;
  int starts_used = 0;
  int restarts = 0;

  bool found() const { return status == FeasibilityStatus::kFound; }
};

// Alternating projection between span(matrix_basis) and the unitary group.
// The basis must satisfy trace_inner(M_i, M_j) = d delta_ij.
MatrixFeasibilityOutcome nearest_unitary_in_span(
    const std::vector<ComplexMatrix>& matrix_basis, const SolverConfig& cfg);

struct ExtensionResult {
  PartialHadamard matrix;
  int rows_added = 0;
  // One outcome per search, the last one is the stall (unless complete).
  std::vector<FeasibilityOutcome> steps;
};

// Appends solver witnesses (first entry real positive) until the solver
// stalls or the matrix is complete. Appended rows are accepted within
// d * tol_success, since a witness is only certified to that accuracy.
ExtensionResult greedy_unimodular_extension(const PartialHadamard& h,
                                            const SolverConfig& cfg);

// r^2 - r + 1/2 = 0 and r^2 - 2r - 1 = 0, the two quadratics the d = 7
// example reduces to. Monic quadratics r^2 + b r + c.
struct QuadraticPair {
  double b1 = -1.0, c1 = 0.5;
  double b2 = -2.0, c2 = -1.0;
};

struct QuadraticCertificate {
  QuadraticPair pair;
  double discriminant1 = 0.0;
  double discriminant2 = 0.0;
  double resultant = 0.0;
  bool first_has_real_root = true;
  bool common_root = true;

  bool inconsistent() const { return !first_has_real_root || !common_root; }
};

QuadraticCertificate quadratic_certificate(const QuadraticPair& q = {});

}  // namespace umebh

#endif  // UMEBH_TORUS_FEASIBILITY_H_
