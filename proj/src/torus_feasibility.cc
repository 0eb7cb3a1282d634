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

#include "umebh/torus_feasibility.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "umebh/errors.h"

namespace umebh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroEntry = 1e-14;
// Trajectories below this residual get a Gauss-Newton polish attempt.
constexpr double kPolishThreshold = 1e-2;
constexpr int kPolishEvery = 20;
constexpr int kPolishIterations = 40;
constexpr int kStallWindow = 100;
constexpr double kStallImprovement = 0.99;
constexpr int kMaxRestartsPerStart = 5;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 start_rng(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  return std::mt19937_64(seq);
}

ComplexVector random_phases(Eigen::Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  ComplexVector v(d);
  for (Eigen::Index j = 0; j < d; ++j) v(j) = std::polar(1.0, phase(rng));
  return v;
}

// Entrywise projection onto the torus; near-zero entries get a fresh phase.
ComplexVector to_torus(const ComplexVector& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  ComplexVector v(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double a = std::abs(p(j));
    v(j) = a < kZeroEntry ? std::polar(1.0, phase(rng)) : p(j) / a;
  }
  return v;
}

ComplexVector gauge_fixed(const ComplexVector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v(j));
    if (a > kZeroEntry) return v * (std::conj(v(j)) / a);
  }
  return v;
}

struct Residual {
  double value = kInf;
  ComplexVector projected;
};

// r(v) = max(inf-norm |v - Pv|, max ||(Pv)_j| - 1|).
Residual residual_of(const SubspaceSpec& s, const ComplexVector& v) {
  Residual r;
  r.projected = s.project(v);
  const double span = (v - r.projected).cwiseAbs().maxCoeff();
  r.value = std::max(span, unimodularity_deviation(r.projected));
  return r;
}

// Gauss-Newton on the phases theta of u = exp(i theta), minimising
// |(I - P) u|_2. Returns the polished unimodular vector.
ComplexVector polish_phases(const SubspaceSpec& s, const ComplexVector& start) {
  const Eigen::Index d = start.size();
  const ComplexMatrix& b = s.basis_matrix();
  const ComplexMatrix q =
      ComplexMatrix::Identity(d, d) - b * b.adjoint();
  Eigen::VectorXd theta(d);
  for (Eigen::Index j = 0; j < d; ++j) theta(j) = std::arg(start(j));

  auto unimodular = [&](const Eigen::VectorXd& t) {
    ComplexVector u(d);
    for (Eigen::Index j = 0; j < d; ++j) u(j) = std::polar(1.0, t(j));
    return u;
  };

  ComplexVector u = unimodular(theta);
  double fnorm = (q * u).norm();
  for (int it = 0; it < kPolishIterations && fnorm > 1e-15; ++it) {
    const ComplexVector f = q * u;
    ComplexMatrix jac = q;
    for (Eigen::Index j = 0; j < d; ++j) jac.col(j) *= Complex{0.0, 1.0} * u(j);
    Eigen::MatrixXd jr(2 * d, d);
    jr.topRows(d) = jac.real();
    jr.bottomRows(d) = jac.imag();
    Eigen::VectorXd fr(2 * d);
    fr.head(d) = f.real();
    fr.tail(d) = f.imag();
    // The global phase is a null direction; pin theta(0) to remove it.
    if (d == 1) break;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
        jr.rightCols(d - 1));
    cod.setThreshold(1e-10);
    Eigen::VectorXd step = Eigen::VectorXd::Zero(d);
    step.tail(d - 1) = cod.solve(fr);
    // Backtrack when the full step overshoots.
    Eigen::VectorXd next;
    ComplexVector u_next;
    double next_norm = kInf;
    for (double scale = 1.0; scale > 1e-3; scale *= 0.5) {
      next = theta - scale * step;
      u_next = unimodular(next);
      next_norm = (q * u_next).norm();
      if (next_norm < fnorm) break;
    }
    if (!(next_norm < fnorm)) break;
    theta = next;
    u = u_next;
    fnorm = next_norm;
  }
  return u;
}

// Repeats the polish on a converged witness until the residual stops
// improving, so appended rows meet the tight orthogonality tolerance.
ComplexVector refine_witness(const SubspaceSpec& s, const ComplexVector& v) {
  ComplexVector best = v;
  double best_r = residual_of(s, v).value;
  for (int round = 0; round < 5 && best_r > 1e-14; ++round) {
    const ComplexVector u = polish_phases(s, best);
    const double r = residual_of(s, u).value;
    if (!(r < 0.5 * best_r)) break;
    best = u;
    best_r = r;
  }
  return best;
}

struct StartResult {
  bool found = false;
  double best = kInf;
  ComplexVector witness;
};

StartResult run_start(const SubspaceSpec& s, const SolverConfig& cfg,
                      int start) {
  auto rng = start_rng(cfg.seed, start);
  ComplexVector v = random_phases(s.ambient_dim(), rng);
  StartResult out;
  double window_best = kInf;
  int last_polish = -kPolishEvery;

  auto try_polish = [&](const ComplexVector& from) {
    const ComplexVector u = polish_phases(s, from);
    const Residual r = residual_of(s, u);
    out.best = std::min(out.best, r.value);
    if (r.value <= cfg.tol_success) {
      out.found = true;
      out.witness = gauge_fixed(refine_witness(s, u));
    }
  };

  for (int it = 0; it < cfg.max_iter; ++it) {
    const Residual r = residual_of(s, v);
    out.best = std::min(out.best, r.value);
    if (r.value <= cfg.tol_success || (r.value < kPolishThreshold &&
                                       it - last_polish >= kPolishEvery)) {
      last_polish = it;
      try_polish(v);
      if (out.found) return out;
      if (r.value <= cfg.tol_success) {
        // Polish could not improve on an already-converged iterate.
        out.found = true;
        out.witness = gauge_fixed(refine_witness(s, v));
        return out;
      }
    }
    if ((it + 1) % kStallWindow == 0) {
      if (out.best > kStallImprovement * window_best) break;
      window_best = out.best;
    }
    v = to_torus(r.projected, rng);
  }
  return out;
}

}  // namespace

// --- SubspaceSpec -----------------------------------------------------------

SubspaceSpec::SubspaceSpec(std::vector<ComplexVector> basis)
    : basis_(std::move(basis)) {
  basis_matrix_ = stack_rows(basis_).transpose();
}

SubspaceSpec SubspaceSpec::from_basis(std::vector<ComplexVector> basis,
                                      double eps_orth) {
  if (basis.empty()) {
    throw PreconditionError("SubspaceSpec: basis must be non-empty");
  }
  const auto d = basis.front().size();
  for (const auto& b : basis) {
    if (b.size() != d) throw DimensionError("SubspaceSpec: ragged basis");
    require_finite(b, "SubspaceSpec");
  }
  if (static_cast<Eigen::Index>(basis.size()) > d) {
    throw PreconditionError("SubspaceSpec: more basis vectors than dimension");
  }
  if (orthonormality_deviation(basis) > eps_orth) {
    throw PreconditionError("SubspaceSpec: basis is not orthonormal");
  }
  return SubspaceSpec(std::move(basis));
}

SubspaceSpec SubspaceSpec::complement_of(const ComplexMatrix& rows,
                                         double eps_orth) {
  auto comp = complement_basis(rows, eps_orth);
  if (comp.empty()) {
    throw RankError("SubspaceSpec: rows span the whole space");
  }
  return SubspaceSpec(std::move(comp));
}

ComplexVector SubspaceSpec::coefficients(const ComplexVector& v) const {
  if (v.size() != basis_matrix_.rows()) {
    throw DimensionError("SubspaceSpec: length mismatch");
  }
  return basis_matrix_.adjoint() * v;
}

ComplexVector SubspaceSpec::project(const ComplexVector& v) const {
  return basis_matrix_ * coefficients(v);
}

double SubspaceSpec::distance(const ComplexVector& v) const {
  return (v - project(v)).norm();
}

// --- configuration ----------------------------------------------------------

void SolverConfig::validate() const {
  if (starts < 1) throw DomainError("SolverConfig: starts must be >= 1");
  if (max_iter < 1) throw DomainError("SolverConfig: max_iter must be >= 1");
  if (!(tol_success > 0.0) || !(tol_success < tol_evidence)) {
    throw DomainError("SolverConfig: need 0 < tol_success < tol_evidence");
  }
  if (grid_order < 2) throw DomainError("SolverConfig: grid_order must be >= 2");
}

const char* to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kFound:
      return "Found";
    case FeasibilityStatus::kNotFoundEvidence:
      return "NotFoundEvidence";
  }
  return "?";
}

// --- alternating projection -------------------------------------------------

FeasibilityOutcome find_unimodular_in_span(const SubspaceSpec& s,
                                           const SolverConfig& cfg) {
  cfg.validate();
  FeasibilityOutcome out;
  out.residual = kInf;
  for (int start = 0; start < cfg.starts; ++start) {
    const StartResult r = run_start(s, cfg, start);
    out.starts_used = start + 1;
    out.residual = std::min(out.residual, r.best);
    if (r.found) {
      out.status = FeasibilityStatus::kFound;
      out.vector = r.witness;
      out.coefficients = s.coefficients(r.witness);
      out.residual = residual_of(s, r.witness).value;
      return out;
    }
  }
  return out;
}

std::vector<double> trajectory_span_distances(const SubspaceSpec& s,
                                              const SolverConfig& cfg,
                                              int start_index) {
  auto rng = start_rng(cfg.seed, start_index);
  ComplexVector v = random_phases(s.ambient_dim(), rng);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cfg.max_iter));
  for (int it = 0; it < cfg.max_iter; ++it) {
    const ComplexVector p = s.project(v);
    out.push_back((v - p).norm());
    v = to_torus(p, rng);
  }
  return out;
}

// --- grid oracle ------------------------------------------------------------

std::uint64_t grid_candidate_count(int d, int order) {
  std::uint64_t count = 1;
  for (int j = 1; j < d; ++j) {
    if (count > std::numeric_limits<std::uint64_t>::max() /
                    static_cast<std::uint64_t>(order)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= static_cast<std::uint64_t>(order);
  }
  return count;
}

bool grid_within_budget(int d, int order) {
  return d <= kGridMaxDim && grid_candidate_count(d, order) <= kGridMaxCandidates;
}

FeasibilityOutcome grid_oracle(const SubspaceSpec& s, int order,
                               double tol_success) {
  if (order < 2) throw DomainError("grid_oracle: order must be >= 2");
  const int d = s.ambient_dim();
  const std::uint64_t count = grid_candidate_count(d, order);
  if (!grid_within_budget(d, order)) {
    std::ostringstream os;
    os << "grid_oracle: " << order << "^" << (d - 1) << " = " << count
       << " candidates at d = " << d << " exceeds the budget (d <= "
       << kGridMaxDim << ", <= " << kGridMaxCandidates << " candidates)";
    throw BudgetError(os.str(), count);
  }
  const int k = s.dim();
  const ComplexMatrix& b = s.basis_matrix();

  // contrib[j][t] = conj(b.row(j))^T * omega_L^t, the coefficient vector
  // contribution of entry j set to the t-th root.
  std::vector<std::vector<ComplexVector>> contrib(
      static_cast<std::size_t>(d),
      std::vector<ComplexVector>(static_cast<std::size_t>(order)));
  for (int j = 0; j < d; ++j) {
    const ComplexVector row = b.row(j).adjoint();
    for (int t = 0; t < order; ++t) {
      contrib[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
          row * root_of_unity(t, order);
    }
  }

  // Odometer over entries 1..d-1 with prefix sums of the coefficients.
  std::vector<int> digit(static_cast<std::size_t>(d), 0);
  std::vector<ComplexVector> prefix(static_cast<std::size_t>(d),
                                    ComplexVector::Zero(k));
  prefix[0] = contrib[0][0];
  for (int j = 1; j < d; ++j) {
    prefix[static_cast<std::size_t>(j)] =
        prefix[static_cast<std::size_t>(j - 1)] + contrib[static_cast<std::size_t>(j)][0];
  }
  double best_sq = kInf;
  std::vector<int> best_digit = digit;
  const double dd = static_cast<double>(d);
  while (true) {
    const double dist_sq = dd - prefix[static_cast<std::size_t>(d - 1)].squaredNorm();
    if (dist_sq < best_sq) {
      best_sq = dist_sq;
      best_digit = digit;
    }
    int j = d - 1;
    while (j >= 1 && digit[static_cast<std::size_t>(j)] == order - 1) --j;
    if (j < 1) break;
    ++digit[static_cast<std::size_t>(j)];
    for (int i = j; i < d; ++i) {
      if (i > j) digit[static_cast<std::size_t>(i)] = 0;
      prefix[static_cast<std::size_t>(i)] =
          prefix[static_cast<std::size_t>(i - 1)] +
          contrib[static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(digit[static_cast<std::size_t>(i)])];
    }
  }

  ComplexVector best(d);
  for (int j = 0; j < d; ++j) {
    best(j) = root_of_unity(best_digit[static_cast<std::size_t>(j)], order);
  }
  FeasibilityOutcome out;
  out.oracle_checked = true;
  out.starts_used = 0;
  out.residual = s.distance(best);
  GridEvidence grid;
  grid.order = order;
  grid.candidates = count;
  grid.resolution_bound = std::max(2.0, std::sqrt(dd - 1.0)) *
                          std::numbers::pi / static_cast<double>(order);
  grid.excluded = out.residual > grid.resolution_bound;
  out.grid = grid;
  if (out.residual <= tol_success) {
    out.status = FeasibilityStatus::kFound;
    out.vector = best;
    out.coefficients = s.coefficients(best);
  }
  return out;
}

// --- forced constraints -----------------------------------------------------

std::vector<ForcedConstraint> magnitude_constraint_reduce(const SubspaceSpec& s,
                                                          double zero_eps) {
  const ComplexMatrix& b = s.basis_matrix();
  const int d = s.ambient_dim();
  const int k = s.dim();
  std::vector<std::vector<int>> support(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < k; ++i) {
      if (std::abs(b(j, i)) > zero_eps) support[static_cast<std::size_t>(j)].push_back(i);
    }
  }

  std::vector<ForcedConstraint> out;
  auto has_modulus = [&](int index, double modulus) {
    return std::any_of(out.begin(), out.end(), [&](const ForcedConstraint& c) {
      const auto* m = std::get_if<ForcedModulus>(&c);
      return m && m->index == index && std::abs(m->modulus - modulus) < 1e-9;
    });
  };
  auto has_coupling = [&](int first, int second) {
    return std::any_of(out.begin(), out.end(), [&](const ForcedConstraint& c) {
      const auto* m = std::get_if<ForcedOrthogonalCoupling>(&c);
      return m && m->first == first && m->second == second;
    });
  };

  for (int j = 0; j < d; ++j) {
    const auto& sj = support[static_cast<std::size_t>(j)];
    if (sj.size() == 1) {
      const int i = sj.front();
      const double modulus = 1.0 / std::abs(b(j, i));
      if (!has_modulus(i, modulus)) out.push_back(ForcedModulus{i, modulus, j});
    }
  }

  for (int j = 0; j < d; ++j) {
    const auto& sj = support[static_cast<std::size_t>(j)];
    if (sj.size() != 2) continue;
    const int i1 = sj[0];
    const int i2 = sj[1];
    if (has_coupling(i1, i2)) continue;
    const Complex a = b(j, i1);
    const Complex bb = b(j, i2);
    for (int jp = j + 1; jp < d; ++jp) {
      if (support[static_cast<std::size_t>(jp)] != sj) continue;
      const Complex u = b(jp, i2) / bb;
      if (std::abs(std::abs(u) - 1.0) > 1e-9) continue;
      if (std::abs(b(jp, i1) + a * u) > 1e-9) continue;
      out.push_back(ForcedOrthogonalCoupling{i1, i2, a, bb, j, jp});
      break;
    }
  }
  return out;
}

double constraint_violation(const ForcedConstraint& c,
                            const ComplexVector& coefficients) {
  if (const auto* m = std::get_if<ForcedModulus>(&c)) {
    return std::abs(std::abs(coefficients(m->index)) - m->modulus);
  }
  const auto& p = std::get<ForcedOrthogonalCoupling>(c);
  const Complex x = p.a * coefficients(p.first);
  const Complex y = p.b * coefficients(p.second);
  const double orth = std::abs((x * std::conj(y)).real());
  const double norm = std::abs(std::norm(x) + std::norm(y) - 1.0);
  return std::max(orth, norm);
}

std::string describe(const ForcedConstraint& c) {
  std::ostringstream os;
  if (const auto* m = std::get_if<ForcedModulus>(&c)) {
    os << "|k" << m->index + 1 << "| = " << m->modulus << " (coordinate "
       << m->coordinate << ")";
    return os.str();
  }
  const auto& p = std::get<ForcedOrthogonalCoupling>(c);
  os << "a*k" << p.first + 1 << " perp b*k" << p.second + 1 << " with |a|="
     << std::abs(p.a) << ", |b|=" << std::abs(p.b) << " (coordinates "
     << p.coordinate_plus << ", " << p.coordinate_minus << ")";
  return os.str();
}

// --- matrix alternating projection ------------------------------------------

MatrixFeasibilityOutcome nearest_unitary_in_span(
    const std::vector<ComplexMatrix>& matrix_basis, const SolverConfig& cfg) {
  cfg.validate();
  if (matrix_basis.empty()) {
    throw PreconditionError("nearest_unitary_in_span: empty basis");
  }
  const Eigen::Index d = matrix_basis.front().rows();
  const double dd = static_cast<double>(d);
  for (std::size_t i = 0; i < matrix_basis.size(); ++i) {
    for (std::size_t j = i; j < matrix_basis.size(); ++j) {
      const Complex g = trace_inner(matrix_basis[i], matrix_basis[j]);
      const Complex expected = i == j ? Complex{dd, 0.0} : Complex{};
      if (std::abs(g - expected) > 1e-8 * dd) {
        throw PreconditionError(
            "nearest_unitary_in_span: basis not orthonormal under Tr(AB^+)/d");
      }
    }
  }

  auto project = [&](const ComplexMatrix& x, ComplexVector* coeffs) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    ComplexVector c(static_cast<Eigen::Index>(matrix_basis.size()));
    for (std::size_t i = 0; i < matrix_basis.size(); ++i) {
      c(static_cast<Eigen::Index>(i)) = trace_inner(x, matrix_basis[i]) / dd;
      p += c(static_cast<Eigen::Index>(i)) * matrix_basis[i];
    }
    if (coeffs) *coeffs = c;
    return p;
  };

  MatrixFeasibilityOutcome out;
  out.residual = kInf;
  for (int start = 0; start < cfg.starts; ++start) {
    out.starts_used = start + 1;
    auto rng = start_rng(cfg.seed, start);
    std::normal_distribution<double> gauss;
    auto random_unitary = [&]() {
      ComplexMatrix g(d, d);
      for (Eigen::Index i = 0; i < g.size(); ++i) {
        g(i) = Complex{gauss(rng), gauss(rng)};
      }
      Eigen::HouseholderQR<ComplexMatrix> qr(g);
      return ComplexMatrix(qr.householderQ());
    };

    ComplexMatrix x = random_unitary();
    double best = kInf;
    double window_best = kInf;
    int restarts = 0;
    for (int it = 0; it < cfg.max_iter; ++it) {
      ComplexVector coeffs;
      const ComplexMatrix p = project(x, &coeffs);
      const double r = (x - p).cwiseAbs().maxCoeff();
      best = std::min(best, r);
      out.residual = std::min(out.residual, r);
      if (r <= cfg.tol_success) {
        out.status = FeasibilityStatus::kFound;
        out.unitary = x;
        out.coefficients = coeffs;
        out.residual = r;
        return out;
      }
      if ((it + 1) % kStallWindow == 0) {
        if (best > kStallImprovement * window_best) break;
        window_best = best;
      }
      Eigen::JacobiSVD<ComplexMatrix> svd(p, Eigen::ComputeFullU |
                                                 Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() < kZeroEntry) {
        ++out.restarts;
        if (++restarts > kMaxRestartsPerStart) break;
        x = random_unitary();
        continue;
      }
      x = svd.matrixU() * svd.matrixV().adjoint();
    }
  }
  return out;
}

// --- greedy extension -------------------------------------------------------

ExtensionResult greedy_unimodular_extension(const PartialHadamard& h,
                                            const SolverConfig& cfg) {
  cfg.validate();
  ExtensionResult out{h, 0, {}};
  Tolerances witness_tol;
  const double scaled = static_cast<double>(h.dim()) * cfg.tol_success;
  witness_tol.eps_orth = std::max(witness_tol.eps_orth, scaled);
  witness_tol.eps_unimodular = std::max(witness_tol.eps_unimodular, scaled);
  witness_tol.eps_unitary = std::max(witness_tol.eps_unitary, scaled);
  int step = 0;
  while (out.matrix.rows() < out.matrix.dim()) {
    SolverConfig step_cfg = cfg;
    step_cfg.seed = splitmix64(cfg.seed ^ (0x5851f42d4c957f2dULL *
                                           static_cast<std::uint64_t>(++step)));
    const auto spec = SubspaceSpec::complement_of(out.matrix.matrix());
    FeasibilityOutcome outcome = find_unimodular_in_span(spec, step_cfg);
    out.steps.push_back(outcome);
    if (!outcome.found()) break;
    const ComplexMatrix& cur = out.matrix.matrix();
    ComplexMatrix next(cur.rows() + 1, cur.cols());
    next.topRows(cur.rows()) = cur;
    next.row(cur.rows()) = outcome.vector->transpose();
    // Near degenerate points a witness is only accurate to the solver's
    // success tolerance, so appended rows are checked at that scale.
    out.matrix = PartialHadamard::from_matrix(next, witness_tol);
    ++out.rows_added;
  }
  return out;
}

// --- quadratic certificate --------------------------------------------------

QuadraticCertificate quadratic_certificate(const QuadraticPair& q) {
  QuadraticCertificate cert;
  cert.pair = q;
  cert.discriminant1 = q.b1 * q.b1 - 4.0 * q.c1;
  cert.discriminant2 = q.b2 * q.b2 - 4.0 * q.c2;
  // Resultant of r^2 + b1 r + c1 and r^2 + b2 r + c2.
  cert.resultant = (q.c1 - q.c2) * (q.c1 - q.c2) +
                   (q.b1 - q.b2) * (q.b1 * q.c2 - q.b2 * q.c1);
  cert.first_has_real_root = cert.discriminant1 >= 0.0;
  cert.common_root = cert.resultant == 0.0;
  return cert;
}

}  // namespace umebh
