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

#include "umebh/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "umebh/errors.h"
#include "umebh/hadamard.h"
#include "umebh/matrix_file.h"
#include "umebh/numerics.h"
#include "umebh/torus_feasibility.h"
#include "umebh/umeb.h"
#include "umebh/weyl_basis.h"

namespace umebh {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kFamilies = {
    "fourier", "prop2",  "example5", "example7", "prop2-beta",
    "example5-nu", "example7-printed-beta", "s0", "weyl", "umeb"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  Tolerances tol;
  SolverConfig cfg;
  std::string out_path;
  std::string report_path;
  std::string oracle = "auto";
};

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "umebh";
  for (const auto& a : args) s += " " + a;
  return s;
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json vector_json(const ComplexVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args,
         const Globals& g)
      : start_(std::chrono::steady_clock::now()) {
    j_["command"] = std::move(command);
    j_["invocation"] = join_args(args);
    j_["version"] = kVersion;
    j_["seed"] = g.cfg.seed;
    j_["tolerances"] = {{"eps_orth", g.tol.eps_orth},
                        {"eps_unitary", g.tol.eps_unitary},
                        {"eps_unimodular", g.tol.eps_unimodular}};
    j_["solver"] = {{"starts", g.cfg.starts},
                    {"max_iter", g.cfg.max_iter},
                    {"tol_success", g.cfg.tol_success},
                    {"tol_evidence", g.cfg.tol_evidence},
                    {"grid_order", g.cfg.grid_order},
                    {"oracle", g.oracle}};
    j_["clauses"] = json::array();
    j_["evidence"] = json::array();
  }

  void clause(const std::string& name, bool pass, double value,
              double threshold, const std::string& detail = "") {
    json c = {{"name", name}, {"pass", pass}, {"value", value},
              {"threshold", threshold}};
    if (!detail.empty()) c["detail"] = detail;
    j_["clauses"].push_back(std::move(c));
  }

  void flag_clause(const std::string& name, bool pass,
                   const std::string& detail) {
    j_["clauses"].push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  }

  void evidence(const std::string& line) { j_["evidence"].push_back(line); }
  json& operator[](const char* key) { return j_[key]; }

  bool passed() const {
    return std::all_of(j_["clauses"].begin(), j_["clauses"].end(),
                       [](const json& c) { return c["pass"].get<bool>(); });
  }

  json finish() {
    j_["pass"] = passed();
    const auto dt = std::chrono::steady_clock::now() - start_;
    j_["wall_time_s"] = std::chrono::duration<double>(dt).count();
    return j_;
  }

 private:
  json j_;
  std::chrono::steady_clock::time_point start_;
};

void emit_file(const MatrixFile& f, const Globals& g, std::ostream& out) {
  if (g.out_path.empty()) {
    out << serialize(f);
  } else {
    write_text(g.out_path, serialize(f));
  }
}

// File-producing commands keep stdout for the file unless --out is set.
void emit_report(Report& r, const Globals& g, std::ostream& out,
                 bool file_on_stdout) {
  const std::string text = r.finish().dump(2) + "\n";
  if (!g.report_path.empty()) {
    write_text(g.report_path, text);
  } else if (!file_on_stdout) {
    out << text;
  }
}

std::string worst_position(Eigen::Index r, Eigen::Index c) {
  return "worst at (" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

int require_param(const std::optional<int>& v, const char* flag,
                  const std::string& family) {
  if (!v) {
    throw UsageError("family '" + family + "' requires " + flag);
  }
  return *v;
}

std::string catalog() {
  std::string s;
  for (const auto& f : kFamilies) s += (s.empty() ? "" : ", ") + f;
  return s;
}

std::vector<std::string> label_strings(const UnitaryBasisSet& s) {
  std::vector<std::string> out;
  for (const auto& l : s.labels) out.push_back(l.to_string());
  return out;
}

MatrixFile set_file(const UnitaryBasisSet& s, json meta) {
  return make_set_file(s.d, s.members, label_strings(s), std::move(meta));
}

MatrixFile weyl_set_file(int d, const std::vector<ComplexMatrix>& ms,
                         int m_start, json meta) {
  std::vector<std::string> labels;
  for (int m = m_start; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      labels.push_back(MemberLabel::weyl(m, n).to_string());
    }
  }
  return make_set_file(d, ms, std::move(labels), std::move(meta));
}

MatrixFile rows_file(FileKind kind, const ComplexMatrix& m,
                     const std::optional<int>& keep_rows, json meta) {
  if (!keep_rows) return make_rows_file(kind, m, std::move(meta));
  if (*keep_rows < 1 || *keep_rows > m.rows()) {
    throw UsageError("--rows must lie in [1, " + std::to_string(m.rows()) + "]");
  }
  meta["params"]["rows"] = *keep_rows;
  return make_rows_file(kind, m.topRows(*keep_rows), std::move(meta));
}

ComplexMatrix stack(const std::vector<ComplexVector>& vs) {
  return stack_rows(std::span<const ComplexVector>(vs));
}

int cmd_generate(const std::string& family, std::optional<int> d,
                 std::optional<int> n, std::optional<int> keep_rows,
                 const std::vector<std::string>& args, const Globals& g,
                 std::ostream& out) {
  Report report("generate", args, g);
  json meta = {{"family", family}, {"generator", std::string("umebh ") + kVersion},
               {"params", json::object()}};
  if (d) meta["params"]["d"] = *d;
  if (n) meta["params"]["n"] = *n;
  MatrixFile f;
  const auto kPH = FileKind::kPartialHadamard;
  const auto kVL = FileKind::kVectorList;
  if (family == "fourier") {
    f = rows_file(kPH, fourier(require_param(d, "--d", family)).matrix(),
                  keep_rows, meta);
  } else if (family == "prop2") {
    f = rows_file(kPH, prop2_matrix(require_param(n, "--n", family)).matrix(),
                  keep_rows, meta);
  } else if (family == "example5") {
    f = rows_file(kPH, example5_b().matrix(), keep_rows, meta);
  } else if (family == "example7") {
    f = rows_file(kPH, example7_a().matrix(), keep_rows, meta);
  } else if (family == "prop2-beta") {
    f = rows_file(kVL, stack(prop2_beta_basis(require_param(n, "--n", family))),
                  keep_rows, meta);
  } else if (family == "example5-nu") {
    f = rows_file(kVL, stack(example5_nu_basis()), keep_rows, meta);
  } else if (family == "example7-printed-beta") {
    meta["note"] = "transcribed as printed; not orthogonal to the rows";
    f = rows_file(kVL, stack(example7_printed_beta()), keep_rows, meta);
  } else if (family == "s0") {
    const int dd = require_param(d, "--d", family);
    f = weyl_set_file(dd, s0_family(dd), 1, meta);
  } else if (family == "weyl") {
    const int dd = require_param(d, "--d", family);
    f = weyl_set_file(dd, weyl_family(dd), 0, meta);
  } else if (family == "umeb") {
    const int dd = require_param(d, "--d", family);
    if (dd == 5) {
      meta["evidence_tier"] = "algebraic";
      f = set_file(umeb5(), meta);
    } else if (dd == 7) {
      meta["evidence_tier"] = "none";
      meta["note"] =
          "printed construction; verify --unextendible finds a witness";
      f = set_file(umeb7(), meta);
    } else if (dd >= 9 && dd % 4 == 1) {
      const auto ext = greedy_unimodular_extension(prop2_matrix((dd - 1) / 4),
                                                   g.cfg);
      if (ext.matrix.complete()) {
        throw InternalConsistencyError("prop2 extension reached a full matrix");
      }
      meta["evidence_tier"] = "heuristic";
      meta["rows_added"] = ext.rows_added;
      meta["seed"] = g.cfg.seed;
      meta["starts"] = g.cfg.starts;
      meta["max_iter"] = g.cfg.max_iter;
      f = set_file(special_umeb(ext.matrix), meta);
    } else {
      throw UsageError("generate umeb: no generator for d = " +
                       std::to_string(dd) + " (available: 5, 7, 4n+1 >= 9)");
    }
  } else {
    throw UsageError("unknown family '" + family + "'; catalog: " + catalog());
  }
  emit_file(f, g, out);
  report["family"] = family;
  report["kind"] = to_string(f.kind);
  report["d"] = f.d;
  report["size"] = f.kind == FileKind::kUnitarySet
                       ? static_cast<int>(f.members.size())
                       : static_cast<int>(f.rows.rows());
  emit_report(report, g, out, g.out_path.empty());
  return kExitPass;
}

void partial_clauses(Report& report, const PartialCheck& c,
                     const Tolerances& tol) {
  report.clause("unimodular_entries", c.modulus_ok, c.worst_modulus_deviation,
                tol.eps_unimodular,
                worst_position(c.worst_modulus_row, c.worst_modulus_col));
  report.clause("row_gram", c.gram_ok, c.worst_gram_deviation, tol.eps_orth,
                worst_position(c.worst_gram_row, c.worst_gram_col));
}

void check_oracle_budget(int d, const Globals& g) {
  if (g.oracle == "require" && !grid_within_budget(d, g.cfg.grid_order)) {
    throw BudgetExceeded("grid oracle required but " +
                         std::to_string(grid_candidate_count(d, g.cfg.grid_order)) +
                         " candidates exceed the budget");
  }
}

json outcome_json(const FeasibilityOutcome& o) {
  json j = {{"status", to_string(o.status)},
            {"residual", o.residual},
            {"starts_used", o.starts_used}};
  if (o.grid) {
    j["grid"] = {{"order", o.grid->order},
                 {"candidates", o.grid->candidates},
                 {"resolution_bound", o.grid->resolution_bound},
                 {"excluded", o.grid->excluded}};
  }
  if (o.vector) j["vector"] = vector_json(*o.vector);
  return j;
}

void unextendibility_section(Report& report, const UnextendibilityReport& u) {
  report["verdict"] = to_string(u.verdict);
  report["evidence_tier"] = to_string(u.tier);
  for (const auto& e : u.evidence) report.evidence(e);
  report["solver_outcome"] = outcome_json(u.solver);
  if (u.oracle) report["oracle_outcome"] = outcome_json(*u.oracle);
  if (!u.oracle_note.empty()) report["oracle_note"] = u.oracle_note;
  json cs = json::array();
  for (const auto& c : u.constraints) cs.push_back(describe(c));
  report["constraints"] = cs;
  if (u.witness_row) report["witness_row"] = vector_json(*u.witness_row);
  if (u.sign_certificate) {
    report["sign_certificate"] = {
        {"overlaps", u.sign_certificate->overlaps},
        {"min_overlap", u.sign_certificate->min_overlap},
        {"valid", u.sign_certificate->valid()}};
  }
  if (u.quadratic_certificate) {
    const auto& q = *u.quadratic_certificate;
    report["quadratic_certificate"] = {
        {"discriminant1", q.discriminant1}, {"discriminant2", q.discriminant2},
        {"resultant", q.resultant}, {"inconsistent", q.inconsistent()}};
  }
}

// Recovers H when the set is s0_family(d) followed by diagonal unitaries.
std::optional<PartialHadamard> special_structure(const UnitaryBasisSet& s,
                                                 const Tolerances& tol) {
  const int d = s.d;
  const int s0 = d * (d - 1);
  if (s.size() <= s0 || s.size() >= d * d) return std::nullopt;
  const auto ref = s0_family(d);
  for (int a = 0; a < s0; ++a) {
    if (!same_matrix(s.members[a], ref[a], tol.eps_unitary)) return std::nullopt;
  }
  ComplexMatrix rows(s.size() - s0, d);
  for (int a = s0; a < s.size(); ++a) {
    const ComplexMatrix& m = s.members[a];
    const ComplexMatrix off = m - ComplexMatrix(m.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > tol.eps_unitary) return std::nullopt;
    rows.row(a - s0) = m.diagonal().transpose();
  }
  auto v = verify_partial(rows, tol);
  return v.value;
}

int cmd_verify(const std::string& path, bool unextendible,
               const std::vector<std::string>& args, const Globals& g,
               std::ostream& out) {
  const MatrixFile f = read_matrix_file(path);
  Report report("verify", args, g);
  report["file"] = path;
  report["kind"] = to_string(f.kind);
  report["d"] = f.d;
  std::optional<MatrixFile> extended_file;

  if (f.kind == FileKind::kPartialHadamard) {
    if (f.rows.rows() > f.d) {
      throw UsageError("partial_hadamard file has more rows than columns");
    }
    report["rows"] = static_cast<int>(f.rows.rows());
    const auto v = verify_partial(f.rows, g.tol);
    partial_clauses(report, v.report, g.tol);
    if (unextendible && v.value) {
      const PartialHadamard& h = *v.value;
      if (h.complete()) {
        report.flag_clause("unextendible", false,
                           "complete Hadamard matrix: S0 with S(H) is a full "
                           "maximally entangled basis");
      } else {
        check_oracle_budget(h.dim(), g);
        const auto ext = greedy_unimodular_extension(h, g.cfg);
        report["input_extendible"] = ext.rows_added > 0;
        report["rows_added"] = ext.rows_added;
        if (ext.matrix.complete()) {
          report.flag_clause("unextendible", false,
                             "extension reached a complete Hadamard matrix");
        } else {
          const auto u = verify_unextendible_special(ext.matrix, g.cfg);
          unextendibility_section(report, u);
          std::string detail = std::string(to_string(u.verdict)) + " (" +
                               to_string(u.tier) + ")";
          if (ext.rows_added > 0) {
            detail += " for S0 with S(H'), H' = input plus " +
                      std::to_string(ext.rows_added) + " appended rows";
          }
          report.flag_clause(
              "unextendible",
              u.verdict == UnextendibilityVerdict::kUmebCertified, detail);
        }
        if (ext.rows_added > 0) {
          json meta = f.metadata;
          meta["extended_rows"] = ext.rows_added;
          extended_file = make_rows_file(FileKind::kPartialHadamard,
                                         ext.matrix.matrix(), meta);
        }
      }
    }
  } else if (f.kind == FileKind::kUnitarySet) {
    UnitaryBasisSet s;
    s.d = f.d;
    s.members = f.members;
    s.labels.assign(f.members.size(), MemberLabel::external());
    const auto m = verify_meb_conditions(s, g.tol);
    report["members"] = m.member_count;
    report.clause("member_count", m.count_ok, m.member_count, m.bound,
                  "must be below d^2");
    report.clause("unitarity", m.unitary_ok, m.worst_unitarity_deviation,
                  g.tol.eps_unitary);
    report.clause("trace_gram", m.gram_ok, m.worst_gram_deviation,
                  g.tol.eps_orth);
    if (unextendible && m.passed()) {
      if (auto h = special_structure(s, g.tol)) {
        check_oracle_budget(h->dim(), g);
        report["structure"] = "S0 with diagonal rows";
        const auto u = verify_unextendible_special(*h, g.cfg);
        unextendibility_section(report, u);
        report.flag_clause(
            "unextendible", u.verdict == UnextendibilityVerdict::kUmebCertified,
            std::string(to_string(u.verdict)) + " (" + to_string(u.tier) + ")");
      } else {
        report["structure"] = "general";
        const auto r = nearest_unitary_in_span(matrix_complement(s), g.cfg);
        report["evidence_tier"] = r.found() ? "none" : "heuristic";
        report["verdict"] = r.found() ? "extendible" : "UMEB-certified";
        report["solver_outcome"] = {{"status", to_string(r.status)},
                                    {"residual", r.residual},
                                    {"starts_used", r.starts_used},
                                    {"restarts", r.restarts}};
        report.flag_clause("unextendible", !r.found(),
                           r.found() ? "unitary found in the complement"
                                     : "no unitary found (heuristic)");
      }
    }
  } else {
    if (unextendible) {
      throw UsageError("--unextendible does not apply to vector_list files");
    }
    const auto vs = matrix_rows(f.rows);
    const double dev =
        orthonormality_deviation(std::span<const ComplexVector>(vs));
    report.clause("orthonormal", dev <= g.tol.eps_orth, dev, g.tol.eps_orth);
  }

  if (extended_file && !g.out_path.empty()) {
    write_text(g.out_path, serialize(*extended_file));
  }
  const bool ok = report.passed();
  emit_report(report, g, out, false);
  return ok ? kExitPass : kExitVerificationFailed;
}

PartialHadamard load_partial(const MatrixFile& f, const Globals& g,
                             Report& report) {
  if (f.kind != FileKind::kPartialHadamard) {
    throw UsageError("expected a partial_hadamard file, got " +
                     std::string(to_string(f.kind)));
  }
  if (f.rows.rows() > f.d) {
    throw UsageError("partial_hadamard file has more rows than columns");
  }
  const auto v = verify_partial(f.rows, g.tol);
  partial_clauses(report, v.report, g.tol);
  if (!v.value) {
    throw VerificationError("input is not a partial Hadamard matrix: " +
                            v.report.describe());
  }
  return *v.value;
}

int cmd_complete(const std::string& path, const std::vector<std::string>& args,
                 const Globals& g, std::ostream& out, std::ostream& err) {
  const MatrixFile f = read_matrix_file(path);
  if (f.kind == FileKind::kPartialHadamard && f.rows.rows() != f.d - 1) {
    throw UsageError("complete needs exactly d - 1 = " +
                     std::to_string(f.d - 1) + " rows, got " +
                     std::to_string(f.rows.rows()) + "; use search instead");
  }
  Report report("complete", args, g);
  report["file"] = path;
  PartialHadamard h = [&] {
    try {
      return load_partial(f, g, report);
    } catch (const VerificationError& e) {
      err << e.what() << "\n";
      emit_report(report, g, out, false);
      throw;
    }
  }();
  const PartialHadamard full = complete_last_row(h, g.tol);
  const ComplexVector last = full.row(full.rows() - 1);
  const double mod_dev = unimodularity_deviation(last);
  report.clause("appended_row_unimodular", mod_dev <= g.tol.eps_unimodular,
                mod_dev, g.tol.eps_unimodular);
  const ComplexMatrix& m = full.matrix();
  const ComplexMatrix gram =
      m * m.adjoint() -
      static_cast<double>(full.dim()) * ComplexMatrix::Identity(full.dim(), full.dim());
  const double gram_dev = gram.cwiseAbs().maxCoeff();
  report.clause("hadamard_gram", gram_dev <= g.tol.eps_unitary, gram_dev,
                g.tol.eps_unitary);
  report["appended_row"] = vector_json(last);
  json meta = f.metadata;
  meta["completed"] = true;
  emit_file(make_rows_file(FileKind::kPartialHadamard, m, meta), g, out);
  const bool ok = report.passed();
  emit_report(report, g, out, g.out_path.empty());
  return ok ? kExitPass : kExitVerificationFailed;
}

std::optional<int> prop2_index(const PartialHadamard& h) {
  if (h.dim() < 5 || h.dim() % 4 != 1) return std::nullopt;
  const int n = (h.dim() - 1) / 4;
  if (h.rows() != 2 * n) return std::nullopt;
  if (!same_matrix(h.matrix(), prop2_matrix(n).matrix(), 1e-10)) {
    return std::nullopt;
  }
  return n;
}

int cmd_search(const std::string& path, const std::vector<std::string>& args,
               const Globals& g, std::ostream& out) {
  const MatrixFile f = read_matrix_file(path);
  Report report("search", args, g);
  report["file"] = path;
  const PartialHadamard h = load_partial(f, g, report);
  report["input_rows"] = h.rows();
  report["d"] = h.dim();
  if (h.complete()) {
    report.evidence("input is already a complete Hadamard matrix");
    emit_report(report, g, out, false);
    return kExitPass;
  }
  check_oracle_budget(h.dim(), g);

  const auto ext = greedy_unimodular_extension(h, g.cfg);
  report["rows_added"] = ext.rows_added;
  report["final_rows"] = ext.matrix.rows();
  report["complete"] = ext.matrix.complete();
  json steps = json::array();
  for (const auto& s : ext.steps) steps.push_back(outcome_json(s));
  report["steps"] = steps;
  report.evidence("greedy extension added " + std::to_string(ext.rows_added) +
                  " rows" +
                  (ext.matrix.complete() ? " and completed the matrix"
                                         : ", then the solver stalled"));

  if (!ext.matrix.complete()) {
    if (grid_within_budget(h.dim(), g.cfg.grid_order)) {
      const auto spec = SubspaceSpec::complement_of(ext.matrix.matrix());
      const auto o = grid_oracle(spec, g.cfg.grid_order, g.cfg.tol_success);
      report["oracle_outcome"] = outcome_json(o);
      if (o.found()) {
        report.evidence("grid: on-grid witness beyond the stall point");
      } else if (o.grid->excluded) {
        report.evidence("grid: exhaustive exclusion at the stall point");
      } else {
        report.evidence("grid: inconclusive at L = " +
                        std::to_string(g.cfg.grid_order));
      }
    } else {
      const std::string note =
          "grid oracle skipped: " +
          std::to_string(grid_candidate_count(h.dim(), g.cfg.grid_order)) +
          " candidates exceed the budget";
      report["oracle_note"] = note;
      report.evidence(note);
    }
  }

  const int k0 = h.rows();
  std::vector<ComplexVector> witnesses;
  for (int r = k0; r < ext.matrix.rows(); ++r) {
    witnesses.push_back(ext.matrix.row(r));
  }

  const auto n = prop2_index(h);
  const SubspaceSpec spec =
      n ? SubspaceSpec::from_basis(prop2_beta_basis(*n))
        : SubspaceSpec::complement_of(h.matrix());
  const auto constraints = magnitude_constraint_reduce(spec);
  json cs = json::array();
  bool all_hold = true;
  for (const auto& c : constraints) {
    double worst = 0.0;
    for (const auto& w : witnesses) {
      worst = std::max(worst, constraint_violation(c, spec.coefficients(w)));
    }
    all_hold = all_hold && worst <= 1e-5;
    cs.push_back({{"constraint", describe(c)}, {"worst_violation", worst}});
  }
  report["constraints"] = cs;
  if (!constraints.empty()) {
    report.evidence(std::string("forced constraints ") +
                    (all_hold ? "hold" : "FAIL") + " on " +
                    std::to_string(witnesses.size()) + " witnesses");
  }

  if (n) {
    std::vector<ComplexVector> coeffs;
    for (const auto& w : witnesses) coeffs.push_back(spec.coefficients(w));
    const auto pc = parity_certificate(*n, coeffs);
    report["parity_certificate"] = {
        {"n", pc.n},
        {"forced_modulus", pc.forced_modulus},
        {"parity_rows", pc.parity_rows},
        {"coupling_verified", pc.coupling_verified},
        {"solutions_checked", pc.solutions_checked},
        {"worst_modulus_deviation", pc.worst_modulus_deviation},
        {"worst_coupling_deviation", pc.worst_coupling_deviation},
        {"valid", pc.valid()}};
    if (!pc.warning.empty()) report["parity_certificate"]["warning"] = pc.warning;
    report.evidence(std::string("parity certificate ") +
                    (pc.valid() ? "valid" : "not established"));
  }
  if (same_matrix(h.matrix(), example7_a().matrix(), 1e-10)) {
    const auto q = quadratic_certificate();
    report["quadratic_certificate"] = {
        {"discriminant1", q.discriminant1}, {"discriminant2", q.discriminant2},
        {"resultant", q.resultant}, {"inconsistent", q.inconsistent()}};
    report.evidence(
        std::string("printed quadratic pair ") +
        (q.inconsistent() ? "is inconsistent" : "is consistent") +
        (ext.rows_added > 0
             ? "; the search nevertheless found a row, so the reduction to "
               "that pair does not hold for this matrix"
             : ""));
  }

  if (!g.out_path.empty()) {
    json meta = f.metadata;
    meta["extended_rows"] = ext.rows_added;
    meta["seed"] = g.cfg.seed;
    write_text(g.out_path,
               serialize(make_rows_file(FileKind::kPartialHadamard,
                                        ext.matrix.matrix(), meta)));
  }
  emit_report(report, g, out, false);
  return kExitPass;
}

struct Seed {
  int d;
  long long members;
};

constexpr Seed kLiftSeeds[] = {{3, 6}, {5, 23}, {7, 45}};

std::string witness_command(const ExistenceVerdict& v) {
  if (v.d == 5 || v.d == 7) {
    return "umebh generate umeb --d " + std::to_string(v.d);
  }
  if (v.route == ExistenceRoute::kDivisor4nPlus1 && v.divisor == v.d) {
    return "umebh generate umeb --d " + std::to_string(v.d) +
           " (heuristic unextendibility)";
  }
  return "";
}

int cmd_classify(int d, const std::vector<std::string>& args, const Globals& g,
                 std::ostream& out) {
  if (d < 2) throw UsageError("classify: d must be >= 2");
  Report report("classify", args, g);
  const auto v = classify_dimension(d);
  report["d"] = d;
  report["status"] = to_string(v.status);
  report["route"] = v.route_name();
  if (v.divisor) report["divisor"] = v.divisor;
  if (!v.caveat.empty()) report["caveat"] = v.caveat;
  if (v.status == ExistenceStatus::kUnknown) {
    report["form"] = d % 2 == 0 ? "2p, p = " + std::to_string(d / 2)
                                : "p, p = " + std::to_string(d);
  }
  const std::string cmd = witness_command(v);
  report["witness_command"] =
      cmd.empty() ? json(nullptr) : json(cmd);
  if (cmd.empty() && v.status == ExistenceStatus::kExists) {
    report.evidence("no in-artifact generator: the lifting construction is "
                    "not implemented");
  }

  json lifts = json::array();
  std::vector<long long> lemma, discussion;
  for (const auto& s : kLiftSeeds) {
    if (d % s.d != 0) continue;
    const int q = d / s.d;
    const auto a = lift_count(s.d, s.members, q, LiftFormula::kLemmaStatement);
    const auto b =
        lift_count(s.d, s.members, q, LiftFormula::kDiscussionParagraph);
    lemma.push_back(a.deficiency);
    discussion.push_back(b.deficiency);
    lifts.push_back({{"seed_d", s.d},
                     {"seed_members", s.members},
                     {"q", q},
                     {to_string(LiftFormula::kLemmaStatement),
                      {{"members", a.members}, {"deficiency", a.deficiency}}},
                     {to_string(LiftFormula::kDiscussionParagraph),
                      {{"members", b.members}, {"deficiency", b.deficiency}}}});
  }
  report["lifts"] = lifts;
  auto distinct = [](std::vector<long long> xs) {
    std::sort(xs.begin(), xs.end());
    return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
  };
  if (lifts.size() >= 2) {
    const bool both = distinct(lemma) && distinct(discussion);
    report["deficiencies_distinct"] = both;
    report.evidence(std::to_string(lifts.size()) +
                    " lift constructions with " +
                    (both ? "pairwise distinct" : "coinciding") +
                    " deficiencies under both counting formulas");
  }
  emit_report(report, g, out, false);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Unextendible maximally entangled bases from partial Hadamard "
               "matrices",
               "umebh"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_option("--seed", g.cfg.seed, "Solver seed")->capture_default_str();
  app.add_option("--starts", g.cfg.starts, "Solver starts")->capture_default_str();
  app.add_option("--max-iter", g.cfg.max_iter, "Iterations per start")
      ->capture_default_str();
  app.add_option("--tol-success", g.cfg.tol_success, "Solver success residual")
      ->capture_default_str();
  app.add_option("--tol-evidence", g.cfg.tol_evidence,
                 "Residual treated as near-miss evidence")
      ->capture_default_str();
  app.add_option("--grid-order", g.cfg.grid_order, "Grid oracle roots of unity")
      ->capture_default_str();
  app.add_option("--oracle", g.oracle, "Grid oracle policy")
      ->check(CLI::IsMember({"auto", "require"}))
      ->capture_default_str();
  app.add_option("--tol-orth", g.tol.eps_orth)->capture_default_str();
  app.add_option("--tol-unitary", g.tol.eps_unitary)->capture_default_str();
  app.add_option("--tol-unimodular", g.tol.eps_unimodular)
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Output file (default stdout)");
  app.add_option("--report", g.report_path, "Report file");

  std::string family;
  std::optional<int> gen_d, gen_n, gen_rows;
  auto* gen = app.add_subcommand("generate", "Write a catalog matrix family");
  gen->add_option("family", family, "One of: " + catalog())->required();
  gen->add_option("--d", gen_d, "Dimension");
  gen->add_option("--n", gen_n, "Family parameter n");
  gen->add_option("--rows", gen_rows, "Keep only the first rows");

  std::string file;
  bool unextendible = false;
  auto* ver = app.add_subcommand("verify", "Check a matrix file");
  ver->add_option("file", file)->required();
  ver->add_flag("--unextendible", unextendible,
                "Also search for an extending state");
  auto* com = app.add_subcommand("complete", "Append the last Hadamard row");
  com->add_option("file", file)->required();
  auto* sea = app.add_subcommand("search", "Greedy unimodular row extension");
  sea->add_option("file", file)->required();
  int cls_d = 0;
  auto* cls = app.add_subcommand("classify", "Existence verdict for dimension d");
  cls->add_option("d", cls_d)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitMalformed;
  }

  try {
    g.tol.validate();
    g.cfg.validate();
    if (*gen) return cmd_generate(family, gen_d, gen_n, gen_rows, args, g, out);
    if (*ver) return cmd_verify(file, unextendible, args, g, out);
    if (*com) return cmd_complete(file, args, g, out, err);
    if (*sea) return cmd_search(file, args, g, out);
    if (*cls) return cmd_classify(cls_d, args, g, out);
  } catch (const SchemaError& e) {
    err << "malformed input at " << e.location() << ": " << e.what() << "\n";
    return kExitMalformed;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitMalformed;
}

}  // namespace umebh
