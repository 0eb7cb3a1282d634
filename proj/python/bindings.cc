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

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umebh/cli.h"
#include "umebh/errors.h"
#include "umebh/hadamard.h"
#include "umebh/torus_feasibility.h"
#include "umebh/umeb.h"
#include "umebh/weyl_basis.h"

namespace py = pybind11;

namespace umebh {
namespace {

Tolerances make_tol(double eps_orth, double eps_unitary, double eps_unimodular) {
  Tolerances t{eps_orth, eps_unitary, eps_unimodular};
  t.validate();
  return t;
}

SolverConfig make_cfg(int starts, int max_iter, std::uint64_t seed,
                      int grid_order) {
  SolverConfig c;
  c.starts = starts;
  c.max_iter = max_iter;
  c.seed = seed;
  c.grid_order = grid_order;
  c.validate();
  return c;
}

py::dict outcome_dict(const FeasibilityOutcome& o) {
  py::dict d;
  d["found"] = o.found();
  d["residual"] = o.residual;
  d["starts_used"] = o.starts_used;
  d["vector"] = o.vector ? py::cast(*o.vector) : py::none();
  return d;
}

py::dict set_dict(const UnitaryBasisSet& s) {
  py::dict d;
  d["d"] = s.d;
  d["members"] = s.members;
  std::vector<std::string> labels;
  for (const auto& l : s.labels) labels.push_back(l.to_string());
  d["labels"] = labels;
  return d;
}

}  // namespace
}  // namespace umebh

PYBIND11_MODULE(_core, m) {
  using namespace umebh;
  m.doc() = "Partial Hadamard matrices and unextendible maximally entangled bases";

  py::register_exception<VerificationError>(m, "VerificationError",
                                            PyExc_ValueError);
  py::register_exception<RankError>(m, "RankError", PyExc_RuntimeError);

  py::class_<PartialCheck>(m, "PartialCheck")
      .def_readonly("modulus_ok", &PartialCheck::modulus_ok)
      .def_readonly("gram_ok", &PartialCheck::gram_ok)
      .def_readonly("worst_modulus_deviation",
                    &PartialCheck::worst_modulus_deviation)
      .def_readonly("worst_gram_deviation", &PartialCheck::worst_gram_deviation)
      .def_property_readonly("accepted", &PartialCheck::accepted)
      .def("__repr__", &PartialCheck::describe);

  py::class_<ExistenceVerdict>(m, "ExistenceVerdict")
      .def_readonly("d", &ExistenceVerdict::d)
      .def_property_readonly(
          "status", [](const ExistenceVerdict& v) { return to_string(v.status); })
      .def_property_readonly("route", &ExistenceVerdict::route_name)
      .def_readonly("divisor", &ExistenceVerdict::divisor)
      .def_readonly("caveat", &ExistenceVerdict::caveat);

  m.def("fourier", [](int d) { return fourier(d).matrix(); }, py::arg("d"));
  m.def("prop2_matrix", [](int n) { return prop2_matrix(n).matrix(); },
        py::arg("n"));
  m.def("example5_b", [] { return example5_b().matrix(); });
  m.def("example7_a", [] { return example7_a().matrix(); });
  m.def("weyl", [](int mm, int n, int d) { return weyl({mm, n, d}); },
        py::arg("m"), py::arg("n"), py::arg("d"));
  m.def("s0_family", &s0_family, py::arg("d"));

  m.def(
      "verify_partial",
      [](const ComplexMatrix& h, double eo, double eu, double em) {
        return check_partial(h, make_tol(eo, eu, em));
      },
      py::arg("h"), py::arg("eps_orth") = 1e-9, py::arg("eps_unitary") = 1e-8,
      py::arg("eps_unimodular") = 1e-9);
  m.def(
      "complete_last_row",
      [](const ComplexMatrix& h) {
        return complete_last_row(PartialHadamard::from_matrix(h)).matrix();
      },
      py::arg("h"));
  m.def(
      "special_umeb",
      [](const ComplexMatrix& h) {
        return set_dict(special_umeb(PartialHadamard::from_matrix(h)));
      },
      py::arg("h"));
  m.def("umeb5", [] { return set_dict(umeb5()); });
  m.def("umeb7", [] { return set_dict(umeb7()); });
  m.def(
      "verify_meb_conditions",
      [](int d, const std::vector<ComplexMatrix>& members) {
        UnitaryBasisSet s{d, members, {}};
        const auto r = verify_meb_conditions(s);
        py::dict out;
        out["member_count"] = r.member_count;
        out["worst_unitarity_deviation"] = r.worst_unitarity_deviation;
        out["worst_gram_deviation"] = r.worst_gram_deviation;
        out["passed"] = r.passed();
        return out;
      },
      py::arg("d"), py::arg("members"));
  m.def("state_vector",
        [](const ComplexMatrix& u) { return state_vector(u); }, py::arg("u"));

  m.def(
      "find_unimodular_in_span",
      [](const ComplexMatrix& rows, int starts, int max_iter,
         std::uint64_t seed) {
        const auto spec = SubspaceSpec::complement_of(rows);
        return outcome_dict(
            find_unimodular_in_span(spec, make_cfg(starts, max_iter, seed, 24)));
      },
      "Searches the complement of the row span of `rows`.", py::arg("rows"),
      py::arg("starts") = 1000, py::arg("max_iter") = 2000,
      py::arg("seed") = 0);
  m.def(
      "verify_unextendible_special",
      [](const ComplexMatrix& h, int starts, int max_iter, std::uint64_t seed,
         int grid_order) {
        const auto r = verify_unextendible_special(
            PartialHadamard::from_matrix(h),
            make_cfg(starts, max_iter, seed, grid_order));
        py::dict out;
        out["verdict"] = to_string(r.verdict);
        out["tier"] = to_string(r.tier);
        out["evidence"] = r.evidence;
        out["solver"] = outcome_dict(r.solver);
        out["witness_row"] =
            r.witness_row ? py::cast(*r.witness_row) : py::none();
        return out;
      },
      py::arg("h"), py::arg("starts") = 1000, py::arg("max_iter") = 2000,
      py::arg("seed") = 0, py::arg("grid_order") = 24);

  m.def("classify_dimension", &classify_dimension, py::arg("d"));
  m.def(
      "lift_count",
      [](int d, long long n_members, int q, const std::string& formula) {
        LiftFormula f;
        if (formula == "lemma") {
          f = LiftFormula::kLemmaStatement;
        } else if (formula == "discussion") {
          f = LiftFormula::kDiscussionParagraph;
        } else {
          throw py::value_error("formula must be 'lemma' or 'discussion'");
        }
        const auto c = lift_count(d, n_members, q, f);
        return py::make_tuple(c.members, c.deficiency);
      },
      py::arg("d"), py::arg("n_members"), py::arg("q"),
      py::arg("formula") = "lemma");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs the command line; returns (exit_code, stdout, stderr).",
      py::arg("args"));
}
