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

#include "umebh/matrix_file.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace umebh {

using nlohmann::json;

const char* to_string(FileKind k) {
  switch (k) {
    case FileKind::kPartialHadamard:
      return "partial_hadamard";
    case FileKind::kUnitarySet:
      return "unitary_set";
    case FileKind::kVectorList:
      return "vector_list";
  }
  return "?";
}

namespace {

json entry_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json row_json(const ComplexMatrix& m, Eigen::Index r) {
  json row = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry_json(m(r, c)));
  return row;
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(row_json(m, r));
  return rows;
}

Complex parse_entry(const json& j, const std::string& loc) {
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError(loc, "expected [re, im] pair");
  }
  if (!j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(loc, "complex parts must be numbers");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw SchemaError(loc, "complex parts must be finite");
  }
  return {re, im};
}

ComplexMatrix parse_matrix(const json& j, int cols, const std::string& loc,
                           int expected_rows = -1) {
  if (!j.is_array()) throw SchemaError(loc, "expected array of rows");
  if (expected_rows >= 0 && static_cast<int>(j.size()) != expected_rows) {
    throw SchemaError(loc, "expected " + std::to_string(expected_rows) +
                               " rows, got " + std::to_string(j.size()));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rloc = loc + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array()) throw SchemaError(rloc, "expected array of entries");
    if (static_cast<int>(row.size()) != cols) {
      throw SchemaError(rloc, "expected " + std::to_string(cols) +
                                  " entries, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_entry(row[c], rloc + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

FileKind parse_kind(const json& j) {
  if (!j.is_string()) throw SchemaError("$.kind", "expected string");
  const auto s = j.get<std::string>();
  if (s == "partial_hadamard") return FileKind::kPartialHadamard;
  if (s == "unitary_set") return FileKind::kUnitarySet;
  if (s == "vector_list") return FileKind::kVectorList;
  throw SchemaError("$.kind", "unknown kind '" + s + "'");
}

}  // namespace

MatrixFile make_rows_file(FileKind kind, const ComplexMatrix& rows,
                          json metadata) {
  MatrixFile f;
  f.kind = kind;
  f.d = static_cast<int>(rows.cols());
  f.rows = rows;
  f.metadata = std::move(metadata);
  return f;
}

MatrixFile make_set_file(int d, std::vector<ComplexMatrix> members,
                         std::vector<std::string> labels, json metadata) {
  MatrixFile f;
  f.kind = FileKind::kUnitarySet;
  f.d = d;
  f.members = std::move(members);
  f.labels = std::move(labels);
  f.metadata = std::move(metadata);
  return f;
}

json to_json(const MatrixFile& f) {
  json j;
  j["schema_version"] = f.schema_version;
  j["kind"] = to_string(f.kind);
  j["d"] = f.d;
  j["metadata"] = f.metadata;
  if (f.kind == FileKind::kUnitarySet) {
    json members = json::array();
    for (const auto& m : f.members) members.push_back(matrix_json(m));
    j["members"] = std::move(members);
    j["labels"] = f.labels;
  } else {
    j["rows"] = matrix_json(f.rows);
  }
  return j;
}

MatrixFile from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("$", "expected object");
  MatrixFile f;
  if (!j.contains("schema_version")) {
    throw SchemaError("$.schema_version", "missing");
  }
  if (!j["schema_version"].is_string()) {
    throw SchemaError("$.schema_version", "expected string");
  }
  f.schema_version = j["schema_version"].get<std::string>();
  if (f.schema_version != kSchemaVersion) {
    throw SchemaError("$.schema_version",
                      "unsupported version '" + f.schema_version + "'");
  }
  if (!j.contains("kind")) throw SchemaError("$.kind", "missing");
  f.kind = parse_kind(j["kind"]);
  if (!j.contains("d") || !j["d"].is_number_integer()) {
    throw SchemaError("$.d", "expected integer");
  }
  f.d = j["d"].get<int>();
  if (f.d < 1) throw SchemaError("$.d", "must be >= 1");
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) {
      throw SchemaError("$.metadata", "expected object");
    }
    f.metadata = j["metadata"];
  }
  if (f.kind == FileKind::kUnitarySet) {
    if (!j.contains("members") || !j["members"].is_array()) {
      throw SchemaError("$.members", "expected array of matrices");
    }
    const json& members = j["members"];
    for (std::size_t a = 0; a < members.size(); ++a) {
      f.members.push_back(parse_matrix(members[a], f.d,
                                       "$.members[" + std::to_string(a) + "]",
                                       f.d));
    }
    if (j.contains("labels")) {
      const json& labels = j["labels"];
      if (!labels.is_array()) throw SchemaError("$.labels", "expected array");
      for (std::size_t a = 0; a < labels.size(); ++a) {
        if (!labels[a].is_string()) {
          throw SchemaError("$.labels[" + std::to_string(a) + "]",
                            "expected string");
        }
        f.labels.push_back(labels[a].get<std::string>());
      }
      if (!f.labels.empty() && f.labels.size() != f.members.size()) {
        throw SchemaError("$.labels", "length differs from members");
      }
    }
  } else {
    if (!j.contains("rows")) throw SchemaError("$.rows", "missing");
    f.rows = parse_matrix(j["rows"], f.d, "$.rows");
  }
  return f;
}

std::string serialize(const MatrixFile& f) {
  const json j = to_json(f);
  std::ostringstream os;
  os << "{\n";
  os << "  \"schema_version\": " << j["schema_version"].dump() << ",\n";
  os << "  \"kind\": " << j["kind"].dump() << ",\n";
  os << "  \"d\": " << j["d"].dump() << ",\n";
  os << "  \"metadata\": " << j["metadata"].dump() << ",\n";
  if (f.kind == FileKind::kUnitarySet) {
    os << "  \"labels\": " << j["labels"].dump() << ",\n";
    os << "  \"members\": [";
    const json& members = j["members"];
    for (std::size_t a = 0; a < members.size(); ++a) {
      os << (a ? ",\n    [" : "\n    [");
      for (std::size_t r = 0; r < members[a].size(); ++r) {
        os << (r ? ",\n      " : "\n      ") << members[a][r].dump();
      }
      os << "\n    ]";
    }
    os << (members.empty() ? "]\n" : "\n  ]\n");
  } else {
    os << "  \"rows\": [";
    const json& rows = j["rows"];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << (r ? ",\n    " : "\n    ") << rows[r].dump();
    }
    os << (rows.empty() ? "]\n" : "\n  ]\n");
  }
  os << "}\n";
  return os.str();
}

MatrixFile parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("$", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace umebh
