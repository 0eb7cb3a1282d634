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

#ifndef UMEBH_MATRIX_FILE_H_
#define UMEBH_MATRIX_FILE_H_

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "umebh/numerics.h"

namespace umebh {

inline constexpr const char* kSchemaVersion = "1";

enum class FileKind { kPartialHadamard, kUnitarySet, kVectorList };

const char* to_string(FileKind k);

// On-disk payload. partial_hadamard and vector_list use `rows`; unitary_set
// uses `members` (+ optional `labels`). Complex entries are [re, im] pairs.
struct MatrixFile {
  std::string schema_version = kSchemaVersion;
  FileKind kind = FileKind::kPartialHadamard;
  int d = 0;
  ComplexMatrix rows;
  std::vector<ComplexMatrix> members;
  std::vector<std::string> labels;
  nlohmann::json metadata = nlohmann::json::object();
};

// Malformed input; `location` is a JSON-pointer-like path to the first bad
// element.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message),
        location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

MatrixFile make_rows_file(FileKind kind, const ComplexMatrix& rows,
                          nlohmann::json metadata = nlohmann::json::object());
MatrixFile make_set_file(int d, std::vector<ComplexMatrix> members,
                         std::vector<std::string> labels,
                         nlohmann::json metadata = nlohmann::json::object());

nlohmann::json to_json(const MatrixFile& f);
MatrixFile from_json(const nlohmann::json& j);

// Canonical text: one matrix row per line, shortest round-trip doubles.
std::string serialize(const MatrixFile& f);
// Throws SchemaError (location "$" for JSON syntax errors).
MatrixFile parse(const std::string& text);

MatrixFile read_matrix_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace umebh

#endif  // UMEBH_MATRIX_FILE_H_
