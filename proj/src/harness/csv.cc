// Copyright 2026 The Selective ANC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sanc/harness/csv.h"

#include <cmath>
#include <cstdio>

#include "sanc/error.h"

namespace sanc {

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string CsvEscape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
  if (!out_) throw Error(ErrorCode::kIo, "cannot write " + path);
  Row(header);
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw Error(ErrorCode::kInvalidDimension, "csv row width mismatch in " + path_);
  }
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << CsvEscape(fields[i]);
  }
  out_ << '\n';
}

void CsvWriter::Close() {
  out_.close();
  if (out_.fail()) throw Error(ErrorCode::kIo, "write failed: " + path_);
}

}  // namespace sanc
