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

#ifndef SANC_HARNESS_CSV_H_
#define SANC_HARNESS_CSV_H_

#include <fstream>
#include <string>
#include <vector>

namespace sanc {

// Fixed formatting so reruns are byte-identical. inf/-inf/nan spelled out.
std::string FormatNumber(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void Row(const std::vector<std::string>& fields);
  void Close();

 private:
  std::ofstream out_;
  std::string path_;
  size_t columns_;
};

// Quotes fields containing commas, quotes or newlines.
std::string CsvEscape(const std::string& field);

}  // namespace sanc

#endif  // SANC_HARNESS_CSV_H_
