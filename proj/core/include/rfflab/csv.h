// Copyright 2026 The rfflab Authors
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

#ifndef RFFLAB_CSV_H_
#define RFFLAB_CSV_H_

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace rfflab {

// RFC 4180-style CSV: comma separated, double quotes around fields that
// contain commas, quotes or newlines, "" for a literal quote.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws IoError if the file cannot be read, has no header, or a row has the
// wrong number of fields.
CsvTable ReadCsv(const std::filesystem::path& path);
CsvTable ParseCsv(std::string_view text);

// Shortest round-trip decimal form of a double ("%.17g" fallback for
// values that need it). Output is identical across runs for equal inputs.
std::string FormatDouble(double v);

// Streams rows to a file; fields are quoted only when needed.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& Field(std::string_view s);
  CsvWriter& Field(double v);
  CsvWriter& Field(long long v);
  CsvWriter& Field(unsigned long long v);
  CsvWriter& Field(int v) { return Field(static_cast<long long>(v)); }
  CsvWriter& Field(std::size_t v) { return Field(static_cast<unsigned long long>(v)); }
  void EndRow();

 private:
  void Separator();

  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

std::string QuoteCsvField(std::string_view s);

}  // namespace rfflab

#endif  // RFFLAB_CSV_H_
