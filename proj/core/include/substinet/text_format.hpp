// Copyright 2026 The Substinet Authors
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

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace substinet {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_escape(std::string_view field);

/// Row-oriented CSV writer with a mandatory header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(unsigned long long value);
  CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(unsigned value) { return field(static_cast<unsigned long long>(value)); }
  CsvWriter& field(long value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(unsigned long value) { return field(static_cast<unsigned long long>(value)); }
  void end_row();

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

/// Writes a file through a sibling temporary and renames it into place, so
/// a failure never leaves a partial output behind.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

/// Calls fn(line, line_number) for each non-blank line of a text stream.
void for_each_line(std::istream& in,
                   const std::function<void(std::string_view, std::size_t)>& fn);

}  // namespace substinet
