// Copyright 2026 The qbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qbm {

/// Shortest decimal text that parses back to the same double.
/// Non-finite values print as inf, -inf and nan.
std::string format_double(double value);

/// Parses a full string as a double. Returns false on any leftover text.
bool parse_double(std::string_view text, double& value);

/// Accumulates CSV rows with a fixed header.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::string_view value);
  CsvWriter& cell(const char* value) { return cell(std::string_view(value)); }
  CsvWriter& cell(bool value);
  /// Finishes the row; throws std::logic_error on a column-count mismatch.
  void end_row();

  const std::string& str() const noexcept { return text_; }

 private:
  std::size_t columns_;
  std::size_t current_ = 0;
  std::string text_;
};

}  // namespace qbm
