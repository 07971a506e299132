// Copyright 2026 The qswitch Authors
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

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace switchsim {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Rows of named columns in a fixed order.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Throws std::invalid_argument when the row width does not match.
  void add_row(std::vector<Cell> row);
  void append(const Table& other);

  /// Index of `name`; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Header row, comma separated, 12 significant digits, LF line endings.
void write_csv(const Table& table, std::ostream& out);

/// Array of one object per row. Non-finite numbers become null.
void write_json(const Table& table, std::ostream& out);

std::string format_number(double x);

}  // namespace switchsim
