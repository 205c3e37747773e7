// Copyright 2026 The nor-score Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace norscore::text {

/// One parsed CSV row with its 1-based source line.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: comma separated, optional double quotes, CRLF or
/// LF. Blank lines are skipped. Throws ParseError on an unterminated quote.
std::vector<CsvRow> read_csv(std::string_view text);

/// Quotes the field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);

/// Locale-independent strict parsers; the whole string must be consumed.
std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

/// Shortest round-trip decimal form ("0.75", "1", "-1.5").
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

}  // namespace norscore::text
