// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eeopa {

/// Numbers are written with 12 significant digits ("%.12g"). Parsing such a
/// field and formatting it again reproduces the same text.
std::string format_number(double value);

/// Parses a field written by format_number (also accepts "nan", "inf").
double parse_number(std::string_view field);

/// Splits one CSV line on commas. Fields never contain commas or quotes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Replaces characters that would break a CSV field.
std::string sanitize_field(std::string_view text);

} // namespace eeopa
