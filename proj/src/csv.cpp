// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/csv.hpp"
#include "eeopa/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace eeopa {

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.12g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

double parse_number(std::string_view field)
{
    const std::string s(field);
    if (s == "nan")
        return std::nan("");
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        fail(ErrorKind::parse, "not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string sanitize_field(std::string_view text)
{
    std::string out(text);
    for (char &c : out)
        if (c == ',' || c == '"' || c == '\n' || c == '\r')
            c = c == ',' ? ';' : ' ';
    return out;
}

} // namespace eeopa
