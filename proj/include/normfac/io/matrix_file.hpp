// Copyright 2026 The normfac Authors
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

// Matrix file format:
//
//   ROWS COLS
//   a11 a12 ...
//   ...
//
// ROWS*COLS whitespace-separated complex literals in row-major order follow the
// header; line breaks carry no meaning. '#' starts a comment that runs to the
// end of the line. Complex literals:
//
//   FLOAT | FLOAT(+|-)FLOATi | FLOAT(+|-)i | FLOATi | [+|-]i
//
// where FLOAT is a signed decimal with optional exponent (no inf, nan or hex).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "normfac/matrix.hpp"

namespace normfac::io {

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Length of the FLOAT prefix of s (sign allowed), or 0.
inline std::size_t scan_float(std::string_view s) {
    std::size_t p = 0;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        ++p;
    }
    const std::size_t int_start = p;
    while (p < s.size() && is_digit(s[p])) {
        ++p;
    }
    std::size_t digits = p - int_start;
    if (p < s.size() && s[p] == '.') {
        ++p;
        const std::size_t frac_start = p;
        while (p < s.size() && is_digit(s[p])) {
            ++p;
        }
        digits += p - frac_start;
    }
    if (digits == 0) {
        return 0;
    }
    if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < s.size() && (s[q] == '+' || s[q] == '-')) {
            ++q;
        }
        const std::size_t exp_start = q;
        while (q < s.size() && is_digit(s[q])) {
            ++q;
        }
        if (q > exp_start) {
            p = q;
        }
    }
    return p;
}

inline std::optional<double> to_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

} // namespace detail

/// Parses one complex literal; nullopt when the token does not match the grammar.
inline std::optional<Complex> parse_complex(std::string_view token) {
    if (token == "i" || token == "+i") {
        return Complex(0.0, 1.0);
    }
    if (token == "-i") {
        return Complex(0.0, -1.0);
    }
    const std::size_t first = detail::scan_float(token);
    if (first == 0) {
        return std::nullopt;
    }
    const auto a = detail::to_double(token.substr(0, first));
    if (!a) {
        return std::nullopt;
    }
    std::string_view rest = token.substr(first);
    if (rest.empty()) {
        return Complex(*a, 0.0);
    }
    if (rest == "i") {
        return Complex(0.0, *a);
    }
    if (rest.front() != '+' && rest.front() != '-') {
        return std::nullopt;
    }
    const double sign = rest.front() == '-' ? -1.0 : 1.0;
    rest.remove_prefix(1);
    if (rest == "i") {
        return Complex(*a, sign);
    }
    if (rest.empty() || rest.front() == '+' || rest.front() == '-' || rest.back() != 'i') {
        return std::nullopt;
    }
    rest.remove_suffix(1);
    if (detail::scan_float(rest) != rest.size()) {
        return std::nullopt;
    }
    const auto b = detail::to_double(rest);
    if (!b) {
        return std::nullopt;
    }
    return Complex(*a, sign * *b);
}

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

/// Whitespace-separated tokens with 1-based positions; '#' comments dropped.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++column;
            ++i;
        } else {
            Token t{{}, line, column};
            while (i < text.size() && text[i] != '\n' && text[i] != ' ' && text[i] != '\t' &&
                   text[i] != '\r' && text[i] != '#') {
                t.text.push_back(text[i]);
                ++column;
                ++i;
            }
            tokens.push_back(std::move(t));
        }
    }
    return tokens;
}

namespace detail {

inline std::optional<std::size_t> to_dimension(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    for (char c : s) {
        if (!is_digit(c)) {
            return std::nullopt;
        }
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || value == 0) {
        return std::nullopt;
    }
    return value;
}

} // namespace detail

inline ComplexMatrix parse_matrix(std::string_view text) {
    const auto tokens = tokenize(text);
    if (tokens.size() < 2) {
        const std::size_t line = tokens.empty() ? 1 : tokens.front().line;
        throw ParseError(ErrorCode::BadHeader, line, 1, "expected 'ROWS COLS' header");
    }
    const auto rows = detail::to_dimension(tokens[0].text);
    const auto cols = detail::to_dimension(tokens[1].text);
    if (!rows || !cols) {
        const auto &bad = rows ? tokens[1] : tokens[0];
        throw ParseError(ErrorCode::BadHeader, bad.line, bad.column,
                         "'" + bad.text + "' is not a positive dimension");
    }
    const std::size_t expected = *rows * *cols;
    const std::size_t got = tokens.size() - 2;
    if (got != expected) {
        const auto &at = tokens.back();
        throw ParseError(ErrorCode::CountMismatch, at.line, at.column,
                         "header announces " + std::to_string(expected) + " entries, found " +
                             std::to_string(got));
    }
    std::vector<Complex> data;
    data.reserve(expected);
    for (std::size_t k = 2; k < tokens.size(); ++k) {
        const auto value = parse_complex(tokens[k].text);
        if (!value) {
            throw ParseError(ErrorCode::BadToken, tokens[k].line, tokens[k].column,
                             "'" + tokens[k].text + "' is not a complex number");
        }
        data.push_back(*value);
    }
    return ComplexMatrix(*rows, *cols, std::move(data));
}

/// Thrown when a file cannot be read or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline ComplexMatrix read_matrix_file(const std::string &path) { return parse_matrix(read_file(path)); }

/// Shortest of the 15, 16 and 17 significant digit forms that reads back as x.
inline std::string format_double(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[32];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        if (std::strtod(buf, nullptr) == x) {
            break;
        }
    }
    return buf;
}

/// A complex literal that parse_complex reads back exactly.
inline std::string format_complex(Complex z) {
    if (z.imag() == 0.0) {
        return format_double(z.real());
    }
    std::string im = format_double(std::abs(z.imag()));
    const char sign = std::signbit(z.imag()) ? '-' : '+';
    if (z.real() == 0.0) {
        return (sign == '-' ? "-" : "") + im + "i";
    }
    return format_double(z.real()) + sign + im + "i";
}

inline std::string format_matrix(const ComplexMatrix &m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += format_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace normfac::io
