// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small text helpers shared by the file readers and writers.
#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace vaxsim::detail {

inline std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                          s.front() == '\n' || s.front() == '\xef' || s.front() == '\xbb' ||
                          s.front() == '\xbf')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

/// Splits on commas into `out`; returns the number of fields present, which
/// may exceed out.size() (extra fields are counted, not stored).
template <std::size_t N>
std::size_t split_csv(std::string_view row, std::array<std::string_view, N>& out) noexcept
{
    std::size_t n = 0;
    while (true) {
        const auto comma = row.find(',');
        const auto field = trim(row.substr(0, comma));
        if (n < N) {
            out[n] = field;
        }
        ++n;
        if (comma == std::string_view::npos) {
            break;
        }
        row.remove_prefix(comma + 1);
    }
    return n;
}

inline bool looks_numeric(std::string_view s) noexcept
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    return !s.empty() && (s.front() >= '0' && s.front() <= '9');
}

inline bool parse_int(std::string_view s, std::int64_t& out) noexcept
{
    if (s.empty()) {
        return false;
    }
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

inline bool parse_double(std::string_view s, double& out) noexcept
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

/// Shortest representation that round-trips.
inline std::string shortest(double v)
{
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

inline std::string fixed(double v, int digits)
{
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.*f", digits, v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

} // namespace vaxsim::detail
