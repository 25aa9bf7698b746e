// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vaxsim {

enum class ErrorCode {
    InvalidArgument = 1,
    Io = 2,
    Parse = 3,
    Unreachable = 4,
    Internal = 5,
};

/// Single exception type for the library; the C API maps `code()` to a
/// status value.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

inline void require(bool condition, const char* what)
{
    if (!condition) {
        fail(ErrorCode::InvalidArgument, what);
    }
}

inline void require(bool condition, const std::string& what)
{
    if (!condition) {
        fail(ErrorCode::InvalidArgument, what);
    }
}

} // namespace vaxsim
