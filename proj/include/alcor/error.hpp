#pragma once

#include <stdexcept>
#include <string>

namespace alcor {

/// Base class for all alcor errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failures (missing files, failed writes/renames).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace alcor
