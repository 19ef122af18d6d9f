#pragma once

#include <stdexcept>
#include <string>

namespace qbg {

// Error taxonomy used across the library:
//   InvalidInputError      malformed data (bad Cartan matrix, rank mismatch, unknown root, ...)
//   UnsupportedTypeError   valid-looking input outside the supported families (non-finite type, ...)
//   UnsupportedProfileError regularity profile not applicable to the root system
//   PreconditionError      a documented operation precondition does not hold
//   RegularityError        a superregularity requirement fails (callers may refuse, exit code 3)
//   InternalError          an internal invariant was violated; indicates a bug, never user error

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

class UnsupportedTypeError : public Error {
public:
    using Error::Error;
};

class UnsupportedProfileError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class RegularityError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

inline void check_input(bool cond, const std::string& msg) {
    if (!cond) throw InvalidInputError(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

} // namespace qbg
