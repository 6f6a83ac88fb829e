#pragma once

#include <stdexcept>
#include <string>

namespace pmq {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (bad header, wrong token count, junk tokens).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// An entry or derived quantity does not fit the 64-bit budget.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

/// Instance too large for the requested exhaustive method.
class SizeCapError : public Error {
public:
    explicit SizeCapError(const std::string& what) : Error(what) {}
};

/// Certification asked for a threshold that does not exist (no violation).
class NoViolationError : public Error {
public:
    explicit NoViolationError(const std::string& what) : Error(what) {}
};

} // namespace pmq
