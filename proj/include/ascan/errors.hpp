#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ascan {

// Base for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// corpus
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class DuplicateSample : public Error {
public:
    using Error::Error;
};

class DegenerateSplit : public Error {
public:
    using Error::Error;
};

// formats
class NoEocd : public Error {
public:
    using Error::Error;
};

class TruncatedCd : public Error {
public:
    using Error::Error;
};

class BadSignature : public Error {
public:
    using Error::Error;
};

class CountMismatch : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

// featex
class NotAnArchive : public Error {
public:
    using Error::Error;
};

class BadMagic : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public Error {
public:
    using Error::Error;
};

class TruncatedStore : public Error {
public:
    using Error::Error;
};

// classifiers
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class SingleClass : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

} // namespace ascan
