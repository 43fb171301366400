#pragma once

#include <stdexcept>
#include <string>

namespace rastershape {

// Base of every error the library raises. `is_input_error()` separates
// problems with user-supplied data or arguments from internal failures;
// the CLI maps the former to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, bool input_error = true)
        : std::runtime_error(what), input_error_(input_error) {}

    bool is_input_error() const noexcept { return input_error_; }

private:
    bool input_error_;
};

// Unreadable file, malformed header, unsupported magic, bad database line.
class FormatError : public Error {
public:
    using Error::Error;
};

// Database file written by an incompatible format version.
class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

class EmptyShapeError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

// Grid center does not coincide with the shape centroid.
class MisalignmentError : public Error {
public:
    using Error::Error;
};

// Vectors or databases built under different variants or raster specs.
class IncompatibleError : public Error {
public:
    using Error::Error;
};

class EmptyDatabaseError : public Error {
public:
    using Error::Error;
};

// Dataset-level precondition failure (e.g. a category with too few members).
class DatasetError : public Error {
public:
    using Error::Error;
};

}  // namespace rastershape
