#pragma once

#include <stdexcept>
#include <string>

namespace blc {

/// Base class for all errors raised by the library. The CLI maps any
/// Error to exit code 2 (data error).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class FileNotFound : public Error {
public:
    explicit FileNotFound(const std::string& path)
        : Error("file not found: " + path) {}
};

class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& msg) : Error("decode error: " + msg) {}
};

/// Parse failure in a text input (pose file, manifest, CSV). The message
/// names the file and 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class EmptyFile : public Error {
public:
    explicit EmptyFile(const std::string& path) : Error("empty file: " + path) {}
};

class InvalidDimensions : public Error {
public:
    explicit InvalidDimensions(const std::string& msg)
        : Error("invalid dimensions: " + msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg)
        : Error("dimension mismatch: " + msg) {}
};

class NonMonotoneId : public Error {
public:
    explicit NonMonotoneId(const std::string& msg)
        : Error("non-monotone frame id: " + msg) {}
};

}  // namespace blc
