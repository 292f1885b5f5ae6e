#pragma once

#include <stdexcept>
#include <string>

namespace gdist {

// Every error raised by the library derives from Error and carries a short
// machine-readable kind tag, which the CLI prints on the diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Argument outside the mathematical domain of an operation (e.g. u > 1).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Incompatible sizes: n0 larger than a graph, K larger than m, ...
class SizeError : public Error {
public:
    explicit SizeError(const std::string& what) : Error("size", what) {}
};

// Malformed or degenerate input data.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error("input", what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

// Parse failure in an input file; the message names the file and line.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse", what) {}
};

} // namespace gdist
