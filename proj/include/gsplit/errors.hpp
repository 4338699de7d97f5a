#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsplit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SafetyError : public Error {
public:
    SafetyError(const std::string& variable, const std::string& rule_text);

    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

class ArityClashError : public Error {
public:
    explicit ArityClashError(const std::string& predicate);

    const std::string& predicate() const noexcept { return predicate_; }

private:
    std::string predicate_;
};

/// Aggregates, directives, intervals and richer choice syntax.
class UnsupportedConstruct : public Error {
public:
    UnsupportedConstruct(const std::string& construct, std::size_t line);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A grounding or enumeration limit was hit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class ExactCapExceeded : public Error {
public:
    ExactCapExceeded(std::size_t vertices, std::size_t cap);
};

class NotEstimable : public Error {
public:
    using Error::Error;
};

}  // namespace gsplit
