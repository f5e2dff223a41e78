#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace neusv {

enum class ErrorCode {
    Syntax,
    UnknownAtom,
    EmptyFormula,
    EmptyProposition,
    WidthMismatch,
    Domain,
    InvalidThreshold,
    EmptyTrace,
    Uncalibrated,
    PropositionMismatch,
    StateExplosion,
    InstanceTooLarge,
    ResidualContainsAtom,
    EmptyDistribution,
    NoModes,
    LengthMismatch,
    ZeroVariance,
    SingleClass,
    MalformedAnswer,
    Transport,
    ContextLimit,
    Schema,
    MissingKey,
    UnparseableList,
    TranslationFailed,
    TooFewFrames,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code lets
/// callers (and tests) branch on the failure kind without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Syntax error in a temporal-logic specification, with a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorCode::Syntax, format(message, line, column)),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        return "syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

} // namespace neusv
