#pragma once

#include <stdexcept>
#include <string>

namespace lnc {

enum class ErrorCode {
    NonPrimeCharacteristic,
    UnsupportedExtension,
    FieldTooLarge,
    ReduciblePolynomial,
    FieldMismatch,
    DivisionByZero,
    DimensionMismatch,
    RankDeficient,
    InconsistentSystem,
    InvalidNetwork,
    CycleDetected,
    Unreachable,
    UnknownNode,
    UnknownEdge,
    UnknownDestination,
    NotVariant1,
    NotLayered,
    FieldTooSmall,
    MissingCoefficient,
    InvalidAssignment,
    SchemaViolation,
    Io,
    InvalidArgument,
};

const char* error_code_name(ErrorCode c);

/// Exception carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace lnc
