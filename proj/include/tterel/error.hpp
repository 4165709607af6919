#pragma once

#include <stdexcept>
#include <string>

namespace tterel {

// Error kinds surfaced by the library. The CLI maps these to
// "error: <kind>: <detail>" diagnostics with exit code 2.
enum class Errc {
    EmptyPathSets,
    IndexOutOfRange,
    IrrelevantComponent,
    TooManyPathSets,
    InvalidK,
    ParamOutOfRange,
    DomainError,
    NegativeTime,
    EmptySet,
    NotIdenticallyDistributed,
    InvalidMarginal,
    NonFiniteValue,
    DomainCollapsed,
    ZeroDensity,
    WrongInputShape,
    UnsupportedFrailty,
    RootFindFailure,
    DimensionMismatch,
    InsufficientConditioning,
    SurvivalUnderflow,
    InvalidGrid,
    SpecParseError,
    IoError,
    InvalidArgument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace tterel
