#pragma once

#include <stdexcept>
#include <string>

namespace harmonic {

// Error taxonomy shared by the library and the CLI. The CLI maps kinds to
// exit codes: ParseError -> 1, UnsupportedModulus/ConductorCap -> 2,
// Internal -> 3.
enum class ErrorKind {
    Parse,
    DivisionByZero,
    Pole,
    UnsupportedModulus,
    ConductorCap,
    Precision,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace harmonic
