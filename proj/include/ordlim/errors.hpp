#pragma once

#include <stdexcept>
#include <string>

namespace ordlim {

// Error categories map to CLI exit codes: usage/parse -> 4,
// precondition -> 3. Law/validation failures are report content,
// not exceptions.
enum class ErrorKind {
    usage,
    precondition,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

  private:
    ErrorKind kind_;
    std::string code_;
};

inline Error usage_error(std::string code, const std::string& what) {
    return Error(ErrorKind::usage, std::move(code), what);
}

inline Error precondition_error(std::string code, const std::string& what) {
    return Error(ErrorKind::precondition, std::move(code), what);
}

inline Error internal_error(std::string code, const std::string& what) {
    return Error(ErrorKind::internal, std::move(code), what);
}

} // namespace ordlim
