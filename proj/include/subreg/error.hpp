#ifndef SUBREG_ERROR_HPP_
#define SUBREG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace subreg {

/// Machine-readable failure categories surfaced by the library and the CLI.
enum class ErrorCode {
    EmptyLcpSet,
    UnknownSymbol,
    ReservedToken,
    AlphabetMismatch,
    ExactUnsupported,
    NotTotal,
    ParseError,
    SearchTooLarge,
    ShapeUnverifiable,
    NotInClass,
    UnmappedSegment,
    InternalError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace subreg

#endif // SUBREG_ERROR_HPP_
