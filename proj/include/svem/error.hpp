#pragma once

#include <stdexcept>
#include <string>

namespace svem {

/// Failure categories raised by the library. The name of each category is
/// part of the CLI contract (`error: <Name>: <detail>`).
enum class ErrorKind {
    DegeneratePoint,
    DegenerateFace,
    EmptyKernel,
    InvalidParameter,
    InvalidMesh,
    SeamMismatch,
    ToleranceAmbiguity,
    SingularLocalSystem,
    ConstraintMismatch,
    SingularSystem,
    IoError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(detail)
        , m_kind(kind)
    {
    }

    ErrorKind kind() const noexcept { return m_kind; }
    const char* name() const noexcept { return to_string(m_kind); }

private:
    ErrorKind m_kind;
};

} // namespace svem
