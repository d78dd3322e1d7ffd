#include <svem/error.hpp>

namespace svem {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::EmptyKernel: return "EmptyKernel";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::SeamMismatch: return "SeamMismatch";
    case ErrorKind::ToleranceAmbiguity: return "ToleranceAmbiguity";
    case ErrorKind::SingularLocalSystem: return "SingularLocalSystem";
    case ErrorKind::ConstraintMismatch: return "ConstraintMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace svem
