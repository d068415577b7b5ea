#include "fibre/error.hpp"

namespace fibre {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegenerateSurgery: return "DegenerateSurgery";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::EmptyFiber: return "EmptyFiber";
    case ErrorCode::ToleranceTooCoarse: return "ToleranceTooCoarse";
    case ErrorCode::NonTransverseSlice: return "NonTransverseSlice";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::InvalidMultiplicity: return "InvalidMultiplicity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigParse: return "ConfigParse";
    }
    return "Unknown";
}

FibreError::FibreError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace fibre
