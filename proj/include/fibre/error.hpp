#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibre {

enum class ErrorCode {
    NotCoprime,
    DegenerateSurgery,
    NotPrimitive,
    NotOnBoundary,
    DimensionMismatch,
    StepTooLarge,
    EmptyFiber,
    ToleranceTooCoarse,
    NonTransverseSlice,
    MultiComponent,
    InvalidMultiplicity,
    InvalidArgument,
    ConfigParse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class FibreError : public std::runtime_error {
public:
    FibreError(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fibre
