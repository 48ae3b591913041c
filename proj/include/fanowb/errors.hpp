#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanowb {

enum class ErrorKind {
    InvalidInput,
    NotPrime,
    NonHomogeneous,
    UnknownVariable,
    ZeroPolynomial,
    DegreeMismatch,
    CharacteristicTooSmall,
    DimensionMismatch,
    Unsupported,
    SearchSpaceTooLarge,
    SmoothnessNotAchieved,
    PointNotOnX,
    CoordinateVanishesAtCenter,
    PlaneNotInX,
    NotAFanoPoint,
    DownwardSetNotFound,
    IndexOutOfRange,
    CurveNotOnX,
    TwistOutOfWindow,
    PhiInsideX,
    NotNested,
    DegreeZeroResidual,
    PointNotOnQ,
    PointSingular,
    RetryBudgetExhausted,
    InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::NonHomogeneous: return "NonHomogeneous";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::CharacteristicTooSmall: return "CharacteristicTooSmall";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorKind::SmoothnessNotAchieved: return "SmoothnessNotAchieved";
        case ErrorKind::PointNotOnX: return "PointNotOnX";
        case ErrorKind::CoordinateVanishesAtCenter: return "CoordinateVanishesAtCenter";
        case ErrorKind::PlaneNotInX: return "PlaneNotInX";
        case ErrorKind::NotAFanoPoint: return "NotAFanoPoint";
        case ErrorKind::DownwardSetNotFound: return "DownwardSetNotFound";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::CurveNotOnX: return "CurveNotOnX";
        case ErrorKind::TwistOutOfWindow: return "TwistOutOfWindow";
        case ErrorKind::PhiInsideX: return "PhiInsideX";
        case ErrorKind::NotNested: return "NotNested";
        case ErrorKind::DegreeZeroResidual: return "DegreeZeroResidual";
        case ErrorKind::PointNotOnQ: return "PointNotOnQ";
        case ErrorKind::PointSingular: return "PointSingular";
        case ErrorKind::RetryBudgetExhausted: return "RetryBudgetExhausted";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace fanowb
