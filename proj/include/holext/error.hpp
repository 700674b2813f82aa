#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holext {

enum class ErrorKind {
    InvalidArgument,
    InvalidCircle,
    NestedHoleViolation,
    OverlappingHoles,
    PunctureOutsideDomain,
    DuplicatePuncture,
    InvalidRegionRef,
    PoleHit,
    OutsideRegion,
    AnchorNotOnCircle,
    AnchorNotOnInnerCircle,
    RegionViolation,
    HypothesisViolated,
    TruncationInsufficient,
    WrongSupport,
    UnsupportedRegion,
    NotNested,
    InfeasibleBound,
    InvalidBound,
    PointsTooClose,
    BoundViolatedAfterMaxRounds,
    OwnTermMarginViolated,
    CrossTermMarginViolated,
    GlueBoundViolated,
    PunctureDegenerate,
    ParseError,
};

/// Stable identifier used in diagnostics and on the command line.
std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace holext
