#include "holext/error.hpp"

namespace holext {

std::string_view error_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidCircle: return "InvalidCircle";
        case ErrorKind::NestedHoleViolation: return "NestedHoleViolation";
        case ErrorKind::OverlappingHoles: return "OverlappingHoles";
        case ErrorKind::PunctureOutsideDomain: return "PunctureOutsideDomain";
        case ErrorKind::DuplicatePuncture: return "DuplicatePuncture";
        case ErrorKind::InvalidRegionRef: return "InvalidRegionRef";
        case ErrorKind::PoleHit: return "PoleHit";
        case ErrorKind::OutsideRegion: return "OutsideRegion";
        case ErrorKind::AnchorNotOnCircle: return "AnchorNotOnCircle";
        case ErrorKind::AnchorNotOnInnerCircle: return "AnchorNotOnInnerCircle";
        case ErrorKind::RegionViolation: return "RegionViolation";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
        case ErrorKind::WrongSupport: return "WrongSupport";
        case ErrorKind::UnsupportedRegion: return "UnsupportedRegion";
        case ErrorKind::NotNested: return "NotNested";
        case ErrorKind::InfeasibleBound: return "InfeasibleBound";
        case ErrorKind::InvalidBound: return "InvalidBound";
        case ErrorKind::PointsTooClose: return "PointsTooClose";
        case ErrorKind::BoundViolatedAfterMaxRounds: return "BoundViolatedAfterMaxRounds";
        case ErrorKind::OwnTermMarginViolated: return "OwnTermMarginViolated";
        case ErrorKind::CrossTermMarginViolated: return "CrossTermMarginViolated";
        case ErrorKind::GlueBoundViolated: return "GlueBoundViolated";
        case ErrorKind::PunctureDegenerate: return "PunctureDegenerate";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace holext
