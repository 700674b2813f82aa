#pragma once

#include <vector>

#include "holext/disc_extension.hpp"
#include "holext/holo.hpp"
#include "holext/options.hpp"

namespace holext {

/// Interpolation data on the boundary of {r0 < |z| < 1}.
struct AnnulusConstraint {
    double r0 = 0.5;
    std::vector<Complex> outer_points;
    std::vector<Complex> outer_values;
    std::vector<Complex> inner_points;
    std::vector<Complex> inner_values;
    BoundFunction outer_bound;
    BoundFunction inner_bound;
};

struct AnnulusExtension {
    HoloFunction function;
    int rounds = 0;
};

/// Outer peaks ((1 + conj(zeta) z)/2)^n and inner peaks in r0/z, combined to
/// interpolate on both circles under the sampled bounds.
AnnulusExtension solve_annulus(const AnnulusConstraint& c, const SolverOptions& opts = {});

HoloFunction extend_annulus(const AnnulusConstraint& c, const SolverOptions& opts = {});

/// Which circle of the standard annulus carries the points where h = 1.
enum class KeepSide { Outer, Inner };

/// h = 1 on `keep`, h = 0 on `kill`, sampled |h| < 1 + eps on the keep circle,
/// < min(delta, 1 + eps) on the kill circle, and <= 1 + eps on intermediate
/// circles. Returns Const(0) when `keep` is empty.
AnnulusExtension separating_function(double r0, KeepSide side, const std::vector<Complex>& keep,
                                     const std::vector<Complex>& kill, double eps, double delta,
                                     const SolverOptions& opts = {});

}  // namespace holext
