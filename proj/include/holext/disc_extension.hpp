#pragma once

#include <functional>
#include <vector>

#include "holext/conformal.hpp"
#include "holext/geometry.hpp"
#include "holext/holo.hpp"
#include "holext/options.hpp"

namespace holext {

/// Positive bound on one boundary circle, as a function of the angle about the
/// circle's center: a constant or a0 + sum_k (a_k cos k t + b_k sin k t).
class BoundFunction {
public:
    BoundFunction() = default;  // constant 1

    static BoundFunction constant(double value);
    /// cos[k] and sin[k] multiply cos(k t) and sin(k t); sin[0] is ignored.
    static BoundFunction trig(std::vector<double> cos, std::vector<double> sin);

    bool is_constant() const { return cos_.size() <= 1 && sin_.size() <= 1; }
    const std::vector<double>& cos_coefficients() const { return cos_; }
    const std::vector<double>& sin_coefficients() const { return sin_; }

    double at_angle(double angle) const;
    double at(const Circle& circle, Complex z) const { return at_angle(circle.angle_of(z)); }

    /// Minimum over `samples` equally spaced angles.
    double sampled_min(std::size_t samples = 4096) const;

private:
    std::vector<double> cos_{1.0};
    std::vector<double> sin_;
};

/// Throws InvalidBound unless the sampled minimum is positive.
void validate(const BoundFunction& bound);

/// Finite interpolation data on one circle.
struct BoundaryConstraint {
    std::vector<Complex> points;
    std::vector<Complex> values;
    BoundFunction bound;
};

/// Extension on the closed unit disc: F = sum_i c_i * disc_peak(zeta_i, n_i),
/// F(zeta_i) = f_i, sampled |F| <= safety * M on the circle.
HoloFunction extend_disc(const BoundaryConstraint& c, const SolverOptions& opts = {});

/// Boundary point at maximal angular distance from `points` (1 when empty).
Complex farthest_free_point(const Circle& circle, const std::vector<Complex>& points);

/// Constraint augmented with one extra point so that its extension cannot be
/// constant; unchanged when the targets already take two distinct values.
BoundaryConstraint nonconstant_augmentation(const Circle& circle, const BoundaryConstraint& c);

HoloFunction extend_disc_nonconstant(const BoundaryConstraint& c, const SolverOptions& opts = {});

struct RegionExtension {
    HoloFunction function;
    int rounds = 0;
};

/// Extension on the disc bounded by `circle` (exterior == false) or on its
/// exterior including infinity, solved on the unit disc through disc_chart.
/// `bound` is evaluated at points of `circle`.
RegionExtension extend_region(const Circle& circle, bool exterior, const std::vector<Complex>& points,
                              const std::vector<Complex>& values, const std::function<double(Complex)>& bound,
                              const SolverOptions& opts = {});

HoloFunction extend_region(const Circle& circle, bool exterior, const BoundaryConstraint& c,
                           const SolverOptions& opts = {});

}  // namespace holext
