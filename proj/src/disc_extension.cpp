#include "holext/disc_extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holext/error.hpp"
#include "peak_solver.hpp"

namespace holext {

BoundFunction BoundFunction::constant(double value) {
    BoundFunction b;
    b.cos_ = {value};
    return b;
}

BoundFunction BoundFunction::trig(std::vector<double> cos, std::vector<double> sin) {
    BoundFunction b;
    b.cos_ = std::move(cos);
    b.sin_ = std::move(sin);
    if (b.cos_.empty()) b.cos_.push_back(0.0);
    return b;
}

double BoundFunction::at_angle(double angle) const {
    double v = cos_[0];
    for (std::size_t k = 1; k < cos_.size(); ++k) v += cos_[k] * std::cos(static_cast<double>(k) * angle);
    for (std::size_t k = 1; k < sin_.size(); ++k) v += sin_[k] * std::sin(static_cast<double>(k) * angle);
    return v;
}

double BoundFunction::sampled_min(std::size_t samples) const {
    double best = at_angle(0.0);
    for (std::size_t m = 1; m < samples; ++m) {
        best = std::min(best, at_angle(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples)));
    }
    return best;
}

void validate(const BoundFunction& bound) {
    for (double c : bound.cos_coefficients()) {
        if (!std::isfinite(c)) throw Error(ErrorKind::InvalidBound, "non-finite bound coefficient");
    }
    for (double s : bound.sin_coefficients()) {
        if (!std::isfinite(s)) throw Error(ErrorKind::InvalidBound, "non-finite bound coefficient");
    }
    if (!(bound.sampled_min() > 0.0)) throw Error(ErrorKind::InvalidBound, "bound must be positive on the circle");
}

namespace {

void check_on_circle(const Circle& circle, const std::vector<Complex>& points) {
    for (const auto& z : points) {
        if (std::abs(std::abs(z - circle.center) - circle.radius) > 1e-10 * std::max(1.0, circle.radius)) {
            throw Error(ErrorKind::InvalidArgument, "constraint point is not on the boundary circle");
        }
    }
}

/// Point on the unit circle in the direction of z.
Complex snap_unit(Complex w) { return w / std::abs(w); }

}  // namespace

RegionExtension extend_region(const Circle& circle, bool exterior, const std::vector<Complex>& points,
                              const std::vector<Complex>& values, const std::function<double(Complex)>& bound,
                              const SolverOptions& opts) {
    if (points.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "points and values differ in length");
    check_on_circle(circle, points);
    const MoebiusMap chart = disc_chart(circle, exterior);

    detail::PeakProblem problem;
    for (std::size_t i = 0; i < points.size(); ++i) {
        problem.sites.push_back({snap_unit(chart(points[i])), false});
        problem.values.push_back(values[i]);
    }
    problem.checks.push_back({false, [&](Complex w) { return bound(chart.invert(w)); }, opts.safety});

    const detail::PeakSolution sol = detail::solve_peaks(problem, opts);
    RegionExtension out;
    out.rounds = sol.rounds;
    if (points.empty()) {
        out.function = HoloFunction::constant(0.0);
    } else if (!exterior && circle == unit_circle()) {
        out.function = sol.function;
    } else {
        out.function = HoloFunction::compose(sol.function, chart.as_function());
    }
    return out;
}

HoloFunction extend_region(const Circle& circle, bool exterior, const BoundaryConstraint& c,
                           const SolverOptions& opts) {
    validate(c.bound);
    const BoundFunction& m = c.bound;
    return extend_region(circle, exterior, c.points, c.values, [&](Complex z) { return m.at(circle, z); }, opts)
        .function;
}

HoloFunction extend_disc(const BoundaryConstraint& c, const SolverOptions& opts) {
    return extend_region(unit_circle(), false, c, opts);
}

Complex farthest_free_point(const Circle& circle, const std::vector<Complex>& points) {
    if (points.empty()) return circle.point_at(0.0);
    std::vector<double> angles;
    for (const auto& z : points) {
        double a = circle.angle_of(z);
        if (a < 0.0) a += 2.0 * std::numbers::pi;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    double best_gap = -1.0;
    double best_mid = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
        const double gap = next - angles[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_mid = angles[i] + 0.5 * gap;
        }
    }
    return circle.point_at(best_mid);
}

BoundaryConstraint nonconstant_augmentation(const Circle& circle, const BoundaryConstraint& c) {
    if (c.points.size() != c.values.size()) throw Error(ErrorKind::InvalidArgument, "points and values differ in length");
    for (std::size_t i = 1; i < c.values.size(); ++i) {
        if (c.values[i] != c.values[0]) return c;
    }
    const Complex p = farthest_free_point(circle, c.points);
    const double half = 0.5 * c.bound.at(circle, p);
    Complex w;
    if (c.values.empty()) {
        w = Complex{0.0, half};
    } else if (c.values[0] == Complex{0.0, 0.0}) {
        w = Complex{half, 0.0};
    } else {
        w = Complex{0.0, 0.0};
    }
    BoundaryConstraint out = c;
    out.points.push_back(p);
    out.values.push_back(w);
    return out;
}

HoloFunction extend_disc_nonconstant(const BoundaryConstraint& c, const SolverOptions& opts) {
    return extend_disc(nonconstant_augmentation(unit_circle(), c), opts);
}

}  // namespace holext
