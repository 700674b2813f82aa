#include "holext/annulus_extension.hpp"

#include <algorithm>
#include <cmath>

#include "holext/error.hpp"
#include "peak_solver.hpp"

namespace holext {

namespace {

void require_r0(double r0) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0, 1)");
}

Complex snap(Complex z, double radius) { return z * (radius / std::abs(z)); }

void add_sites(detail::PeakProblem& p, const std::vector<Complex>& points, const std::vector<Complex>& values,
               bool inner, double radius) {
    if (points.size() != values.size()) throw Error(ErrorKind::InvalidArgument, "points and values differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::abs(std::abs(points[i]) - radius) > 1e-10) {
            throw Error(ErrorKind::InvalidArgument, "constraint point is not on its annulus circle");
        }
        p.sites.push_back({snap(points[i], radius), inner});
        p.values.push_back(values[i]);
    }
}

}  // namespace

AnnulusExtension solve_annulus(const AnnulusConstraint& c, const SolverOptions& opts) {
    require_r0(c.r0);
    validate(c.outer_bound);
    validate(c.inner_bound);

    detail::PeakProblem p;
    p.r0 = c.r0;
    add_sites(p, c.outer_points, c.outer_values, false, 1.0);
    add_sites(p, c.inner_points, c.inner_values, true, c.r0);
    const Circle inner_circle{0.0, c.r0};
    p.checks.push_back({false, [&](Complex z) { return c.outer_bound.at(unit_circle(), z); }, opts.safety});
    p.checks.push_back({true, [&](Complex z) { return c.inner_bound.at(inner_circle, z); }, opts.safety});

    const detail::PeakSolution sol = detail::solve_peaks(p, opts);
    return {sol.function, sol.rounds};
}

HoloFunction extend_annulus(const AnnulusConstraint& c, const SolverOptions& opts) {
    return solve_annulus(c, opts).function;
}

AnnulusExtension separating_function(double r0, KeepSide side, const std::vector<Complex>& keep,
                                     const std::vector<Complex>& kill, double eps, double delta,
                                     const SolverOptions& opts) {
    require_r0(r0);
    if (!(eps > 0.0) || !(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps and delta must be positive");
    if (keep.empty()) return {HoloFunction::constant(0.0), 0};

    const bool keep_inner = side == KeepSide::Inner;
    const double keep_radius = keep_inner ? r0 : 1.0;
    const double kill_radius = keep_inner ? 1.0 : r0;
    const double keep_bound = 1.0 + eps;
    const double kill_bound = std::min(delta, 1.0 + eps);

    detail::PeakProblem p;
    p.r0 = r0;
    add_sites(p, keep, std::vector<Complex>(keep.size(), Complex{1.0, 0.0}), keep_inner, keep_radius);
    add_sites(p, kill, std::vector<Complex>(kill.size(), Complex{0.0, 0.0}), !keep_inner, kill_radius);
    p.checks.push_back({keep_inner, [=](Complex) { return keep_bound; }, opts.safety});
    p.checks.push_back({!keep_inner, [=](Complex) { return kill_bound; }, opts.safety});
    for (double t : {0.25, 0.5, 0.75}) p.interior_radii.push_back(r0 + t * (1.0 - r0));
    p.interior_limit = keep_bound;

    const detail::PeakSolution sol = detail::solve_peaks(p, opts);
    return {sol.function, sol.rounds};
}

}  // namespace holext
