#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "holext/holo.hpp"
#include "holext/options.hpp"

namespace holext::detail {

/// Interpolation node on |z| = 1 (outer) or |z| = r0 (inner).
struct PeakSite {
    Complex point;
    bool inner = false;
};

/// Sampled bound enforced on one of the basis circles.
struct CircleCheck {
    bool inner = false;
    std::function<double(Complex)> bound;
    double safety = 0.95;
};

struct PeakProblem {
    double r0 = 0.0;  ///< 0 when only the unit circle is involved
    std::vector<PeakSite> sites;
    std::vector<Complex> values;
    std::vector<CircleCheck> checks;
    /// Optional sup bound on intermediate circles |z| = t.
    std::vector<double> interior_radii;
    double interior_limit = 0.0;
};

struct PeakSolution {
    HoloFunction function;
    std::vector<Complex> coefficients;
    std::vector<std::int64_t> exponents;
    int rounds = 0;
};

/// Linear combination of peak functions interpolating `values` at `sites`
/// under the sampled bounds of `checks`. Exponents start from the cross-peak
/// budget and double until every check passes.
PeakSolution solve_peaks(const PeakProblem& problem, const SolverOptions& opts);

/// Safety actually enforced on a circle: opts.safety, raised halfway to 1 when
/// a target sits closer to the bound than opts.safety allows.
double effective_safety(double safety, double worst_ratio);

}  // namespace holext::detail
