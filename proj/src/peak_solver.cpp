#include "peak_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "holext/error.hpp"

namespace holext {

void validate(const SolverOptions& opts) {
    if (opts.max_rounds < 1) throw Error(ErrorKind::InvalidArgument, "max_rounds must be positive");
    if (!(opts.safety > 0.0 && opts.safety < 1.0)) throw Error(ErrorKind::InvalidArgument, "safety must lie in (0, 1)");
    if (opts.boundary_samples < 8) throw Error(ErrorKind::InvalidArgument, "need at least 8 boundary samples");
    if (!(opts.cross_budget > 0.0 && opts.cross_budget < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "cross_budget must lie in (0, 1)");
    }
    if (opts.max_retries < 1) throw Error(ErrorKind::InvalidArgument, "max_retries must be positive");
}

}  // namespace holext

namespace holext::detail {

namespace {

constexpr double kInterpolationTolerance = 1e-10;
constexpr double kMinSeparation = 1e-9;

/// Unit-circle anchor of the peak attached to a site, in its own coordinate.
Complex peak_anchor(const PeakSite& s, double r0) {
    if (!s.inner) return s.point;
    Complex u = r0 / s.point;
    return u / std::abs(u);
}

/// The peak's un-powered base (1 + conj(u) w)/2 evaluated at z.
Complex peak_base(const PeakSite& s, double r0, Complex z) {
    const Complex w = s.inner ? r0 / z : z;
    return (1.0 + std::conj(peak_anchor(s, r0)) * w) * 0.5;
}

HoloFunction peak_function(const PeakSite& s, double r0, std::int64_t n) {
    return s.inner ? annulus_inner_peak(s.point, r0, n) : disc_peak(s.point, unit_circle(), n);
}

std::int64_t exponent_for(double decay, double budget) {
    if (decay <= 0.0) return 1;
    const double n = std::ceil(std::log(budget) / std::log(decay));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

}  // namespace

double effective_safety(double safety, double worst_ratio) {
    return std::max(safety, 0.5 * (1.0 + worst_ratio));
}

PeakSolution solve_peaks(const PeakProblem& problem, const SolverOptions& opts) {
    validate(opts);
    const std::size_t m = problem.sites.size();
    if (problem.values.size() != m) throw Error(ErrorKind::InvalidArgument, "sites and values differ in length");
    const double r0 = problem.r0;

    auto check_for = [&](bool inner) -> const CircleCheck* {
        for (const auto& c : problem.checks) {
            if (c.inner == inner) return &c;
        }
        return nullptr;
    };

    // Feasibility, separation, and the safety actually enforced per circle.
    std::vector<double> safety(problem.checks.size());
    for (std::size_t ci = 0; ci < problem.checks.size(); ++ci) {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (problem.sites[i].inner != problem.checks[ci].inner) continue;
            const double bound = problem.checks[ci].bound(problem.sites[i].point);
            const double mag = std::abs(problem.values[i]);
            if (!(mag < bound)) {
                throw Error(ErrorKind::InfeasibleBound, "target modulus " + std::to_string(mag) +
                                                            " is not below the bound " + std::to_string(bound));
            }
            worst = std::max(worst, mag / bound);
        }
        safety[ci] = effective_safety(problem.checks[ci].safety, worst);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!check_for(problem.sites[i].inner)) {
            throw Error(ErrorKind::InvalidArgument, "interpolation site on a circle without a bound");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (problem.sites[i].inner == problem.sites[j].inner &&
                std::abs(problem.sites[i].point - problem.sites[j].point) <= kMinSeparation) {
                throw Error(ErrorKind::PointsTooClose, "constraint points " + std::to_string(j) + " and " +
                                                           std::to_string(i) + " coincide");
            }
        }
    }

    PeakSolution out;
    if (m == 0) {
        out.function = HoloFunction::constant(0.0);
        return out;
    }

    // Initial exponents: every cross-peak value, and the leakage onto the other
    // circle of an annulus, within cross_budget / m.
    const double budget = opts.cross_budget / static_cast<double>(m);
    out.exponents.assign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        double decay = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i) decay = std::max(decay, std::abs(peak_base(problem.sites[i], r0, problem.sites[j].point)));
        }
        if (r0 > 0.0 && check_for(!problem.sites[i].inner)) decay = std::max(decay, 0.5 * (1.0 + r0));
        out.exponents[i] = exponent_for(decay, budget);
    }

    std::vector<std::vector<Complex>> samples(problem.checks.size());
    std::vector<std::vector<double>> bounds(problem.checks.size());
    for (std::size_t ci = 0; ci < problem.checks.size(); ++ci) {
        const double radius = problem.checks[ci].inner ? r0 : 1.0;
        samples[ci] = sample_boundary(Circle{0.0, radius}, opts.boundary_samples);
        for (const auto& z : samples[ci]) bounds[ci].push_back(problem.checks[ci].bound(z));
    }

    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) rhs(static_cast<Eigen::Index>(i)) = problem.values[i];

    for (int round = 1; round <= opts.max_rounds; ++round) {
        Eigen::MatrixXcd system(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                system(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    i == j ? Complex{1.0, 0.0}
                           : ipow(peak_base(problem.sites[j], r0, problem.sites[i].point), out.exponents[j]);
            }
        }
        const Eigen::VectorXcd coeffs = system.partialPivLu().solve(rhs);

        std::vector<HoloFunction> terms;
        terms.reserve(m);
        out.coefficients.assign(m, Complex{});
        for (std::size_t j = 0; j < m; ++j) {
            out.coefficients[j] = coeffs(static_cast<Eigen::Index>(j));
            terms.push_back(HoloFunction::scale(out.coefficients[j],
                                                peak_function(problem.sites[j], r0, out.exponents[j])));
        }
        HoloFunction f = HoloFunction::sum(std::move(terms));
        out.rounds = round;

        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            ok = std::abs(evaluate(f, problem.sites[i].point) - problem.values[i]) <= kInterpolationTolerance;
        }
        for (std::size_t ci = 0; ci < problem.checks.size() && ok; ++ci) {
            for (std::size_t s = 0; s < samples[ci].size() && ok; ++s) {
                ok = std::abs(evaluate(f, samples[ci][s])) <= safety[ci] * bounds[ci][s];
            }
        }
        for (double t : problem.interior_radii) {
            if (!ok) break;
            ok = sup_on_circle(f, Circle{0.0, t}, opts.boundary_samples) <= problem.interior_limit;
        }
        if (ok) {
            out.function = std::move(f);
            return out;
        }
        for (auto& n : out.exponents) {
            if (n > std::numeric_limits<std::int64_t>::max() / 2) {
                throw Error(ErrorKind::BoundViolatedAfterMaxRounds, "peak exponent overflow");
            }
            n *= 2;
        }
    }
    throw Error(ErrorKind::BoundViolatedAfterMaxRounds,
                "sampled bound still violated after " + std::to_string(opts.max_rounds) + " rounds");
}

}  // namespace holext::detail
