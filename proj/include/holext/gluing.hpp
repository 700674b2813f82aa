#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holext/conformal.hpp"
#include "holext/disc_extension.hpp"
#include "holext/geometry.hpp"
#include "holext/holo.hpp"
#include "holext/options.hpp"

namespace holext {

/// Boundary data per component (0 = outer, then holes) plus puncture targets.
struct ExtensionProblem {
    Domain domain;
    std::vector<BoundaryConstraint> components;
    std::vector<Complex> puncture_values;
};

void validate(const ExtensionProblem& p);

/// Same boundary data on the domain with its punctures removed.
ExtensionProblem without_punctures(const ExtensionProblem& p);

struct GlueMargins {
    double gamma = 0.0;
    double eps = 0.0;
    double delta = 0.0;
};

/// One verification outcome: passed iff value < limit (strict) or value <= limit.
struct Check {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool strict = false;

    bool passed() const { return strict ? value < limit : value <= limit; }
};

struct VerificationAnnulus {
    Complex center;
    double rho1 = 0.0;
    double rho2 = 0.0;
};

struct VerificationReport {
    std::vector<Check> checks;
    /// min over samples of M - |F| per component; absent on the puncture path.
    std::optional<std::vector<double>> bound_margins;
    std::optional<VerificationAnnulus> annulus;
    std::size_t samples = 0;

    bool passed() const;
    const Check* first_failure() const;
};

struct ExtensionResult {
    HoloFunction function;
    GlueMargins margins;
    /// F_j on D_j (glue) or the puncture-free extension (puncture path, one entry).
    std::vector<HoloFunction> components;
    /// h_j (glue) or the Lagrange-corrected H_j (puncture path).
    std::vector<HoloFunction> separators;
    bool punctured = false;
    int solver_rounds = 0;
    VerificationReport report;
};

/// gamma = (1/3) min(min over E of (M - |f|), min of sampled M).
double choose_gamma(const ExtensionProblem& p, std::size_t samples = 4096);

double eps_formula(double sup_component, double gamma, std::size_t k);
double delta_formula(double sup_others, double eps, double gamma, std::size_t k);

/// eps from the sampled sup of the F_j, then OwnTermMarginViolated unless
/// (1+eps)^{k-1}|F_j| < |F_j| + gamma < M - gamma at every sample of each curve.
double choose_eps(const ExtensionProblem& p, const std::vector<HoloFunction>& components, double gamma,
                  std::size_t samples = 4096);

/// delta from the sampled sup of sum_{l != j} |F_l| on curve j, then CrossTermMarginViolated
/// unless delta (1+eps)^{k-2} sum_{l != j} |F_l| < gamma at every sample.
double choose_delta(const ExtensionProblem& p, const std::vector<HoloFunction>& components, double eps,
                    double gamma, std::size_t samples = 4096);

/// Chart of the doubly connected region D_{j,l} onto {r0 < |w| < 1}.
struct PairChart {
    MoebiusMap map;
    double r0 = 0.0;
    bool keep_on_outer = true;  ///< whether curve j lands on |w| = 1
};

PairChart pair_chart(const Domain& d, std::size_t j, std::size_t l);

/// Widest concentric annulus in the closure-free part of the domain, centered at
/// the outer center or a hole center.
std::optional<VerificationAnnulus> find_verification_annulus(const Domain& d);

ExtensionResult glue(const ExtensionProblem& p, const SolverOptions& opts = {});

ExtensionResult interpolate_with_punctures(const ExtensionProblem& p, const SolverOptions& opts = {});

VerificationReport verify_glue(const ExtensionProblem& p, const HoloFunction& f,
                               const std::vector<HoloFunction>& components,
                               const std::vector<HoloFunction>& separators, const GlueMargins& margins,
                               std::size_t samples);

VerificationReport verify_punctured(const ExtensionProblem& p, const HoloFunction& f, std::size_t samples);

/// Tolerances of the end-to-end checks.
inline constexpr double kGlueInterpolationTolerance = 1e-9;
inline constexpr double kGlueHolomorphyTolerance = 1e-8;
inline constexpr double kBoundChainSlack = 1e-9;
inline constexpr double kDegeneratePuncture = 1e-8;
inline constexpr int kResidualOrder = 32;

}  // namespace holext
