#pragma once

#include <map>
#include <vector>

#include "holext/geometry.hpp"
#include "holext/holo.hpp"

namespace holext {

struct Atom {
    double angle = 0.0;  ///< in [0, 2*pi)
    Complex weight;
};

/// Complex measure on the circle |z| = radius: point masses plus a density
/// sum_k density[k] e^{ik theta} against the normalized arclength measure.
struct CircleMeasure {
    double radius = 1.0;
    std::vector<Atom> atoms;
    std::map<int, Complex> density;

    /// Sum of atom weight moduli plus density coefficient moduli.
    double total_variation_bound() const;

    CircleMeasure operator+(const CircleMeasure& other) const;
    CircleMeasure operator-(const CircleMeasure& other) const;
};

/// Validates radius and pairwise-distinct atom angles.
void validate(const CircleMeasure& m);

/// Measure on the boundary of {r0 < |z| < 1}.
struct AnnulusMeasure {
    double r0 = 0.5;
    CircleMeasure inner;  ///< on |z| = r0
    CircleMeasure outer;  ///< on |z| = 1
};

void validate(const AnnulusMeasure& m);

/// Exact integral of z^{-j} against m.
Complex fourier_coefficient(const CircleMeasure& m, int j);

/// radius^j times the j-th coefficient: the coefficient on the unit-circle scale,
/// computed without the radius factor.
Complex normalized_coefficient(const CircleMeasure& m, int j);

/// a^{-j} |mu|_ub - |mu_j|; never negative beyond rounding.
double coefficient_bound_margin(const CircleMeasure& m, int j);

/// max over |j| <= order of |mu0_j + mu1_j|.
double riesz_hypothesis_defect(const AnnulusMeasure& m, int order);

/// The four pieces of the annular F. and M. Riesz decomposition.
struct Decomposition {
    int order = 0;
    CircleMeasure lambda0;  ///< on r0 T, analytic part of mu0
    CircleMeasure eta0;     ///< on r0 T, mu0 - lambda0
    CircleMeasure eta1;     ///< on T, anti-analytic part of mu1
    CircleMeasure lambda1;  ///< on T, mu1 - eta1
    double hypothesis_defect = 0.0;
    /// Geometric bound on the series tails dropped at truncation order.
    double tail_bound = 0.0;
};

inline constexpr double kHypothesisTolerance = 1e-9;

Decomposition decompose(const AnnulusMeasure& m, int order, double tolerance = kHypothesisTolerance);

enum class Side { NonNegative, NonPositive };

/// Density witness sum_j seq_j z^j for a one-sided coefficient sequence.
HoloFunction analytic_density(const FourierSeq& seq, Side side);

/// Measure of the closed arc [center - half_width, center + half_width].
Complex arc_variation_probe(const CircleMeasure& m, double center_angle, double half_width);

/// Density-only measure whose coefficients are `seq` (inverse of the
/// coefficient map on trigonometric densities).
CircleMeasure measure_from_coefficients(double radius, const FourierSeq& seq);

}  // namespace holext
