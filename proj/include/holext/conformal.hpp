#pragma once

#include <optional>

#include "holext/geometry.hpp"
#include "holext/holo.hpp"

namespace holext {

/// w = (a z + b) / (c z + d) with ad - bc != 0.
class MoebiusMap {
public:
    MoebiusMap() = default;  // identity
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {}; }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    /// Image of z; nullopt stands for the point at infinity.
    std::optional<Complex> forward(std::optional<Complex> z) const;
    std::optional<Complex> inverse(std::optional<Complex> w) const;

    /// Finite-valued convenience overloads; throw PoleHit at the pole.
    Complex operator()(Complex z) const;
    Complex invert(Complex w) const;

    MoebiusMap inverse_map() const;
    /// (*this) after `first`, i.e. z -> this(first(z)).
    MoebiusMap after(const MoebiusMap& first) const;

    /// Image of a circle that does not pass through the pole.
    Circle image(const Circle& circle) const;

    HoloFunction as_function() const;

private:
    Complex a_{1.0, 0.0}, b_{0.0, 0.0}, c_{0.0, 0.0}, d_{1.0, 0.0};
};

/// Chart of the region between two nested circles onto {r0 < |w| < 1}.
struct AnnulusChart {
    MoebiusMap map;
    double r0 = 0.0;
    Circle source_outer;  ///< sent to |w| = 1
    Circle source_inner;  ///< sent to |w| = r0
};

/// Chart of a one-circle region onto the unit disc: interior via w = (z - c)/r,
/// exterior (containing infinity) via w = r/(z - c).
MoebiusMap disc_chart(const Circle& circle, bool exterior);

/// Standard-annulus chart via the common symmetric points of the two circles.
AnnulusChart annulus_chart(const Circle& outer, const Circle& inner);

/// Conformal modulus r0 of the region between the circles.
double modulus(const Circle& outer, const Circle& inner);

}  // namespace holext
