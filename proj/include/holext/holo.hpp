#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "holext/geometry.hpp"

namespace holext {

class HoloFunction;

namespace node {

struct Const {
    Complex value;
};

/// sum_k coefficients[k] * (z - center)^k
struct LaurentPoly {
    Complex center;
    std::map<int, Complex> coefficients;
};

/// ((1 + conj(u) * w) / 2)^exponent with w = (z - c)/r and u = (anchor - c)/r.
struct DiscPeak {
    Complex anchor;
    Circle circle;
    std::int64_t exponent = 1;
};

/// (a z + b) / (c z + d)
struct Moebius {
    Complex a, b, c, d;
};

struct Sum {
    std::vector<HoloFunction> terms;
};

struct Product {
    std::vector<HoloFunction> factors;
};

struct Scale {
    Complex factor;
    std::shared_ptr<const HoloFunction> child;
};

/// outer(inner(z))
struct Compose {
    std::shared_ptr<const HoloFunction> outer;
    std::shared_ptr<const HoloFunction> inner;
};

using Node = std::variant<Const, LaurentPoly, DiscPeak, Moebius, Sum, Product, Scale, Compose>;

}  // namespace node

/// Immutable expression tree over holomorphic primitives.
///
/// Copies share structure. The optional region records where the function is
/// meant to be evaluated; `evaluate` rejects points outside its closure.
class HoloFunction {
public:
    HoloFunction();  // Const(0)
    explicit HoloFunction(node::Node n);

    const node::Node& root() const { return *node_; }
    const std::optional<RegionDescriptor>& region() const { return region_; }
    HoloFunction with_region(RegionDescriptor region) const;

    static HoloFunction constant(Complex value);
    static HoloFunction laurent(Complex center, std::map<int, Complex> coefficients);
    static HoloFunction moebius(Complex a, Complex b, Complex c, Complex d);
    static HoloFunction sum(std::vector<HoloFunction> terms);
    static HoloFunction product(std::vector<HoloFunction> factors);
    static HoloFunction scale(Complex factor, const HoloFunction& child);
    static HoloFunction compose(const HoloFunction& outer, const HoloFunction& inner);

private:
    std::shared_ptr<const node::Node> node_;
    std::optional<RegionDescriptor> region_;
};

/// Region-membership tolerance used by `evaluate`.
inline constexpr double kRegionTolerance = 1e-9;
/// Distance to a singularity below which evaluation reports PoleHit.
inline constexpr double kPoleTolerance = 1e-14;

Complex evaluate(const HoloFunction& f, Complex z);

/// Limit of f at the point at infinity; throws PoleHit if it is not finite.
Complex evaluate_at_infinity(const HoloFunction& f);

/// Integer power by repeated squaring.
Complex ipow(Complex base, std::int64_t exponent);

/// Peak function of the closed disc bounded by `c`: 1 at `anchor`, modulus < 1
/// elsewhere on the closed disc.
HoloFunction disc_peak(Complex anchor, const Circle& c, std::int64_t exponent);

/// Peak function for the inner circle |z| = r0 of the standard annulus,
/// q(z) = ((1 + conj(r0/anchor) * (r0/z)) / 2)^n.
HoloFunction annulus_inner_peak(Complex anchor, double r0, std::int64_t exponent);

/// Truncated two-sided coefficient sequence indexed by j in [-J, J].
struct FourierSeq {
    int order = 0;
    std::map<int, Complex> coefficients;

    Complex at(int j) const;
};

using Sampler = std::function<Complex(Complex)>;

/// Laurent coefficients about c.center from n_samples equally spaced values on
/// c; n_samples must be a power of two with n_samples >= 4 * order.
FourierSeq laurent_coeffs(const HoloFunction& f, const Circle& c, int order, std::size_t n_samples);
FourierSeq laurent_coeffs(const Sampler& f, const Circle& c, int order, std::size_t n_samples);

/// Maximum of |f| over sample_boundary(c, n_samples). A lower bound for the
/// true supremum.
double sup_on_circle(const HoloFunction& f, const Circle& c, std::size_t n_samples);

/// Two-radius Laurent consistency certificate on {rho1 <= |z - center| <= rho2}.
///
/// Coefficient j is compared on the scale min(1, rho1^j, rho2^j), the magnitude
/// at which it is actually resolved by samples of modulus O(1). Near zero iff
/// both circles see the same Laurent expansion.
double holomorphy_residual(const HoloFunction& f, Complex center, double rho1, double rho2, int order);
double holomorphy_residual(const Sampler& f, Complex center, double rho1, double rho2, int order);

/// Sample count used by holomorphy_residual.
std::size_t residual_sample_count(int order);

}  // namespace holext
