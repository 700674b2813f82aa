#include "holext/conformal.hpp"

#include <cmath>
#include <string>

#include "holext/error.hpp"

namespace holext {

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    if (std::abs(a * d - b * c) == 0.0) throw Error(ErrorKind::InvalidArgument, "degenerate Moebius map");
}

std::optional<Complex> MoebiusMap::forward(std::optional<Complex> z) const {
    if (!z) {
        if (c_ == Complex{0.0, 0.0}) return std::nullopt;
        return a_ / c_;
    }
    const Complex den = c_ * *z + d_;
    if (std::abs(den) < kPoleTolerance) return std::nullopt;
    return (a_ * *z + b_) / den;
}

std::optional<Complex> MoebiusMap::inverse(std::optional<Complex> w) const {
    return inverse_map().forward(w);
}

Complex MoebiusMap::operator()(Complex z) const {
    auto w = forward(z);
    if (!w) throw Error(ErrorKind::PoleHit, "Moebius pole");
    return *w;
}

Complex MoebiusMap::invert(Complex w) const {
    auto z = inverse(w);
    if (!z) throw Error(ErrorKind::PoleHit, "Moebius pole");
    return *z;
}

MoebiusMap MoebiusMap::inverse_map() const { return {d_, -b_, -c_, a_}; }

MoebiusMap MoebiusMap::after(const MoebiusMap& first) const {
    return {a_ * first.a_ + b_ * first.c_, a_ * first.b_ + b_ * first.d_, c_ * first.a_ + d_ * first.c_,
            c_ * first.b_ + d_ * first.d_};
}

Circle MoebiusMap::image(const Circle& circle) const {
    if (c_ == Complex{0.0, 0.0}) {
        const Complex k = a_ / d_;
        return {k * circle.center + b_ / d_, std::abs(k) * circle.radius};
    }
    // w = a/c - (det/c^2) / (z + d/c)
    const Complex det = a_ * d_ - b_ * c_;
    const Complex v = circle.center + d_ / c_;
    const double s = circle.radius;
    const double denom = std::norm(v) - s * s;
    if (std::abs(denom) < kPoleTolerance) {
        throw Error(ErrorKind::PoleHit, "circle passes through the Moebius pole");
    }
    const Complex inv_center = std::conj(v) / denom;
    const double inv_radius = s / std::abs(denom);
    const Complex k = -det / (c_ * c_);
    return {a_ / c_ + k * inv_center, std::abs(k) * inv_radius};
}

HoloFunction MoebiusMap::as_function() const { return HoloFunction::moebius(a_, b_, c_, d_); }

MoebiusMap disc_chart(const Circle& circle, bool exterior) {
    if (!(circle.radius > 0.0)) throw Error(ErrorKind::UnsupportedRegion, "circle radius must be positive");
    if (exterior) return {0.0, circle.radius, 1.0, -circle.center};
    return {1.0, -circle.center, 0.0, circle.radius};
}

namespace {

constexpr double kConcentricTolerance = 1e-15;

void require_nested(const Circle& outer, const Circle& inner) {
    if (!(outer.radius > 0.0) || !(inner.radius > 0.0) ||
        std::abs(inner.center - outer.center) + inner.radius > outer.radius - kContainmentGap) {
        throw Error(ErrorKind::NotNested, "inner circle is not strictly inside the outer circle");
    }
}

void check_boundary_correspondence(const AnnulusChart& chart) {
    constexpr std::size_t kSamples = 512;
    double worst = 0.0;
    for (const auto& z : sample_boundary(chart.source_outer, kSamples)) {
        worst = std::max(worst, std::abs(std::abs(chart.map(z)) - 1.0));
    }
    for (const auto& z : sample_boundary(chart.source_inner, kSamples)) {
        worst = std::max(worst, std::abs(std::abs(chart.map(z)) - chart.r0));
    }
    if (!(worst < 1e-10)) {
        throw Error(ErrorKind::NotNested, "annulus chart failed its boundary check (" + std::to_string(worst) + ")");
    }
}

}  // namespace

AnnulusChart annulus_chart(const Circle& outer, const Circle& inner) {
    require_nested(outer, inner);

    // Normalize the outer circle to the unit circle.
    const MoebiusMap normalize{1.0, -outer.center, 0.0, outer.radius};
    const Complex u = (inner.center - outer.center) / outer.radius;
    const double rho = inner.radius / outer.radius;
    const double dist = std::abs(u);

    AnnulusChart chart;
    chart.source_outer = outer;
    chart.source_inner = inner;
    if (dist <= kConcentricTolerance) {
        chart.map = normalize;
        chart.r0 = rho;
        check_boundary_correspondence(chart);
        return chart;
    }

    // Rotate the inner center onto the positive real axis.
    const Complex rot = std::conj(u) / dist;
    const MoebiusMap rotate{rot, 0.0, 0.0, 1.0};

    // Symmetric pair: c x^2 - (1 + c^2 - rho^2) x + c = 0, root inside the disc.
    const double c = dist;
    const double p = 1.0 + c * c - rho * rho;
    const double disc = p * p - 4.0 * c * c;
    const double x1 = 2.0 * c / (p + std::sqrt(std::max(disc, 0.0)));
    const MoebiusMap t{1.0, -x1, -x1, 1.0};

    chart.map = t.after(rotate.after(normalize));
    chart.r0 = std::abs(t(Complex{c - rho, 0.0}));
    check_boundary_correspondence(chart);
    return chart;
}

double modulus(const Circle& outer, const Circle& inner) { return annulus_chart(outer, inner).r0; }

}  // namespace holext
