#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holext/conformal.hpp"
#include "holext/error.hpp"

using namespace holext;

namespace {

/// Modulus from the inversive distance of the two circles, which is a Moebius
/// invariant equal to (1 + r0^2) / (2 r0) for the standard annulus.
double inversive_modulus(const Circle& outer, const Circle& inner) {
    const double d = std::abs(outer.center - inner.center);
    const double R = outer.radius, r = inner.radius;
    const double delta = (R * R + r * r - d * d) / (2.0 * R * r);
    return delta - std::sqrt(delta * delta - 1.0);
}

}  // namespace

TEST_SUITE("conformal") {

TEST_CASE("disc_chart") {
    const MoebiusMap id = disc_chart(unit_circle(), false);
    CHECK(id(Complex(0.3, -0.2)) == Complex(0.3, -0.2));

    const MoebiusMap ext = disc_chart(Circle{0.3, 0.3}, true);
    CHECK(std::abs(ext(0.6) - 1.0) < 1e-15);
    const auto at_inf = ext.forward(std::nullopt);
    REQUIRE(at_inf.has_value());
    CHECK(std::abs(*at_inf) < 1e-15);
    CHECK_FALSE(ext.forward(Complex(0.3)).has_value());

    const Circle c{{1.0, 2.0}, 0.5};
    for (bool exterior : {false, true}) {
        const MoebiusMap m = disc_chart(c, exterior);
        for (const auto& z : sample_boundary(c, 64)) CHECK(std::abs(std::abs(m(z)) - 1.0) < 1e-14);
    }
}

TEST_CASE("annulus_chart examples") {
    const AnnulusChart conc = annulus_chart(unit_circle(), Circle{0.0, 0.4});
    CHECK(conc.r0 == doctest::Approx(0.4).epsilon(1e-15));
    const Complex z(0.5, 0.3);
    CHECK(std::abs(conc.map(z) - z) < 1e-15);

    const AnnulusChart ch = annulus_chart(unit_circle(), Circle{0.3, 0.3});
    CHECK(std::abs(ch.r0 - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(ch.map(0.0) - Complex(-1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(ch.map(0.6) - Complex(1.0 / 3.0)) < 1e-12);
    for (const Complex w : {Complex(0.2, 0.7), Complex(-0.5, -0.1)}) {
        CHECK(std::abs(ch.map(w) - (w - 1.0 / 3.0) / (1.0 - w / 3.0)) < 1e-12);
    }

    CHECK(std::abs(modulus(Circle{5.0, 2.0}, Circle{5.0, 1.0}) - 0.5) < 1e-12);
    CHECK(std::abs(modulus(unit_circle(), Circle{0.0, 0.4}) - 0.4) < 1e-15);
}

TEST_CASE("annulus_chart rejects non-nested circles") {
    for (const Circle inner : {Circle{0.5, 0.6}, Circle{3.0, 0.5}, Circle{0.0, 1.0}}) {
        try {
            annulus_chart(unit_circle(), inner);
            FAIL("expected NotNested");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotNested);
        }
    }
}

TEST_CASE("modulus invariant under rotation and similarity") {
    const Circle outer{{0.2, -0.1}, 1.3}, inner{{0.5, 0.3}, 0.4};
    const double r0 = modulus(outer, inner);
    CHECK(std::abs(r0 - inversive_modulus(outer, inner)) < 1e-12);
    const Complex rot = std::polar(1.0, 2.1);
    CHECK(std::abs(modulus(Circle{rot * outer.center, 1.3}, Circle{rot * inner.center, 0.4}) - r0) < 1e-12);
    const Complex s(1.7, -0.4), t(-3.0, 5.0);
    CHECK(std::abs(modulus(Circle{s * outer.center + t, std::abs(s) * 1.3}, Circle{s * inner.center + t, std::abs(s) * 0.4}) - r0) <
          1e-12);
}

TEST_CASE("boundary correspondence and group laws") {
    const Circle outer{{1.0, 1.0}, 2.0}, inner{{0.2, 1.5}, 0.7};
    const AnnulusChart ch = annulus_chart(outer, inner);
    CHECK(ch.source_outer == outer);
    CHECK(ch.source_inner == inner);
    for (const auto& z : sample_boundary(outer, 512)) CHECK(std::abs(std::abs(ch.map(z)) - 1.0) < 1e-10);
    for (const auto& z : sample_boundary(inner, 512)) CHECK(std::abs(std::abs(ch.map(z)) - ch.r0) < 1e-10);

    const MoebiusMap back = ch.map.inverse_map();
    const MoebiusMap id = back.after(ch.map);
    for (const auto& z : sample_boundary(Circle{{1.0, 0.5}, 1.1}, 512)) {
        CHECK(std::abs(id(z) - z) < 1e-11);
        CHECK(std::abs(ch.map.invert(ch.map(z)) - z) < 1e-11);
    }

    const Circle img = ch.map.image(inner);
    CHECK(std::abs(img.center) < 1e-12);
    CHECK(std::abs(img.radius - ch.r0) < 1e-12);
}

TEST_CASE("chart is holomorphic on a sub-annulus") {
    const AnnulusChart ch = annulus_chart(unit_circle(), Circle{0.0, 0.3});
    CHECK(holomorphy_residual(ch.map.as_function(), 0.0, 0.4, 0.9, 32) < 1e-10);
    const AnnulusChart off = annulus_chart(unit_circle(), Circle{0.3, 0.3});
    // The chart's pole 3 lies outside; sample on a ring around the hole.
    CHECK(holomorphy_residual(off.map.as_function(), 0.3, 0.35, 0.65, 32) < 1e-10);
}

}
