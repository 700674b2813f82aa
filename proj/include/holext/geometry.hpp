#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace holext {

using Complex = std::complex<double>;

/// Minimum gap between circles of a valid domain.
inline constexpr double kContainmentGap = 1e-9;

struct Circle {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    Complex point_at(double angle) const;
    double angle_of(Complex z) const;

    friend bool operator==(const Circle&, const Circle&) = default;
};

Circle unit_circle();

/// exp(2*pi*i*k/n), exact at the quarter turns.
Complex unit_root(long long k, long long n);

/// Circle-bounded multiply connected domain: the open disc of `outer` minus the
/// closed discs of `holes`, minus `punctures`.
///
/// Boundary components are numbered 0 (outer) and 1..holes.size() (holes).
class Domain {
public:
    const Circle& outer() const { return outer_; }
    const std::vector<Circle>& holes() const { return holes_; }
    const std::vector<Complex>& punctures() const { return punctures_; }

    /// Number of boundary curves (k).
    std::size_t curve_count() const { return 1 + holes_.size(); }
    std::size_t puncture_count() const { return punctures_.size(); }
    const Circle& component(std::size_t index) const;

    /// True when z lies in the closure of the circle-bounded region (punctures
    /// are not excluded).
    bool contains_closure(Complex z, double tol = 1e-9) const;

    friend Domain build_domain(const Circle& outer, std::vector<Circle> holes,
                               std::vector<Complex> punctures);

private:
    Circle outer_;
    std::vector<Circle> holes_;
    std::vector<Complex> punctures_;
};

Domain build_domain(const Circle& outer, std::vector<Circle> holes = {},
                    std::vector<Complex> punctures = {});

struct SimplyConnected {
    std::size_t component;
};
struct DoublyConnected {
    std::size_t first;
    std::size_t second;
};
struct FullRegion {};

using RegionRef = std::variant<SimplyConnected, DoublyConnected, FullRegion>;

/// One bounding circle of a region; the region lies inside or outside it.
struct RegionBound {
    Circle circle;
    bool inside = true;
};

/// Region in the Riemann sphere cut out by circles.
struct RegionDescriptor {
    std::vector<RegionBound> bounds;
    bool contains_infinity = false;

    bool contains(Complex z, double tol = 0.0) const;
};

RegionDescriptor derived_region(const Domain& domain, const RegionRef& ref);

/// n equally spaced points center + radius * exp(2*pi*i*m/n), m = 0..n-1.
std::vector<Complex> sample_boundary(const Circle& c, std::size_t n);

}  // namespace holext
