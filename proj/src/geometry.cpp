#include "holext/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "holext/error.hpp"

namespace holext {

Complex Circle::point_at(double angle) const {
    return center + std::polar(radius, angle);
}

double Circle::angle_of(Complex z) const {
    return std::arg(z - center);
}

Circle unit_circle() { return Circle{}; }

Complex unit_root(long long k, long long n) {
    k %= n;
    if (k < 0) k += n;
    if ((4 * k) % n == 0) {
        switch ((4 * k) / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

namespace {

void require_circle(const Circle& c, const char* what) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(c.center.real()) ||
        !std::isfinite(c.center.imag())) {
        throw Error(ErrorKind::InvalidCircle, std::string(what) + " must have a finite positive radius");
    }
}

}  // namespace

const Circle& Domain::component(std::size_t index) const {
    if (index == 0) return outer_;
    if (index - 1 >= holes_.size()) {
        throw Error(ErrorKind::InvalidRegionRef, "component index " + std::to_string(index) + " out of range");
    }
    return holes_[index - 1];
}

bool Domain::contains_closure(Complex z, double tol) const {
    if (std::abs(z - outer_.center) > outer_.radius + tol) return false;
    for (const auto& h : holes_) {
        if (std::abs(z - h.center) < h.radius - tol) return false;
    }
    return true;
}

Domain build_domain(const Circle& outer, std::vector<Circle> holes, std::vector<Complex> punctures) {
    require_circle(outer, "outer circle");
    for (const auto& h : holes) require_circle(h, "hole");

    for (std::size_t i = 0; i < holes.size(); ++i) {
        const auto& h = holes[i];
        if (std::abs(h.center - outer.center) + h.radius > outer.radius - kContainmentGap) {
            throw Error(ErrorKind::NestedHoleViolation,
                        "hole " + std::to_string(i) + " is not strictly inside the outer circle");
        }
    }
    for (std::size_t i = 0; i < holes.size(); ++i) {
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            if (std::abs(holes[i].center - holes[j].center) < holes[i].radius + holes[j].radius + kContainmentGap) {
                throw Error(ErrorKind::OverlappingHoles,
                            "holes " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
            }
        }
    }
    for (std::size_t i = 0; i < punctures.size(); ++i) {
        const Complex p = punctures[i];
        bool inside = std::abs(p - outer.center) < outer.radius - kContainmentGap;
        for (const auto& h : holes) {
            inside = inside && std::abs(p - h.center) > h.radius + kContainmentGap;
        }
        if (!inside) {
            throw Error(ErrorKind::PunctureOutsideDomain, "puncture " + std::to_string(i) + " is not in the domain");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(p - punctures[j]) <= kContainmentGap) {
                throw Error(ErrorKind::DuplicatePuncture,
                            "punctures " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
            }
        }
    }

    Domain d;
    d.outer_ = outer;
    d.holes_ = std::move(holes);
    d.punctures_ = std::move(punctures);
    return d;
}

bool RegionDescriptor::contains(Complex z, double tol) const {
    for (const auto& b : bounds) {
        const double r = std::abs(z - b.circle.center);
        if (b.inside ? r > b.circle.radius + tol : r < b.circle.radius - tol) return false;
    }
    return true;
}

RegionDescriptor derived_region(const Domain& domain, const RegionRef& ref) {
    const std::size_t k = domain.curve_count();
    auto bound_for = [&](std::size_t index) {
        if (index >= k) {
            throw Error(ErrorKind::InvalidRegionRef, "component index " + std::to_string(index) + " out of range");
        }
        // Omega lies inside the outer circle and outside every hole.
        return RegionBound{domain.component(index), index == 0};
    };

    RegionDescriptor out;
    if (const auto* s = std::get_if<SimplyConnected>(&ref)) {
        out.bounds.push_back(bound_for(s->component));
        out.contains_infinity = s->component != 0;
    } else if (const auto* d = std::get_if<DoublyConnected>(&ref)) {
        if (d->first == d->second) {
            throw Error(ErrorKind::InvalidRegionRef, "doubly connected region needs two distinct components");
        }
        out.bounds.push_back(bound_for(d->first));
        out.bounds.push_back(bound_for(d->second));
        out.contains_infinity = d->first != 0 && d->second != 0;
    } else {
        for (std::size_t i = 0; i < k; ++i) out.bounds.push_back(bound_for(i));
        out.contains_infinity = false;
    }
    return out;
}

std::vector<Complex> sample_boundary(const Circle& c, std::size_t n) {
    std::vector<Complex> pts;
    pts.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        pts.push_back(c.center + c.radius * unit_root(static_cast<long long>(m), static_cast<long long>(n)));
    }
    return pts;
}

}  // namespace holext
