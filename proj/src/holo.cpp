#include "holext/holo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holext/error.hpp"

namespace holext {

HoloFunction::HoloFunction() : HoloFunction(node::Const{Complex{0.0, 0.0}}) {}

HoloFunction::HoloFunction(node::Node n) : node_(std::make_shared<const node::Node>(std::move(n))) {}

HoloFunction HoloFunction::with_region(RegionDescriptor region) const {
    HoloFunction out = *this;
    out.region_ = std::move(region);
    return out;
}

HoloFunction HoloFunction::constant(Complex value) { return HoloFunction(node::Const{value}); }

HoloFunction HoloFunction::laurent(Complex center, std::map<int, Complex> coefficients) {
    return HoloFunction(node::LaurentPoly{center, std::move(coefficients)});
}

HoloFunction HoloFunction::moebius(Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "Moebius map with ad - bc = 0");
    }
    return HoloFunction(node::Moebius{a, b, c, d});
}

HoloFunction HoloFunction::sum(std::vector<HoloFunction> terms) {
    return HoloFunction(node::Sum{std::move(terms)});
}

HoloFunction HoloFunction::product(std::vector<HoloFunction> factors) {
    return HoloFunction(node::Product{std::move(factors)});
}

HoloFunction HoloFunction::scale(Complex factor, const HoloFunction& child) {
    return HoloFunction(node::Scale{factor, std::make_shared<const HoloFunction>(child)});
}

HoloFunction HoloFunction::compose(const HoloFunction& outer, const HoloFunction& inner) {
    return HoloFunction(node::Compose{std::make_shared<const HoloFunction>(outer),
                                      std::make_shared<const HoloFunction>(inner)});
}

Complex ipow(Complex base, std::int64_t exponent) {
    if (exponent < 0) return Complex{1.0, 0.0} / ipow(base, -exponent);
    Complex result{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

namespace {

// Points of the Riemann sphere; nullopt stands for infinity (or a pole).
using Ext = std::optional<Complex>;

Ext eval_node(const HoloFunction& f, Ext z);

struct Evaluator {
    Ext z;

    Ext operator()(const node::Const& n) const { return n.value; }

    Ext operator()(const node::LaurentPoly& n) const {
        if (n.coefficients.empty()) return Complex{0.0, 0.0};
        const int lo = n.coefficients.begin()->first;
        const int hi = n.coefficients.rbegin()->first;
        if (!z) {
            for (const auto& [k, a] : n.coefficients) {
                if (k > 0 && a != Complex{0.0, 0.0}) return std::nullopt;
            }
            auto it = n.coefficients.find(0);
            return it == n.coefficients.end() ? Complex{0.0, 0.0} : it->second;
        }
        const Complex w = *z - n.center;
        if (lo < 0 && std::abs(w) < kPoleTolerance) return std::nullopt;
        Complex acc{0.0, 0.0};
        if (hi >= 0) {
            // Horner over non-negative indices.
            for (int k = hi; k >= 0; --k) {
                auto it = n.coefficients.find(k);
                acc = acc * w + (it == n.coefficients.end() ? Complex{} : it->second);
            }
        }
        if (lo < 0) {
            const Complex inv = Complex{1.0, 0.0} / w;
            Complex neg{0.0, 0.0};
            for (int k = lo; k <= -1; ++k) {
                auto it = n.coefficients.find(k);
                neg = neg * inv + (it == n.coefficients.end() ? Complex{} : it->second);
            }
            acc += neg * inv;
        }
        return acc;
    }

    Ext operator()(const node::DiscPeak& n) const {
        if (!z) return std::nullopt;
        const Complex u = (n.anchor - n.circle.center) / n.circle.radius;
        const Complex w = (*z - n.circle.center) / n.circle.radius;
        return ipow((1.0 + std::conj(u) * w) * 0.5, n.exponent);
    }

    Ext operator()(const node::Moebius& n) const {
        if (!z) {
            if (n.c == Complex{0.0, 0.0}) return std::nullopt;
            return n.a / n.c;
        }
        const Complex den = n.c * *z + n.d;
        if (std::abs(den) < kPoleTolerance) return std::nullopt;
        return (n.a * *z + n.b) / den;
    }

    Ext operator()(const node::Sum& n) const {
        Complex acc{0.0, 0.0};
        for (const auto& t : n.terms) {
            const Ext v = eval_node(t, z);
            if (!v) return std::nullopt;
            acc += *v;
        }
        return acc;
    }

    Ext operator()(const node::Product& n) const {
        Complex acc{1.0, 0.0};
        for (const auto& t : n.factors) {
            const Ext v = eval_node(t, z);
            if (!v) return std::nullopt;
            acc *= *v;
        }
        return acc;
    }

    Ext operator()(const node::Scale& n) const {
        const Ext v = eval_node(*n.child, z);
        if (!v) return std::nullopt;
        return n.factor * *v;
    }

    Ext operator()(const node::Compose& n) const { return eval_node(*n.outer, eval_node(*n.inner, z)); }
};

Ext eval_node(const HoloFunction& f, Ext z) { return std::visit(Evaluator{z}, f.root()); }

std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

Complex evaluate(const HoloFunction& f, Complex z) {
    if (f.region() && !f.region()->contains(z, kRegionTolerance)) {
        throw Error(ErrorKind::OutsideRegion, "evaluation point " + describe(z) + " outside the function's region");
    }
    const Ext v = eval_node(f, z);
    if (!v) throw Error(ErrorKind::PoleHit, "singularity at " + describe(z));
    return *v;
}

Complex evaluate_at_infinity(const HoloFunction& f) {
    if (f.region() && !f.region()->contains_infinity) {
        throw Error(ErrorKind::OutsideRegion, "region does not contain the point at infinity");
    }
    const Ext v = eval_node(f, std::nullopt);
    if (!v) throw Error(ErrorKind::PoleHit, "function is unbounded at infinity");
    return *v;
}

HoloFunction disc_peak(Complex anchor, const Circle& c, std::int64_t exponent) {
    if (exponent < 1) throw Error(ErrorKind::InvalidArgument, "peak exponent must be positive");
    if (std::abs(std::abs(anchor - c.center) - c.radius) > 1e-12 * std::max(1.0, c.radius)) {
        throw Error(ErrorKind::AnchorNotOnCircle, "peak anchor " + describe(anchor) + " is not on the circle");
    }
    return HoloFunction(node::DiscPeak{anchor, c, exponent});
}

HoloFunction annulus_inner_peak(Complex anchor, double r0, std::int64_t exponent) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0, 1)");
    if (std::abs(std::abs(anchor) - r0) > 1e-12) {
        throw Error(ErrorKind::AnchorNotOnInnerCircle, "anchor " + describe(anchor) + " is not on |z| = r0");
    }
    // Peak on the unit circle at r0/anchor, pulled back through z -> r0/z.
    Complex u = r0 / anchor;
    u /= std::abs(u);
    return HoloFunction::compose(disc_peak(u, unit_circle(), exponent),
                                 HoloFunction::moebius(0.0, r0, 1.0, 0.0));
}

Complex FourierSeq::at(int j) const {
    auto it = coefficients.find(j);
    return it == coefficients.end() ? Complex{0.0, 0.0} : it->second;
}

FourierSeq laurent_coeffs(const Sampler& f, const Circle& c, int order, std::size_t n_samples) {
    if (order < 0) throw Error(ErrorKind::InvalidArgument, "truncation order must be non-negative");
    if (n_samples < 4 || (n_samples & (n_samples - 1)) != 0 || n_samples < 4 * static_cast<std::size_t>(order)) {
        throw Error(ErrorKind::InvalidArgument, "sample count must be a power of two >= 4J");
    }
    const auto n = static_cast<long long>(n_samples);
    std::vector<Complex> roots(n_samples);
    std::vector<Complex> values(n_samples);
    for (long long m = 0; m < n; ++m) {
        roots[m] = unit_root(m, n);
        values[m] = f(c.center + c.radius * roots[m]);
    }

    FourierSeq out;
    out.order = order;
    for (int j = -order; j <= order; ++j) {
        Complex acc{0.0, 0.0};
        for (long long m = 0; m < n; ++m) {
            long long idx = (-static_cast<long long>(j) * m) % n;
            if (idx < 0) idx += n;
            acc += values[m] * roots[idx];
        }
        out.coefficients[j] = acc / static_cast<double>(n) * std::pow(c.radius, -j);
    }
    return out;
}

FourierSeq laurent_coeffs(const HoloFunction& f, const Circle& c, int order, std::size_t n_samples) {
    return laurent_coeffs([&f](Complex z) { return evaluate(f, z); }, c, order, n_samples);
}

double sup_on_circle(const HoloFunction& f, const Circle& c, std::size_t n_samples) {
    double best = 0.0;
    for (const auto& z : sample_boundary(c, n_samples)) best = std::max(best, std::abs(evaluate(f, z)));
    return best;
}

std::size_t residual_sample_count(int order) {
    std::size_t n = 2048;
    while (n < 4 * static_cast<std::size_t>(std::max(order, 0))) n *= 2;
    return n;
}

double holomorphy_residual(const Sampler& f, Complex center, double rho1, double rho2, int order) {
    if (!(rho1 > 0.0 && rho1 < rho2)) throw Error(ErrorKind::InvalidArgument, "need 0 < rho1 < rho2");
    const std::size_t n = residual_sample_count(order);
    const FourierSeq a1 = laurent_coeffs(f, Circle{center, rho1}, order, n);
    const FourierSeq a2 = laurent_coeffs(f, Circle{center, rho2}, order, n);
    double worst = 0.0;
    for (int j = -order; j <= order; ++j) {
        const double weight = std::min({1.0, std::pow(rho1, j), std::pow(rho2, j)});
        worst = std::max(worst, weight * std::abs(a1.at(j) - a2.at(j)));
    }
    return worst;
}

double holomorphy_residual(const HoloFunction& f, Complex center, double rho1, double rho2, int order) {
    if (f.region()) {
        for (double rho : {rho1, rho2}) {
            for (const auto& z : sample_boundary(Circle{center, rho}, 64)) {
                if (!f.region()->contains(z, kRegionTolerance)) {
                    throw Error(ErrorKind::RegionViolation, "verification annulus leaves the function's region");
                }
            }
        }
    }
    return holomorphy_residual([&f](Complex z) { return evaluate(f, z); }, center, rho1, rho2, order);
}

}  // namespace holext
