#include "holext/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "holext/error.hpp"

namespace holext {

namespace {

constexpr Complex kZero{0.0, 0.0};

void accumulate_atom(std::vector<Atom>& atoms, const Atom& atom) {
    for (auto& a : atoms) {
        if (a.angle == atom.angle) {
            a.weight += atom.weight;
            return;
        }
    }
    atoms.push_back(atom);
}

void drop_zeros(std::map<int, Complex>& density) {
    std::erase_if(density, [](const auto& kv) { return kv.second == kZero; });
}

}  // namespace

double CircleMeasure::total_variation_bound() const {
    double tv = 0.0;
    for (const auto& a : atoms) tv += std::abs(a.weight);
    for (const auto& [k, d] : density) tv += std::abs(d);
    return tv;
}

CircleMeasure CircleMeasure::operator+(const CircleMeasure& other) const {
    CircleMeasure out = *this;
    for (const auto& a : other.atoms) accumulate_atom(out.atoms, a);
    for (const auto& [k, d] : other.density) out.density[k] += d;
    drop_zeros(out.density);
    return out;
}

CircleMeasure CircleMeasure::operator-(const CircleMeasure& other) const {
    CircleMeasure out = *this;
    for (const auto& a : other.atoms) accumulate_atom(out.atoms, Atom{a.angle, -a.weight});
    for (const auto& [k, d] : other.density) out.density[k] -= d;
    drop_zeros(out.density);
    return out;
}

void validate(const CircleMeasure& m) {
    if (!(m.radius > 0.0) || !std::isfinite(m.radius)) {
        throw Error(ErrorKind::InvalidArgument, "measure radius must be positive");
    }
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        const double angle = m.atoms[i].angle;
        if (!(angle >= 0.0 && angle < 2.0 * std::numbers::pi)) {
            throw Error(ErrorKind::InvalidArgument, "atom angle must lie in [0, 2pi)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (m.atoms[j].angle == angle) {
                throw Error(ErrorKind::InvalidArgument, "atom angles must be pairwise distinct");
            }
        }
    }
}

void validate(const AnnulusMeasure& m) {
    if (!(m.r0 > 0.0 && m.r0 < 1.0)) throw Error(ErrorKind::InvalidArgument, "r0 must lie in (0, 1)");
    if (m.inner.radius != m.r0) throw Error(ErrorKind::InvalidArgument, "inner measure must live on |z| = r0");
    if (m.outer.radius != 1.0) throw Error(ErrorKind::InvalidArgument, "outer measure must live on |z| = 1");
    validate(m.inner);
    validate(m.outer);
}

Complex normalized_coefficient(const CircleMeasure& m, int j) {
    Complex acc{0.0, 0.0};
    for (const auto& a : m.atoms) acc += a.weight * std::polar(1.0, -static_cast<double>(j) * a.angle);
    auto it = m.density.find(j);
    if (it != m.density.end()) acc += it->second;
    return acc;
}

Complex fourier_coefficient(const CircleMeasure& m, int j) {
    return std::pow(m.radius, -j) * normalized_coefficient(m, j);
}

double coefficient_bound_margin(const CircleMeasure& m, int j) {
    const double tv = m.total_variation_bound();
    double slack = tv - std::abs(normalized_coefficient(m, j));
    // Slack below the rounding level of the sums is indistinguishable from 0.
    const double terms = static_cast<double>(m.atoms.size() + m.density.size() + 1);
    const double rounding = 8.0 * terms * std::numeric_limits<double>::epsilon() * tv;
    if (slack < 0.0 && -slack <= rounding) slack = 0.0;
    return std::pow(m.radius, -j) * slack;
}

double riesz_hypothesis_defect(const AnnulusMeasure& m, int order) {
    double worst = 0.0;
    for (int j = -order; j <= order; ++j) {
        worst = std::max(worst, std::abs(fourier_coefficient(m.inner, j) + fourier_coefficient(m.outer, j)));
    }
    return worst;
}

Decomposition decompose(const AnnulusMeasure& m, int order, double tolerance) {
    validate(m);
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "truncation order must be positive");
    for (const auto* c : {&m.inner, &m.outer}) {
        if (!c->density.empty() &&
            (c->density.begin()->first < -order || c->density.rbegin()->first > order)) {
            throw Error(ErrorKind::TruncationInsufficient,
                        "density support exceeds truncation order " + std::to_string(order));
        }
    }

    Decomposition out;
    out.order = order;
    out.hypothesis_defect = riesz_hypothesis_defect(m, order);
    if (!(out.hypothesis_defect <= tolerance)) {
        throw Error(ErrorKind::HypothesisViolated,
                    "coefficient defect " + std::to_string(out.hypothesis_defect) + " above tolerance");
    }

    // lambda0 carries the positive-index coefficients of mu0; the density
    // coefficient is r0^k times the Fourier coefficient.
    out.lambda0.radius = m.r0;
    for (int k = 1; k <= order; ++k) {
        const Complex d = normalized_coefficient(m.inner, k);
        if (d != kZero) out.lambda0.density[k] = d;
    }
    out.eta0 = m.inner - out.lambda0;

    out.eta1.radius = 1.0;
    for (int k = -order; k <= -1; ++k) {
        const Complex d = normalized_coefficient(m.outer, k);
        if (d != kZero) out.eta1.density[k] = d;
    }
    out.lambda1 = m.outer - out.eta1;

    const double tv = std::max(m.inner.total_variation_bound(), m.outer.total_variation_bound());
    out.tail_bound = tv * std::pow(m.r0, order + 1) / (1.0 - m.r0);
    return out;
}

HoloFunction analytic_density(const FourierSeq& seq, Side side) {
    std::map<int, Complex> coeffs;
    for (const auto& [j, c] : seq.coefficients) {
        if (c == kZero) continue;
        if ((side == Side::NonNegative && j < 0) || (side == Side::NonPositive && j > 0)) {
            throw Error(ErrorKind::WrongSupport, "coefficient at index " + std::to_string(j) + " on the wrong side");
        }
        coeffs[j] = c;
    }
    if (coeffs.empty()) return HoloFunction::constant(kZero);
    if (coeffs.size() == 1 && coeffs.begin()->first == 0) return HoloFunction::constant(coeffs.begin()->second);
    return HoloFunction::laurent(kZero, std::move(coeffs));
}

Complex arc_variation_probe(const CircleMeasure& m, double center_angle, double half_width) {
    if (!(half_width > 0.0 && half_width < std::numbers::pi)) {
        throw Error(ErrorKind::InvalidArgument, "half width must lie in (0, pi)");
    }
    Complex acc{0.0, 0.0};
    for (const auto& a : m.atoms) {
        if (std::abs(std::remainder(a.angle - center_angle, 2.0 * std::numbers::pi)) <= half_width) {
            acc += a.weight;
        }
    }
    for (const auto& [k, d] : m.density) {
        if (k == 0) {
            acc += d * half_width / std::numbers::pi;
        } else {
            const double kk = static_cast<double>(k);
            acc += d * std::polar(1.0, kk * center_angle) * std::sin(kk * half_width) / (kk * std::numbers::pi);
        }
    }
    return acc;
}

CircleMeasure measure_from_coefficients(double radius, const FourierSeq& seq) {
    CircleMeasure m;
    m.radius = radius;
    for (const auto& [j, c] : seq.coefficients) {
        if (c != kZero) m.density[j] = std::pow(radius, j) * c;
    }
    return m;
}

}  // namespace holext
