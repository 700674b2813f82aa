#include "holext/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holext/annulus_extension.hpp"
#include "holext/error.hpp"

namespace holext {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

/// Samples, bound values and per-function moduli on every boundary curve.
struct BoundarySamples {
    std::vector<std::vector<Complex>> points;
    std::vector<std::vector<double>> bound;

    BoundarySamples(const ExtensionProblem& p, std::size_t n) {
        for (std::size_t j = 0; j < p.domain.curve_count(); ++j) {
            const Circle& c = p.domain.component(j);
            points.push_back(sample_boundary(c, n));
            std::vector<double> m;
            m.reserve(n);
            for (const auto& z : points.back()) m.push_back(p.components[j].bound.at(c, z));
            bound.push_back(std::move(m));
        }
    }

    /// moduli[j][l][s] = |fs[l](points[j][s])|
    std::vector<std::vector<std::vector<double>>> moduli(const std::vector<HoloFunction>& fs) const {
        std::vector<std::vector<std::vector<double>>> out(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) {
            for (const auto& f : fs) {
                std::vector<double> v;
                v.reserve(points[j].size());
                for (const auto& z : points[j]) v.push_back(std::abs(evaluate(f, z)));
                out[j].push_back(std::move(v));
            }
        }
        return out;
    }
};

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

void add_holomorphy_checks(VerificationReport& r, const Domain& d, const HoloFunction& f, double boundary_sup) {
    r.annulus = find_verification_annulus(d);
    if (!r.annulus) return;
    const auto& a = *r.annulus;
    r.checks.push_back({"holomorphy", holomorphy_residual(f, a.center, a.rho1, a.rho2, kResidualOrder),
                        kGlueHolomorphyTolerance, true});
    if (boundary_sup >= 0.0) {
        const double interior = sup_on_circle(f, Circle{a.center, 0.5 * (a.rho1 + a.rho2)}, r.samples);
        r.checks.push_back({"max_modulus", interior - boundary_sup, 1e-9, false});
    }
}

}  // namespace

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const Check* VerificationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed()) return &c;
    }
    return nullptr;
}

void validate(const ExtensionProblem& p) {
    const std::size_t k = p.domain.curve_count();
    if (p.components.size() != k) {
        throw Error(ErrorKind::InvalidArgument, "need one constraint block per boundary curve (" + idx(k) + ")");
    }
    if (p.puncture_values.size() != p.domain.puncture_count()) {
        throw Error(ErrorKind::InvalidArgument, "need one target value per puncture");
    }
    for (std::size_t j = 0; j < k; ++j) {
        const auto& c = p.components[j];
        const Circle& circle = p.domain.component(j);
        validate(c.bound);
        if (c.points.size() != c.values.size()) {
            throw Error(ErrorKind::InvalidArgument, "component " + idx(j) + ": points and values differ in length");
        }
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            if (std::abs(std::abs(c.points[i] - circle.center) - circle.radius) > 1e-10 * std::max(1.0, circle.radius)) {
                throw Error(ErrorKind::InvalidArgument,
                            "component " + idx(j) + ": point " + idx(i) + " is not on the boundary curve");
            }
            const double m = c.bound.at(circle, c.points[i]);
            if (!(std::abs(c.values[i]) < m)) {
                throw Error(ErrorKind::InfeasibleBound,
                            "component " + idx(j) + ": |f| >= M at point " + idx(i));
            }
        }
    }
}

ExtensionProblem without_punctures(const ExtensionProblem& p) {
    ExtensionProblem out = p;
    out.domain = build_domain(p.domain.outer(), p.domain.holes(), {});
    out.puncture_values.clear();
    return out;
}

double choose_gamma(const ExtensionProblem& p, std::size_t samples) {
    validate(p);
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.components.size(); ++j) {
        const auto& c = p.components[j];
        const Circle& circle = p.domain.component(j);
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            slack = std::min(slack, c.bound.at(circle, c.points[i]) - std::abs(c.values[i]));
        }
        // M - 2 gamma must stay positive on the whole curve, not only on E.
        slack = std::min(slack, c.bound.sampled_min(samples));
    }
    if (!(slack > 0.0)) throw Error(ErrorKind::InfeasibleBound, "no positive margin between |f| and M");
    return slack / 3.0;
}

double eps_formula(double sup_component, double gamma, std::size_t k) {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "need at least two boundary curves");
    const double s = sup_component > 0.0 ? sup_component : 1.0;
    return std::pow(1.0 + gamma / (2.0 * s), 1.0 / static_cast<double>(k - 1)) - 1.0;
}

double delta_formula(double sup_others, double eps, double gamma, std::size_t k) {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "need at least two boundary curves");
    const double t = sup_others > 0.0 ? sup_others : 1.0;
    return 0.5 * gamma / (std::pow(1.0 + eps, static_cast<double>(k) - 2.0) * t);
}

double choose_eps(const ExtensionProblem& p, const std::vector<HoloFunction>& components, double gamma,
                  std::size_t samples) {
    const std::size_t k = p.domain.curve_count();
    const BoundarySamples bs(p, samples);
    const auto mod = bs.moduli(components);
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s = std::max(s, sup_norm(mod[j][j]));
    const double eps = eps_formula(s, gamma, k);
    const double grow = std::pow(1.0 + eps, static_cast<double>(k - 1));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < samples; ++i) {
            const double fj = mod[j][j][i];
            if (!(grow * fj < fj + gamma && fj + gamma < bs.bound[j][i] - gamma)) {
                throw Error(ErrorKind::OwnTermMarginViolated, "curve " + idx(j) + ", sample " + idx(i));
            }
        }
    }
    return eps;
}

double choose_delta(const ExtensionProblem& p, const std::vector<HoloFunction>& components, double eps,
                    double gamma, std::size_t samples) {
    const std::size_t k = p.domain.curve_count();
    const BoundarySamples bs(p, samples);
    const auto mod = bs.moduli(components);
    std::vector<std::vector<double>> others(k, std::vector<double>(samples, 0.0));
    double t = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
            if (l == j) continue;
            for (std::size_t i = 0; i < samples; ++i) others[j][i] += mod[j][l][i];
        }
        t = std::max(t, sup_norm(others[j]));
    }
    const double delta = delta_formula(t, eps, gamma, k);
    const double grow = std::pow(1.0 + eps, static_cast<double>(k) - 2.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < samples; ++i) {
            if (!(delta * grow * others[j][i] < gamma)) {
                throw Error(ErrorKind::CrossTermMarginViolated, "curve " + idx(j) + ", sample " + idx(i));
            }
        }
    }
    return delta;
}

PairChart pair_chart(const Domain& d, std::size_t j, std::size_t l) {
    const std::size_t k = d.curve_count();
    if (j == l || j >= k || l >= k) throw Error(ErrorKind::InvalidRegionRef, "invalid curve pair");
    if (j == 0) {
        const AnnulusChart a = annulus_chart(d.outer(), d.component(l));
        return {a.map, a.r0, true};
    }
    if (l == 0) {
        const AnnulusChart a = annulus_chart(d.outer(), d.component(j));
        return {a.map, a.r0, false};
    }
    // Both holes: send the exterior of hole j to the unit disc first.
    const MoebiusMap outside_j = disc_chart(d.component(j), true);
    const AnnulusChart a = annulus_chart(unit_circle(), outside_j.image(d.component(l)));
    return {a.map.after(outside_j), a.r0, true};
}

std::optional<VerificationAnnulus> find_verification_annulus(const Domain& d) {
    std::vector<Complex> centers{d.outer().center};
    for (const auto& h : d.holes()) centers.push_back(h.center);

    std::optional<VerificationAnnulus> best;
    double best_width = 0.0;
    for (const Complex c : centers) {
        const double limit = d.outer().radius - std::abs(c - d.outer().center);
        std::vector<std::pair<double, double>> blocked;
        for (const auto& h : d.holes()) {
            const double r = std::abs(c - h.center);
            blocked.emplace_back(std::max(0.0, r - h.radius), r + h.radius);
        }
        blocked.emplace_back(limit, std::numeric_limits<double>::infinity());
        std::sort(blocked.begin(), blocked.end());
        double start = 0.0;
        for (const auto& [lo, hi] : blocked) {
            if (lo > start) {
                const double width = lo - start;
                if (width > best_width) {
                    best_width = width;
                    best = VerificationAnnulus{c, start + 0.1 * width, lo - 0.1 * width};
                }
            }
            start = std::max(start, hi);
        }
    }
    return best;
}

VerificationReport verify_glue(const ExtensionProblem& p, const HoloFunction& f,
                               const std::vector<HoloFunction>& components,
                               const std::vector<HoloFunction>& separators, const GlueMargins& margins,
                               std::size_t samples) {
    const std::size_t k = p.domain.curve_count();
    if (components.size() != k || separators.size() != k) {
        throw Error(ErrorKind::InvalidArgument, "need one component and one separator per curve");
    }
    VerificationReport r;
    r.samples = samples;

    double interp = 0.0, keep_err = 0.0, kill_err = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const auto& c = p.components[j];
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            interp = std::max(interp, std::abs(evaluate(f, c.points[i]) - c.values[i]));
            for (std::size_t l = 0; l < k; ++l) {
                const Complex h = evaluate(separators[l], c.points[i]);
                if (l == j) {
                    keep_err = std::max(keep_err, std::abs(h - 1.0));
                } else {
                    kill_err = std::max(kill_err, std::abs(h));
                }
            }
        }
    }

    const BoundarySamples bs(p, samples);
    const auto fmod = bs.moduli({f});
    const auto cmod = bs.moduli(components);
    const auto hmod = bs.moduli(separators);
    const double grow_own = std::pow(1.0 + margins.eps, static_cast<double>(k - 1));
    const double grow_other = std::pow(1.0 + margins.eps, static_cast<double>(k) - 2.0);

    double ratio = 0.0, sup_own = 0.0, sup_other = 0.0, own_margin = -std::numeric_limits<double>::infinity();
    double cross_margin = -std::numeric_limits<double>::infinity(), chain = -std::numeric_limits<double>::infinity();
    double chain_rhs = -std::numeric_limits<double>::infinity(), boundary_sup = 0.0;
    std::vector<double> bound_margins(k, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < samples; ++i) {
            const double m = bs.bound[j][i];
            const double fv = fmod[j][0][i];
            const double own = cmod[j][j][i];
            double others = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                if (l == j) continue;
                others += cmod[j][l][i];
                sup_other = std::max(sup_other, hmod[j][l][i] / (margins.delta * grow_other));
            }
            sup_own = std::max(sup_own, hmod[j][j][i] / grow_own);
            ratio = std::max(ratio, fv / m);
            boundary_sup = std::max(boundary_sup, fv);
            bound_margins[j] = std::min(bound_margins[j], m - fv);
            own_margin = std::max({own_margin, grow_own * own - own - margins.gamma, own + 2.0 * margins.gamma - m});
            cross_margin = std::max(cross_margin, margins.delta * grow_other * others - margins.gamma);
            const double rhs = grow_own * own + margins.delta * grow_other * others;
            chain = std::max(chain, fv - rhs);
            chain_rhs = std::max(chain_rhs, rhs - m);
        }
    }

    r.checks.push_back({"interpolation", interp, kGlueInterpolationTolerance, false});
    r.checks.push_back({"bound", ratio, 1.0, true});
    r.checks.push_back({"separator_keep", keep_err, kGlueInterpolationTolerance, false});
    r.checks.push_back({"separator_kill", kill_err, kGlueInterpolationTolerance, false});
    r.checks.push_back({"separator_sup_own", sup_own, 1.0, true});
    r.checks.push_back({"separator_sup_other", sup_other, 1.0, true});
    r.checks.push_back({"own_term_margin", own_margin, 0.0, true});
    r.checks.push_back({"cross_term_margin", cross_margin, 0.0, true});
    r.checks.push_back({"bound_chain", chain, kBoundChainSlack, false});
    r.checks.push_back({"bound_chain_rhs", chain_rhs, 0.0, false});
    r.bound_margins = std::move(bound_margins);
    add_holomorphy_checks(r, p.domain, f, boundary_sup);
    return r;
}

VerificationReport verify_punctured(const ExtensionProblem& p, const HoloFunction& f, std::size_t samples) {
    VerificationReport r;
    r.samples = samples;
    double interp = 0.0;
    for (std::size_t j = 0; j < p.components.size(); ++j) {
        const auto& c = p.components[j];
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            interp = std::max(interp, std::abs(evaluate(f, c.points[i]) - c.values[i]));
        }
    }
    double punct = 0.0;
    for (std::size_t j = 0; j < p.domain.puncture_count(); ++j) {
        punct = std::max(punct, std::abs(evaluate(f, p.domain.punctures()[j]) - p.puncture_values[j]));
    }
    r.checks.push_back({"interpolation", interp, kGlueInterpolationTolerance, false});
    r.checks.push_back({"puncture_interpolation", punct, kGlueInterpolationTolerance, false});
    add_holomorphy_checks(r, p.domain, f, -1.0);
    return r;
}

ExtensionResult glue(const ExtensionProblem& p, const SolverOptions& opts) {
    validate(opts);
    validate(p);
    const Domain& d = p.domain;
    const std::size_t k = d.curve_count();
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "gluing needs at least one hole");
    if (d.puncture_count() > 0) {
        throw Error(ErrorKind::InvalidArgument, "domain has punctures; use interpolate_with_punctures");
    }

    ExtensionResult out;
    const double gamma = choose_gamma(p, opts.boundary_samples);

    for (std::size_t j = 0; j < k; ++j) {
        const Circle& circle = d.component(j);
        const BoundFunction& m = p.components[j].bound;
        const auto bound = [&](Complex z) { return m.at(circle, z) - 2.0 * gamma; };
        RegionExtension fj = extend_region(circle, j != 0, p.components[j].points, p.components[j].values, bound, opts);
        out.solver_rounds = std::max(out.solver_rounds, fj.rounds);
        out.components.push_back(fj.function.with_region(derived_region(d, SimplyConnected{j})));
    }

    const double eps = choose_eps(p, out.components, gamma, opts.boundary_samples);
    const double delta = choose_delta(p, out.components, eps, gamma, opts.boundary_samples);
    out.margins = {gamma, eps, delta};

    const RegionDescriptor full = derived_region(d, FullRegion{});
    std::vector<HoloFunction> terms;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<HoloFunction> factors;
        for (std::size_t l = 0; l < k; ++l) {
            if (l == j) continue;
            const PairChart chart = pair_chart(d, j, l);
            std::vector<Complex> keep, kill;
            for (const auto& z : p.components[j].points) keep.push_back(chart.map(z));
            for (const auto& z : p.components[l].points) kill.push_back(chart.map(z));
            const AnnulusExtension h = separating_function(
                chart.r0, chart.keep_on_outer ? KeepSide::Outer : KeepSide::Inner, keep, kill, eps, delta, opts);
            out.solver_rounds = std::max(out.solver_rounds, h.rounds);
            factors.push_back(keep.empty() ? h.function : HoloFunction::compose(h.function, chart.map.as_function()));
        }
        out.separators.push_back(HoloFunction::product(std::move(factors)).with_region(full));
        terms.push_back(HoloFunction::product({out.components[j], out.separators[j]}));
    }
    out.function = HoloFunction::sum(std::move(terms)).with_region(full);

    out.report = verify_glue(p, out.function, out.components, out.separators, out.margins, opts.boundary_samples);
    for (const auto& c : out.report.checks) {
        if (c.name == "bound" && !c.passed()) {
            throw Error(ErrorKind::GlueBoundViolated, "sampled |F| reaches M (ratio " + std::to_string(c.value) + ")");
        }
    }
    return out;
}

namespace {

/// Extension vanishing at every boundary constraint point and taking the value
/// 1/2 at one augmentation point chosen by `attempt`.
HoloFunction vanishing_extension(const ExtensionProblem& base, int attempt, const SolverOptions& opts) {
    const std::size_t k = base.domain.curve_count();
    ExtensionProblem zero = base;
    for (auto& c : zero.components) {
        c.values.assign(c.points.size(), Complex{0.0, 0.0});
        c.bound = BoundFunction::constant(1.0);
    }
    const std::size_t target = static_cast<std::size_t>(attempt) % k;
    const Circle& circle = base.domain.component(target);
    auto& comp = zero.components[target];
    // Later retries on the same curve rotate by golden-ratio steps.
    const double turn = static_cast<double>(attempt / static_cast<int>(k)) * 2.0 * std::numbers::pi *
                        (1.5 - std::sqrt(1.25));
    const Complex q = circle.point_at(circle.angle_of(farthest_free_point(circle, comp.points)) + turn);
    comp.points.push_back(q);
    comp.values.push_back(Complex{0.5, 0.0});
    return glue(zero, opts).function;
}

}  // namespace

ExtensionResult interpolate_with_punctures(const ExtensionProblem& p, const SolverOptions& opts) {
    validate(opts);
    validate(p);
    if (p.domain.puncture_count() == 0) return glue(p, opts);

    const ExtensionProblem base = without_punctures(p);
    ExtensionResult fhat = glue(base, opts);

    const auto& punctures = p.domain.punctures();
    const RegionDescriptor full = derived_region(p.domain, FullRegion{});
    std::vector<HoloFunction> terms{fhat.function};
    ExtensionResult out;
    out.punctured = true;
    out.margins = fhat.margins;
    out.solver_rounds = fhat.solver_rounds;
    out.components.push_back(fhat.function);

    for (std::size_t j = 0; j < punctures.size(); ++j) {
        std::optional<HoloFunction> hhat;
        Complex at_puncture{0.0, 0.0};
        for (int attempt = 0; attempt < opts.max_retries && !hhat; ++attempt) {
            HoloFunction candidate = vanishing_extension(base, attempt, opts);
            at_puncture = evaluate(candidate, punctures[j]);
            if (std::abs(at_puncture) >= kDegeneratePuncture) hhat = std::move(candidate);
        }
        if (!hhat) {
            throw Error(ErrorKind::PunctureDegenerate,
                        "vanishing extension stays below threshold at puncture " + idx(j));
        }

        std::vector<HoloFunction> factors;
        for (std::size_t i = 0; i < punctures.size(); ++i) {
            if (i == j) continue;
            factors.push_back(HoloFunction::laurent(punctures[i], {{1, 1.0 / (punctures[j] - punctures[i])}}));
        }
        factors.push_back(HoloFunction::scale(1.0 / at_puncture, *hhat));
        HoloFunction hj = HoloFunction::product(std::move(factors)).with_region(full);
        const Complex correction = p.puncture_values[j] - evaluate(fhat.function, punctures[j]);
        terms.push_back(HoloFunction::scale(correction, hj));
        out.separators.push_back(std::move(hj));
    }
    out.function = HoloFunction::sum(std::move(terms)).with_region(full);
    out.report = verify_punctured(p, out.function, opts.boundary_samples);
    return out;
}

}  // namespace holext
