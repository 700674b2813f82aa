// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "holext/cli.hpp"
#include "holext/conformal.hpp"
#include "holext/disc_extension.hpp"
#include "holext/gluing.hpp"
#include "holext/io.hpp"
#include "holext/measure.hpp"

using namespace holext;
namespace fs = std::filesystem;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;
const Complex I{0.0, 1.0};

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail = what;
        passed = passed && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// AC1: coefficient bound on random measures.

Outcome ac1() {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0), angle(0.0, kTwoPi);
    const double radii[] = {0.3, 0.5, 1.0};
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        CircleMeasure m;
        m.radius = radii[trial % 3];
        const int atoms = static_cast<int>(rng() % 6);
        for (int i = 0; i < atoms; ++i) m.atoms.push_back({angle(rng), {u(rng), u(rng)}});
        const int degree = static_cast<int>(rng() % 13);
        for (int k = -degree; k <= degree; ++k) {
            if (rng() % 3) m.density[k] = {u(rng), u(rng)};
        }
        for (int j = -50; j <= 50; ++j) worst = std::min(worst, coefficient_bound_margin(m, j));
    }
    o.require(worst >= -1e-12, "margin " + fmt(worst));
    o.detail = o.passed ? "min margin " + fmt(worst) : o.detail;
    return o;
}

// ---------------------------------------------------------------------------
// AC2: annular decomposition on random hypothesis-satisfying measures.

AnnulusMeasure random_riesz_measure(std::mt19937_64& rng, double r0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    AnnulusMeasure m{r0, {r0, {}, {}}, {1.0, {}, {}}};
    const int support = 1 + static_cast<int>(rng() % 32);
    for (int k = -support; k <= support; ++k) {
        const Complex x = Complex{u(rng), u(rng)} / std::pow(1.0 + std::abs(k), 3.0);
        if (k >= 0) {
            m.outer.density[k] = x;
            m.inner.density[k] = -std::pow(r0, k) * x;
        } else {
            m.inner.density[k] = x;
            m.outer.density[k] = -std::pow(r0, -k) * x;
        }
    }
    return m;
}

/// Angle where the density of m has the largest modulus.
double peak_angle(const CircleMeasure& m) {
    double best = 0.0, best_value = -1.0;
    for (int s = 0; s < 4096; ++s) {
        const double t = kTwoPi * s / 4096.0;
        Complex d{0.0, 0.0};
        for (const auto& [k, c] : m.density) d += c * std::polar(1.0, k * t);
        if (std::abs(d) > best_value) {
            best_value = std::abs(d);
            best = t;
        }
    }
    return best;
}

Outcome ac2() {
    Outcome o;
    std::mt19937_64 rng(202);
    double recon = 0.0, support = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double r0 = trial % 2 ? 0.6 : 0.3;
        const AnnulusMeasure m = random_riesz_measure(rng, r0);
        const Decomposition d = decompose(m, 64);
        for (int j = -64; j <= 64; ++j) {
            recon = std::max(recon, std::abs(fourier_coefficient(d.lambda0, j) + fourier_coefficient(d.eta0, j) -
                                             fourier_coefficient(m.inner, j)));
            recon = std::max(recon, std::abs(fourier_coefficient(d.eta1, j) + fourier_coefficient(d.lambda1, j) -
                                             fourier_coefficient(m.outer, j)));
            if (j >= 1) support = std::max(support, std::abs(fourier_coefficient(d.eta0, j)));
            if (j <= 0) support = std::max(support, std::abs(fourier_coefficient(d.lambda0, j)));
            if (j <= -1) support = std::max(support, std::abs(fourier_coefficient(d.lambda1, j)));
            if (j >= 0) support = std::max(support, std::abs(fourier_coefficient(d.eta1, j)));
        }
        for (const CircleMeasure* piece : {&d.lambda0, &d.eta0, &d.eta1, &d.lambda1}) {
            const double c = peak_angle(*piece);
            const double a = std::abs(arc_variation_probe(*piece, c, 0.1));
            const double b = std::abs(arc_variation_probe(*piece, c, 0.01));
            const double e = std::abs(arc_variation_probe(*piece, c, 0.001));
            for (double r : {a / b, b / e}) {
                ratio_lo = std::min(ratio_lo, r);
                ratio_hi = std::max(ratio_hi, r);
            }
        }
    }
    o.require(recon < 1e-10, "reconstruction " + fmt(recon));
    o.require(support <= 1e-12, "support " + fmt(support));
    o.require(ratio_lo >= 8.0 && ratio_hi <= 12.0, "probe ratios [" + fmt(ratio_lo) + ", " + fmt(ratio_hi) + "]");
    if (o.passed) {
        o.detail = "recon " + fmt(recon) + ", support " + fmt(support) + ", probe ratios [" + fmt(ratio_lo) + ", " +
                   fmt(ratio_hi) + "]";
    }
    return o;
}

// ---------------------------------------------------------------------------
// AC3: disc extension on random data.

BoundaryConstraint random_disc_problem(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BoundaryConstraint c;
    c.bound = BoundFunction::trig({1.0 + u(rng), 0.3 * u(rng), 0.2 * u(rng)}, {0.0, 0.3 * u(rng), 0.1 * u(rng)});
    while (static_cast<int>(c.points.size()) < m) {
        const Complex z = std::polar(1.0, kTwoPi * u(rng));
        bool separated = true;
        for (const auto& p : c.points) separated = separated && std::abs(p - z) >= 0.05;
        if (!separated) continue;
        c.points.push_back(z);
        c.values.push_back(std::polar(0.8 * c.bound.at(unit_circle(), z), kTwoPi * u(rng)));
    }
    return c;
}

Outcome ac3() {
    Outcome o;
    std::mt19937_64 rng(303);
    double interp = 0.0, ratio = 0.0, holo = 0.0, maxmod = -1e300;
    for (int m : {1, 2, 5, 20}) {
        for (int trial = 0; trial < 3; ++trial) {
            const BoundaryConstraint c = random_disc_problem(rng, m);
            const HoloFunction f = extend_disc(c);
            for (std::size_t i = 0; i < c.points.size(); ++i) interp = std::max(interp, std::abs(evaluate(f, c.points[i]) - c.values[i]));
            double boundary = 0.0;
            for (const auto& z : sample_boundary(unit_circle(), 4096)) {
                const double v = std::abs(evaluate(f, z));
                boundary = std::max(boundary, v);
                ratio = std::max(ratio, v / c.bound.at(unit_circle(), z));
            }
            holo = std::max(holo, holomorphy_residual(f, 0.0, 0.5, 0.9, 32));
            for (double t : {0.5, 0.9}) maxmod = std::max(maxmod, sup_on_circle(f, Circle{0.0, t}, 4096) - boundary);
        }
    }
    o.require(interp < 1e-10, "interpolation " + fmt(interp));
    o.require(ratio <= 0.95, "|F|/M " + fmt(ratio));
    o.require(holo < 1e-9, "holomorphy " + fmt(holo));
    o.require(maxmod <= 1e-9, "interior sup exceeds boundary by " + fmt(maxmod));
    if (o.passed) {
        o.detail = "interp " + fmt(interp) + ", max |F|/M " + fmt(ratio) + ", holomorphy " + fmt(holo);
    }
    return o;
}

// ---------------------------------------------------------------------------
// AC4: conformal modulus.

/// Root in (0, 1) of c x^2 - (1 + c^2 - r^2) x + c by bisection.
double symmetric_point(double c, double r) {
    const auto q = [&](double x) { return c * x * x - (1.0 + c * c - r * r) * x + c; };
    double lo = 0.0, hi = 1.0;  // q(0) = c > 0, q(1) = r^2 - (1 - c)^2 < 0
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome ac4() {
    Outcome o;
    const AnnulusChart ch = annulus_chart(unit_circle(), Circle{0.3, 0.3});
    const double x1 = symmetric_point(0.3, 0.3);
    const double oracle = std::abs((0.0 - x1) / (1.0 - x1 * 0.0));  // |T(c - r)| with c - r = 0
    o.require(std::abs(ch.r0 - 1.0 / 3.0) < 1e-12, "r0 " + io::format_double(ch.r0));
    o.require(std::abs(ch.r0 - oracle) < 1e-12, "oracle " + io::format_double(oracle));
    double image = 0.0;
    for (const auto& z : sample_boundary(Circle{0.3, 0.3}, 512)) image = std::max(image, std::abs(std::abs(ch.map(z)) - oracle));
    o.require(image < 1e-12, "inner image radius " + fmt(image));

    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double corr = 0.0, invariance = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Circle outer{{4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0}, 0.5 + 2.0 * u(rng)};
        const double r = outer.radius * (0.05 + 0.8 * u(rng));
        const double room = outer.radius - r - 0.02 * outer.radius;
        const Circle inner{outer.center + room * u(rng) * std::polar(1.0, kTwoPi * u(rng)), r};
        const AnnulusChart a = annulus_chart(outer, inner);
        for (const auto& z : sample_boundary(outer, 512)) corr = std::max(corr, std::abs(std::abs(a.map(z)) - 1.0));
        for (const auto& z : sample_boundary(inner, 512)) corr = std::max(corr, std::abs(std::abs(a.map(z)) - a.r0));
        const Complex s = (0.2 + 3.0 * u(rng)) * std::polar(1.0, kTwoPi * u(rng));
        const Complex t{10.0 * u(rng) - 5.0, 10.0 * u(rng) - 5.0};
        const double moved = modulus(Circle{s * outer.center + t, std::abs(s) * outer.radius},
                                     Circle{s * inner.center + t, std::abs(s) * inner.radius});
        invariance = std::max(invariance, std::abs(moved - a.r0));
    }
    o.require(corr < 1e-10, "correspondence " + fmt(corr));
    o.require(invariance < 1e-12, "similarity " + fmt(invariance));
    if (o.passed) o.detail = "r0 " + io::format_double(ch.r0) + ", correspondence " + fmt(corr) + ", similarity " + fmt(invariance);
    return o;
}

// ---------------------------------------------------------------------------
// Worked problems shared by AC5 to AC7.

io::ProblemFile two_connected_file() {
    io::ProblemFile p;
    p.holes = {Circle{0.0, 0.5}};
    p.constraints = {{{0.0, 0.3}}, {{0.0, -0.2}}};
    p.bounds.assign(2, {});
    return p;
}

io::ProblemFile three_connected_file() {
    io::ProblemFile p;
    p.holes = {Circle{-0.45, 0.2}, Circle{0.45, 0.2}};
    p.constraints = {{{0.5 * std::numbers::pi, 0.3 + 0.1 * I}}, {{0.5 * std::numbers::pi, -0.2}}, {{0.0, 0.4 * I}}};
    p.bounds.assign(3, {});
    return p;
}

io::ProblemFile puncture_file(std::vector<Complex> punctures, std::vector<Complex> w, Complex f_outer, Complex f_hole) {
    io::ProblemFile p;
    p.holes = {Circle{0.6, 0.2}};
    p.punctures = std::move(punctures);
    p.puncture_values = std::move(w);
    p.constraints = {{{std::numbers::pi, f_outer}}, {{std::numbers::pi, f_hole}}};
    p.bounds.assign(2, {});
    return p;
}

const Check* find_check(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

Outcome ac5() {
    Outcome o;
    std::string summary;
    for (const auto& [label, file] : {std::pair{"k=2", two_connected_file()}, std::pair{"k=3", three_connected_file()}}) {
        const ExtensionProblem p = file.to_problem();
        ExtensionResult r;
        try {
            r = glue(p, file.options);
        } catch (const std::exception& e) {
            o.require(false, std::string(label) + ": " + e.what());
            continue;
        }
        double interp = 0.0;
        for (const auto& c : p.components) {
            for (std::size_t i = 0; i < c.points.size(); ++i) interp = std::max(interp, std::abs(evaluate(r.function, c.points[i]) - c.values[i]));
        }
        o.require(interp < 1e-9, std::string(label) + " interpolation " + fmt(interp));
        for (std::size_t j = 0; j < p.domain.curve_count(); ++j) {
            const Circle& circle = p.domain.component(j);
            for (const auto& z : sample_boundary(circle, 4096)) {
                o.require(std::abs(evaluate(r.function, z)) <= p.components[j].bound.at(circle, z),
                          std::string(label) + " |F| > M on curve " + std::to_string(j));
            }
        }
        for (const char* name : {"separator_keep", "separator_kill", "separator_sup_own", "separator_sup_other", "bound_chain", "bound_chain_rhs"}) {
            const Check* c = find_check(r.report, name);
            o.require(c && c->passed(), std::string(label) + " " + name);
        }
        const Check* h = find_check(r.report, "holomorphy");
        o.require(h && h->value < 1e-8, std::string(label) + " holomorphy");
        const Check* chain = find_check(r.report, "bound_chain");
        o.require(chain && chain->value <= 1e-9, std::string(label) + " bound chain slack");
        if (h) summary += std::string(label) + ": interp " + fmt(interp) + ", holomorphy " + fmt(h->value) + "; ";
    }
    if (o.passed) o.detail = summary;
    return o;
}

Outcome ac6() {
    Outcome o;
    std::string summary;
    const io::ProblemFile files[] = {puncture_file({0.0}, {5.0}, 0.0, 0.0),
                                     puncture_file({0.2, -0.2}, {1.0, 2.0}, 0.3, -0.2)};
    for (const auto& file : files) {
        const ExtensionProblem p = file.to_problem();
        const ExtensionResult r = interpolate_with_punctures(p, file.options);
        double boundary = 0.0, punct = 0.0;
        for (const auto& c : p.components) {
            for (std::size_t i = 0; i < c.points.size(); ++i) boundary = std::max(boundary, std::abs(evaluate(r.function, c.points[i]) - c.values[i]));
        }
        for (std::size_t j = 0; j < p.domain.puncture_count(); ++j) {
            punct = std::max(punct, std::abs(evaluate(r.function, p.domain.punctures()[j]) - p.puncture_values[j]));
        }
        o.require(boundary < 1e-9, "boundary interpolation " + fmt(boundary));
        o.require(punct < 1e-9, "puncture interpolation " + fmt(punct));
        o.require(!r.report.bound_margins.has_value(), "report carries bound margins");
        o.require(find_check(r.report, "bound") == nullptr, "report carries a bound check");
        const io::Json report = io::report_json(io::make_result(file, r));
        o.require(!report["verification"].contains("bound_margins"), "report file carries bound margins");
        summary += "boundary " + fmt(boundary) + ", punctures " + fmt(punct) + "; ";
    }
    if (o.passed) o.detail = summary;
    return o;
}

// ---------------------------------------------------------------------------
// AC7: determinism and round-trip through the command line.

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    return run_cli(args, out, err);
}

Outcome ac7() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "holext_acceptance";
    fs::create_directories(dir);
    int files = 0;

    const io::ProblemFile problems[] = {two_connected_file(), three_connected_file(),
                                        puncture_file({0.0}, {5.0}, 0.0, 0.0),
                                        puncture_file({0.2, -0.2}, {1.0, 2.0}, 0.3, -0.2)};
    for (std::size_t i = 0; i < std::size(problems); ++i) {
        const fs::path in = dir / ("problem" + std::to_string(i) + ".json");
        io::write_text_file(in.string(), io::dump(io::to_json(problems[i])));
        const fs::path a = dir / ("a" + std::to_string(i) + ".json"), b = dir / ("b" + std::to_string(i) + ".json");
        o.require(cli({"solve", in.string(), "--out", a.string()}) == 0, "solve " + std::to_string(i));
        o.require(cli({"solve", in.string(), "--out", b.string()}) == 0, "re-solve " + std::to_string(i));
        o.require(slurp(a) == slurp(b) && !slurp(a).empty(), "result " + std::to_string(i) + " differs");
        o.require(slurp(a.string() + ".report.json") == slurp(b.string() + ".report.json"), "report differs");
        o.require(cli({"verify", a.string()}) == 0, "verify " + std::to_string(i));
        files += 2;
    }

    // Decomposition and chart outputs.
    std::mt19937_64 rng(707);
    const fs::path measure = dir / "measure.json";
    io::write_text_file(measure.string(), io::dump(io::to_json(random_riesz_measure(rng, 0.3))));
    const fs::path d1 = dir / "dec1.json", d2 = dir / "dec2.json";
    o.require(cli({"decompose", measure.string(), "--out", d1.string()}) == 0, "decompose");
    o.require(cli({"decompose", measure.string(), "--out", d2.string()}) == 0, "re-decompose");
    o.require(slurp(d1) == slurp(d2), "decomposition differs");
    const fs::path domain = dir / "domain.json";
    io::write_text_file(domain.string(), R"({"outer": {"center": {"re": 0, "im": 0}, "radius": 1},
                                             "holes": [{"center": {"re": 0.3, "im": 0}, "radius": 0.3}]})");
    const fs::path m1 = dir / "map1.csv", m2 = dir / "map2.csv";
    o.require(cli({"map", domain.string(), "--csv", m1.string()}) == 0, "map");
    o.require(cli({"map", domain.string(), "--csv", m2.string()}) == 0, "re-map");
    o.require(slurp(m1) == slurp(m2), "map csv differs");
    files += 2;

    // Disc solves serialized as expression trees.
    std::mt19937_64 r1(303), r2(303);
    for (int m : {1, 2, 5, 20}) {
        const std::string x = io::dump(io::to_json(extend_disc(random_disc_problem(r1, m))));
        const std::string y = io::dump(io::to_json(extend_disc(random_disc_problem(r2, m))));
        o.require(x == y, "disc tree differs for |E| = " + std::to_string(m));
        ++files;
    }
    if (o.passed) o.detail = std::to_string(files) + " outputs byte-identical, all verify runs exit 0";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"AC1 coefficient bound", 5.0, ac1},   {"AC2 annular decomposition", 10.0, ac2},
        {"AC3 disc extension", 30.0, ac3},     {"AC4 conformal modulus", 5.0, ac4},
        {"AC5 k-connected gluing", 60.0, ac5}, {"AC6 punctures", 30.0, ac6},
        {"AC7 determinism and round-trip", 120.0, ac7},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double t = seconds_since(start);
        if (t >= c.budget) {
            o.passed = false;
            o.detail += " (runtime over " + fmt(c.budget) + " s)";
        }
        std::printf("%s %s [%.2f s] %s\n", o.passed ? "PASS" : "FAIL", c.name, t, o.detail.c_str());
        failures += o.passed ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
