#include "holext/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "holext/error.hpp"

namespace holext::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ParseError, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

const Json* optional_field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::int64_t integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

bool boolean(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_schema(const Json& j, const char* kind) {
    if (integer(field(j, "schema_version", "$"), "$.schema_version") != kSchemaVersion) {
        fail("$.schema_version", "unsupported version");
    }
    if (const Json* k = optional_field(j, "kind", "$")) {
        if (!k->is_string() || k->get<std::string>() != kind) fail("$.kind", std::string("expected \"") + kind + "\"");
    }
}

/// Runs `make`, turning library errors into ParseError at `path`.
template <class F>
auto guarded(const std::string& path, F&& make) -> decltype(make()) {
    try {
        return make();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        fail(path, e.what());
    }
}

std::vector<Complex> parse_complex_list(const Json& j, const std::string& path) {
    std::vector<Complex> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(parse_complex(j[i], at(path, i)));
    return out;
}

std::vector<double> parse_number_list(const Json& j, const std::string& path) {
    std::vector<double> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], at(path, i)));
    return out;
}

Json complex_list(const std::vector<Complex>& zs) {
    Json out = Json::array();
    for (const auto& z : zs) out.push_back(to_json(z));
    return out;
}

Json coefficient_list(const std::map<int, Complex>& coefficients) {
    Json out = Json::array();
    for (const auto& [k, v] : coefficients) out.push_back({{"index", k}, {"value", to_json(v)}});
    return out;
}

std::map<int, Complex> parse_coefficient_list(const Json& j, const std::string& path) {
    std::map<int, Complex> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        const std::string p = at(path, i);
        const auto k = integer(field(j[i], "index", p), p + ".index");
        if (k < std::numeric_limits<int>::min() || k > std::numeric_limits<int>::max()) fail(p + ".index", "out of range");
        if (!out.emplace(static_cast<int>(k), parse_complex(field(j[i], "value", p), p + ".value")).second) {
            fail(p + ".index", "duplicate index");
        }
    }
    return out;
}

Json options_json(const SolverOptions& o) {
    return {{"max_rounds", o.max_rounds},
            {"safety", o.safety},
            {"boundary_samples", o.boundary_samples},
            {"cross_budget", o.cross_budget},
            {"max_retries", o.max_retries}};
}

SolverOptions parse_options(const Json& j, const std::string& path) {
    SolverOptions o;
    if (const Json* v = optional_field(j, "max_rounds", path)) o.max_rounds = static_cast<int>(integer(*v, path + ".max_rounds"));
    if (const Json* v = optional_field(j, "safety", path)) o.safety = number(*v, path + ".safety");
    if (const Json* v = optional_field(j, "boundary_samples", path)) {
        const auto n = integer(*v, path + ".boundary_samples");
        if (n <= 0) fail(path + ".boundary_samples", "must be positive");
        o.boundary_samples = static_cast<std::size_t>(n);
    }
    if (const Json* v = optional_field(j, "cross_budget", path)) o.cross_budget = number(*v, path + ".cross_budget");
    if (const Json* v = optional_field(j, "max_retries", path)) o.max_retries = static_cast<int>(integer(*v, path + ".max_retries"));
    guarded(path, [&] { validate(o); return 0; });
    return o;
}

RegionDescriptor parse_region(const Json& j, const std::string& path) {
    RegionDescriptor r;
    const std::string bp = path + ".bounds";
    const Json& bounds = array(field(j, "bounds", path), bp);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const std::string p = at(bp, i);
        r.bounds.push_back({parse_circle(field(bounds[i], "circle", p), p + ".circle"),
                            boolean(field(bounds[i], "inside", p), p + ".inside")});
    }
    r.contains_infinity = boolean(field(j, "contains_infinity", path), path + ".contains_infinity");
    return r;
}

CircleMeasure parse_circle_measure(const Json& j, const std::string& path, double radius) {
    CircleMeasure m;
    m.radius = radius;
    if (const Json* r = optional_field(j, "radius", path)) {
        if (number(*r, path + ".radius") != radius) fail(path + ".radius", "does not match the circle");
    }
    if (const Json* atoms = optional_field(j, "atoms", path)) {
        for (std::size_t i = 0; i < array(*atoms, path + ".atoms").size(); ++i) {
            const std::string p = at(path + ".atoms", i);
            m.atoms.push_back({number(field((*atoms)[i], "angle", p), p + ".angle"),
                               parse_complex(field((*atoms)[i], "weight", p), p + ".weight")});
        }
    }
    if (const Json* d = optional_field(j, "density", path)) m.density = parse_coefficient_list(*d, path + ".density");
    guarded(path, [&] { validate(m); return 0; });
    return m;
}

Json check_json(const Check& c) {
    return {{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"strict", c.strict}, {"passed", c.passed()}};
}

VerificationReport parse_report(const Json& j, const std::string& path) {
    VerificationReport r;
    const auto samples = integer(field(j, "samples", path), path + ".samples");
    if (samples < 0) fail(path + ".samples", "must be non-negative");
    r.samples = static_cast<std::size_t>(samples);
    const std::string cp = path + ".checks";
    const Json& checks = array(field(j, "checks", path), cp);
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const std::string p = at(cp, i);
        const Json& name = field(checks[i], "name", p);
        if (!name.is_string()) fail(p + ".name", "expected a string");
        r.checks.push_back({name.get<std::string>(), number(field(checks[i], "value", p), p + ".value"),
                            number(field(checks[i], "limit", p), p + ".limit"),
                            boolean(field(checks[i], "strict", p), p + ".strict")});
    }
    if (const Json* m = optional_field(j, "bound_margins", path)) r.bound_margins = parse_number_list(*m, path + ".bound_margins");
    if (const Json* a = optional_field(j, "verification_annulus", path)) {
        const std::string p = path + ".verification_annulus";
        r.annulus = VerificationAnnulus{parse_complex(field(*a, "center", p), p + ".center"),
                                        number(field(*a, "rho1", p), p + ".rho1"),
                                        number(field(*a, "rho2", p), p + ".rho2")};
    }
    return r;
}

GlueMargins parse_margins(const Json& j, const std::string& path) {
    return {number(field(j, "gamma", path), path + ".gamma"), number(field(j, "eps", path), path + ".eps"),
            number(field(j, "delta", path), path + ".delta")};
}

std::vector<HoloFunction> parse_function_list(const Json& j, const std::string& path) {
    std::vector<HoloFunction> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(parse_function(j[i], at(path, i)));
    return out;
}

Json function_list(const std::vector<HoloFunction>& fs) {
    Json out = Json::array();
    for (const auto& f : fs) out.push_back(to_json(f));
    return out;
}

}  // namespace

BoundFunction BoundSpec::function() const {
    return trig ? BoundFunction::trig(cos, sin) : BoundFunction::constant(value);
}

ExtensionProblem ProblemFile::to_problem() const {
    ExtensionProblem p;
    p.domain = guarded("$.domain", [&] { return build_domain(outer, holes, punctures); });
    const std::size_t k = p.domain.curve_count();
    if (constraints.size() != k) fail("$.constraints", "expected one list per boundary curve");
    if (bounds.size() != k) fail("$.bounds", "expected one bound per boundary curve");
    if (puncture_values.size() != punctures.size()) fail("$.puncture_values", "expected one value per puncture");
    for (std::size_t j = 0; j < k; ++j) {
        BoundaryConstraint c;
        const Circle& circle = p.domain.component(j);
        for (const auto& e : constraints[j]) {
            c.points.push_back(circle.point_at(e.angle));
            c.values.push_back(e.value);
        }
        c.bound = guarded(at("$.bounds", j), [&] { return bounds[j].function(); });
        p.components.push_back(std::move(c));
    }
    p.puncture_values = puncture_values;
    return p;
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Circle& c) { return {{"center", to_json(c.center)}, {"radius", c.radius}}; }

Json to_json(const RegionDescriptor& r) {
    Json bounds = Json::array();
    for (const auto& b : r.bounds) bounds.push_back({{"circle", to_json(b.circle)}, {"inside", b.inside}});
    return {{"bounds", bounds}, {"contains_infinity", r.contains_infinity}};
}

Json to_json(const HoloFunction& f) {
    Json out = std::visit(
        [](const auto& n) -> Json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::Const>) {
                return {{"kind", "const"}, {"value", to_json(n.value)}};
            } else if constexpr (std::is_same_v<T, node::LaurentPoly>) {
                return {{"kind", "laurent"}, {"center", to_json(n.center)}, {"coefficients", coefficient_list(n.coefficients)}};
            } else if constexpr (std::is_same_v<T, node::DiscPeak>) {
                return {{"kind", "disc_peak"}, {"anchor", to_json(n.anchor)}, {"circle", to_json(n.circle)},
                        {"exponent", n.exponent}};
            } else if constexpr (std::is_same_v<T, node::Moebius>) {
                return {{"kind", "moebius"}, {"a", to_json(n.a)}, {"b", to_json(n.b)}, {"c", to_json(n.c)}, {"d", to_json(n.d)}};
            } else if constexpr (std::is_same_v<T, node::Sum>) {
                return {{"kind", "sum"}, {"terms", function_list(n.terms)}};
            } else if constexpr (std::is_same_v<T, node::Product>) {
                return {{"kind", "product"}, {"factors", function_list(n.factors)}};
            } else if constexpr (std::is_same_v<T, node::Scale>) {
                return {{"kind", "scale"}, {"factor", to_json(n.factor)}, {"child", to_json(*n.child)}};
            } else {
                return {{"kind", "compose"}, {"outer", to_json(*n.outer)}, {"inner", to_json(*n.inner)}};
            }
        },
        f.root());
    if (f.region()) out["region"] = to_json(*f.region());
    return out;
}

Complex parse_complex(const Json& j, const std::string& path) {
    return {number(field(j, "re", path), path + ".re"), number(field(j, "im", path), path + ".im")};
}

Circle parse_circle(const Json& j, const std::string& path) {
    return {parse_complex(field(j, "center", path), path + ".center"), number(field(j, "radius", path), path + ".radius")};
}

HoloFunction parse_function(const Json& j, const std::string& path) {
    const Json& kind_field = field(j, "kind", path);
    if (!kind_field.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = kind_field.get<std::string>();
    const auto sub = [&](const char* key) { return parse_function(field(j, key, path), path + "." + key); };
    const auto cx = [&](const char* key) { return parse_complex(field(j, key, path), path + "." + key); };

    HoloFunction f;
    if (kind == "const") {
        f = HoloFunction::constant(cx("value"));
    } else if (kind == "laurent") {
        f = HoloFunction::laurent(cx("center"), parse_coefficient_list(field(j, "coefficients", path), path + ".coefficients"));
    } else if (kind == "disc_peak") {
        const Complex anchor = cx("anchor");
        const Circle circle = parse_circle(field(j, "circle", path), path + ".circle");
        const auto n = integer(field(j, "exponent", path), path + ".exponent");
        f = guarded(path, [&] { return disc_peak(anchor, circle, n); });
    } else if (kind == "moebius") {
        const Complex a = cx("a"), b = cx("b"), c = cx("c"), d = cx("d");
        f = guarded(path, [&] { return HoloFunction::moebius(a, b, c, d); });
    } else if (kind == "sum") {
        f = HoloFunction::sum(parse_function_list(field(j, "terms", path), path + ".terms"));
    } else if (kind == "product") {
        f = HoloFunction::product(parse_function_list(field(j, "factors", path), path + ".factors"));
    } else if (kind == "scale") {
        f = HoloFunction::scale(cx("factor"), sub("child"));
    } else if (kind == "compose") {
        f = HoloFunction::compose(sub("outer"), sub("inner"));
    } else {
        fail(path + ".kind", "unknown function kind \"" + kind + "\"");
    }
    if (const Json* r = optional_field(j, "region", path)) f = f.with_region(parse_region(*r, path + ".region"));
    return f;
}

Json to_json(const ProblemFile& p) {
    Json holes = Json::array();
    for (const auto& h : p.holes) holes.push_back(to_json(h));
    Json constraints = Json::array();
    for (const auto& list : p.constraints) {
        Json entries = Json::array();
        for (const auto& e : list) entries.push_back({{"angle", e.angle}, {"value", to_json(e.value)}});
        constraints.push_back(entries);
    }
    Json bounds = Json::array();
    for (const auto& b : p.bounds) {
        if (b.trig) {
            bounds.push_back({{"kind", "trig"}, {"cos", b.cos}, {"sin", b.sin}});
        } else {
            bounds.push_back({{"kind", "const"}, {"value", b.value}});
        }
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "problem"},
            {"domain", {{"outer", to_json(p.outer)}, {"holes", holes}, {"punctures", complex_list(p.punctures)}}},
            {"constraints", constraints},
            {"bounds", bounds},
            {"puncture_values", complex_list(p.puncture_values)},
            {"options", options_json(p.options)}};
}

ProblemFile parse_problem(const Json& j) {
    check_schema(j, "problem");
    ProblemFile p;
    const Json& d = field(j, "domain", "$");
    p.outer = parse_circle(field(d, "outer", "$.domain"), "$.domain.outer");
    if (const Json* h = optional_field(d, "holes", "$.domain")) {
        for (std::size_t i = 0; i < array(*h, "$.domain.holes").size(); ++i) {
            p.holes.push_back(parse_circle((*h)[i], at("$.domain.holes", i)));
        }
    }
    if (const Json* q = optional_field(d, "punctures", "$.domain")) p.punctures = parse_complex_list(*q, "$.domain.punctures");
    const std::size_t k = 1 + p.holes.size();

    // Circles indexed like Domain::component, for converting "point" entries.
    std::vector<Circle> circles{p.outer};
    circles.insert(circles.end(), p.holes.begin(), p.holes.end());

    p.constraints.assign(k, {});
    if (const Json* c = optional_field(j, "constraints", "$")) {
        if (array(*c, "$.constraints").size() != k) fail("$.constraints", "expected one list per boundary curve");
        for (std::size_t m = 0; m < k; ++m) {
            const std::string lp = at("$.constraints", m);
            for (std::size_t i = 0; i < array((*c)[m], lp).size(); ++i) {
                const Json& e = (*c)[m][i];
                const std::string p_i = at(lp, i);
                ConstraintEntry entry;
                if (const Json* a = optional_field(e, "angle", p_i)) {
                    entry.angle = number(*a, p_i + ".angle");
                } else if (const Json* z = optional_field(e, "point", p_i)) {
                    const Complex pt = parse_complex(*z, p_i + ".point");
                    const Circle& circle = circles[m];
                    if (std::abs(std::abs(pt - circle.center) - circle.radius) > 1e-10 * std::max(1.0, circle.radius)) {
                        fail(p_i + ".point", "not on the boundary curve");
                    }
                    entry.angle = circle.angle_of(pt);
                } else {
                    fail(p_i, "needs \"angle\" or \"point\"");
                }
                entry.value = parse_complex(field(e, "value", p_i), p_i + ".value");
                p.constraints[m].push_back(entry);
            }
        }
    }

    p.bounds.assign(k, {});
    if (const Json* b = optional_field(j, "bounds", "$")) {
        if (array(*b, "$.bounds").size() != k) fail("$.bounds", "expected one bound per boundary curve");
        for (std::size_t m = 0; m < k; ++m) {
            const std::string bp = at("$.bounds", m);
            const Json& kind = field((*b)[m], "kind", bp);
            BoundSpec spec;
            if (kind == "const") {
                spec.value = number(field((*b)[m], "value", bp), bp + ".value");
            } else if (kind == "trig") {
                spec.trig = true;
                spec.cos = parse_number_list(field((*b)[m], "cos", bp), bp + ".cos");
                if (const Json* s = optional_field((*b)[m], "sin", bp)) spec.sin = parse_number_list(*s, bp + ".sin");
            } else {
                fail(bp + ".kind", "expected \"const\" or \"trig\"");
            }
            p.bounds[m] = std::move(spec);
        }
    }

    if (const Json* w = optional_field(j, "puncture_values", "$")) p.puncture_values = parse_complex_list(*w, "$.puncture_values");
    if (const Json* o = optional_field(j, "options", "$")) p.options = parse_options(*o, "$.options");
    p.to_problem();  // surfaces shape and geometry errors here
    return p;
}

Json to_json(const CircleMeasure& m) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms) atoms.push_back({{"angle", a.angle}, {"weight", to_json(a.weight)}});
    return {{"radius", m.radius}, {"atoms", atoms}, {"density", coefficient_list(m.density)}};
}

Json to_json(const AnnulusMeasure& m) {
    return {{"schema_version", kSchemaVersion},
            {"kind", "annulus_measure"},
            {"r0", m.r0},
            {"inner", to_json(m.inner)},
            {"outer", to_json(m.outer)}};
}

AnnulusMeasure parse_measure(const Json& j) {
    check_schema(j, "annulus_measure");
    AnnulusMeasure m;
    m.r0 = number(field(j, "r0", "$"), "$.r0");
    if (!(m.r0 > 0.0 && m.r0 < 1.0)) fail("$.r0", "must lie in (0, 1)");
    m.inner = parse_circle_measure(field(j, "inner", "$"), "$.inner", m.r0);
    m.outer = parse_circle_measure(field(j, "outer", "$"), "$.outer", 1.0);
    return m;
}

Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    Json out = {{"samples", r.samples}, {"passed", r.passed()}, {"checks", checks}};
    if (r.bound_margins) out["bound_margins"] = *r.bound_margins;
    if (r.annulus) {
        out["verification_annulus"] = {{"center", to_json(r.annulus->center)}, {"rho1", r.annulus->rho1}, {"rho2", r.annulus->rho2}};
    }
    return out;
}

Json to_json(const GlueMargins& m) { return {{"gamma", m.gamma}, {"eps", m.eps}, {"delta", m.delta}}; }

ResultFile make_result(const ProblemFile& problem, const ExtensionResult& r) {
    return {problem, r.punctured, r.margins, r.function, r.components, r.separators, r.solver_rounds, r.report};
}

Json to_json(const ResultFile& r) {
    return {{"schema_version", kSchemaVersion},
            {"kind", "result"},
            {"mode", r.punctured ? "punctures" : "glue"},
            {"problem", to_json(r.problem)},
            {"margins", to_json(r.margins)},
            {"F", to_json(r.function)},
            {"components", function_list(r.components)},
            {"separators", function_list(r.separators)},
            {"solver_rounds", r.solver_rounds},
            {"report", to_json(r.report)}};
}

ResultFile parse_result(const Json& j) {
    check_schema(j, "result");
    ResultFile r;
    const Json& mode = field(j, "mode", "$");
    if (mode == "glue") {
        r.punctured = false;
    } else if (mode == "punctures") {
        r.punctured = true;
    } else {
        fail("$.mode", "expected \"glue\" or \"punctures\"");
    }
    try {
        r.problem = parse_problem(field(j, "problem", "$"));
    } catch (const Error& e) {
        fail("$.problem", e.what());
    }
    r.margins = parse_margins(field(j, "margins", "$"), "$.margins");
    r.function = parse_function(field(j, "F", "$"), "$.F");
    r.components = parse_function_list(field(j, "components", "$"), "$.components");
    r.separators = parse_function_list(field(j, "separators", "$"), "$.separators");
    r.solver_rounds = static_cast<int>(integer(field(j, "solver_rounds", "$"), "$.solver_rounds"));
    r.report = parse_report(field(j, "report", "$"), "$.report");
    return r;
}

Json report_json(const ResultFile& r) {
    const auto value_of = [&](const char* name) -> Json {
        for (const auto& c : r.report.checks) {
            if (c.name == name) return c.value;
        }
        return nullptr;
    };
    return {{"schema_version", kSchemaVersion},
            {"kind", "report"},
            {"mode", r.punctured ? "punctures" : "glue"},
            {"margins", to_json(r.margins)},
            {"residuals", {{"interpolation", value_of("interpolation")}, {"holomorphy", value_of("holomorphy")}}},
            {"solver_rounds", r.solver_rounds},
            {"verification", to_json(r.report)}};
}

VerificationReport reverify(const ResultFile& r, std::size_t samples) {
    const ExtensionProblem p = r.problem.to_problem();
    if (r.punctured) return verify_punctured(p, r.function, samples);
    return verify_glue(p, r.function, r.components, r.separators, r.margins, samples);
}

Json decomposition_json(const AnnulusMeasure& m, const Decomposition& d) {
    Json table = Json::array();
    for (int j = -d.order; j <= d.order; ++j) {
        table.push_back({{"index", j},
                         {"mu0", to_json(fourier_coefficient(m.inner, j))},
                         {"mu1", to_json(fourier_coefficient(m.outer, j))},
                         {"lambda0", to_json(fourier_coefficient(d.lambda0, j))},
                         {"eta0", to_json(fourier_coefficient(d.eta0, j))},
                         {"eta1", to_json(fourier_coefficient(d.eta1, j))},
                         {"lambda1", to_json(fourier_coefficient(d.lambda1, j))}});
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "decomposition"},
            {"r0", m.r0},
            {"order", d.order},
            {"hypothesis_defect", d.hypothesis_defect},
            {"tail_bound", d.tail_bound},
            {"pieces",
             {{"lambda0", to_json(d.lambda0)},
              {"eta0", to_json(d.eta0)},
              {"eta1", to_json(d.eta1)},
              {"lambda1", to_json(d.lambda1)}}},
            {"coefficients", table}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return Json::parse(text.str());
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace holext::io
