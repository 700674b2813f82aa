#include "holext/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "holext/conformal.hpp"
#include "holext/error.hpp"
#include "holext/io.hpp"

namespace holext {

namespace {

struct Flags {
    std::string input;
    std::string out;
    std::string csv;
    std::string report;
    std::optional<std::size_t> samples;
    std::optional<double> safety;
    int truncation = 64;
    bool seedless = false;
};

std::string complex_text(Complex z) { return io::format_double(z.real()) + " " + io::format_double(z.imag()); }

std::string boundary_csv(const ExtensionProblem& p, const HoloFunction& f, std::size_t n) {
    std::string text = "component,angle,re_F,im_F,abs_F,M\n";
    for (std::size_t j = 0; j < p.domain.curve_count(); ++j) {
        const Circle& c = p.domain.component(j);
        const auto points = sample_boundary(c, n);
        for (std::size_t s = 0; s < n; ++s) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n);
            const Complex v = evaluate(f, points[s]);
            text += std::to_string(j) + "," + io::format_double(angle) + "," + io::format_double(v.real()) + "," +
                    io::format_double(v.imag()) + "," + io::format_double(std::abs(v)) + "," +
                    io::format_double(p.components[j].bound.at(c, points[s])) + "\n";
        }
    }
    return text;
}

void print_checks(const VerificationReport& r, std::ostream& out) {
    for (const auto& c : r.checks) {
        out << c.name << " " << io::format_double(c.value) << (c.strict ? " < " : " <= ") << io::format_double(c.limit)
            << (c.passed() ? " pass" : " FAIL") << "\n";
    }
}

int report_outcome(const VerificationReport& r, std::ostream& err) {
    if (const Check* c = r.first_failure()) {
        err << "verification failed: check " << c->name << " = " << io::format_double(c->value) << "\n";
        return 2;
    }
    return 0;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    io::ProblemFile problem = io::parse_problem(io::read_json_file(f.input));
    if (f.samples) problem.options.boundary_samples = *f.samples;
    if (f.safety) problem.options.safety = *f.safety;
    try {
        validate(problem.options);
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, std::string("options: ") + e.what());
    }
    const ExtensionProblem p = problem.to_problem();
    const ExtensionResult r = p.domain.puncture_count() > 0 ? interpolate_with_punctures(p, problem.options)
                                                           : glue(p, problem.options);
    const io::ResultFile result = io::make_result(problem, r);
    io::write_text_file(f.out, io::dump(io::to_json(result)));
    io::write_text_file(f.report.empty() ? f.out + ".report.json" : f.report, io::dump(io::report_json(result)));
    if (!f.csv.empty()) io::write_text_file(f.csv, boundary_csv(p, r.function, problem.options.boundary_samples));

    print_checks(r.report, out);
    out << "gamma " << io::format_double(r.margins.gamma) << "\neps " << io::format_double(r.margins.eps) << "\ndelta "
        << io::format_double(r.margins.delta) << "\nsolver_rounds " << r.solver_rounds << "\nwall_time_seconds "
        << io::format_double(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()) << "\n";
    return report_outcome(r.report, err);
}

int cmd_decompose(const Flags& f, std::ostream& out) {
    if (f.truncation < 0) throw Error(ErrorKind::ParseError, "--truncation must be non-negative");
    const AnnulusMeasure m = io::parse_measure(io::read_json_file(f.input));
    const Decomposition d = decompose(m, f.truncation);
    io::write_text_file(f.out, io::dump(io::decomposition_json(m, d)));
    out << "hypothesis_defect " << io::format_double(d.hypothesis_defect) << "\ntail_bound "
        << io::format_double(d.tail_bound) << "\n";
    return 0;
}

int cmd_map(const Flags& f, std::ostream& out) {
    const io::Json j = io::read_json_file(f.input);
    const io::Json* domain = &j;
    std::string path = "$";
    if (j.is_object() && j.contains("domain")) {
        domain = &j["domain"];
        path = "$.domain";
    }
    if (!domain->is_object() || !domain->contains("outer")) throw Error(ErrorKind::ParseError, path + ".outer: missing");
    const Circle outer = io::parse_circle((*domain)["outer"], path + ".outer");
    if (!domain->contains("holes") || !(*domain)["holes"].is_array() || (*domain)["holes"].size() != 1) {
        throw Error(ErrorKind::ParseError, path + ".holes: map needs exactly one hole");
    }
    const Circle inner = io::parse_circle((*domain)["holes"][0], path + ".holes[0]");
    const AnnulusChart chart = annulus_chart(outer, inner);

    out << "a " << complex_text(chart.map.a()) << "\nb " << complex_text(chart.map.b()) << "\nc "
        << complex_text(chart.map.c()) << "\nd " << complex_text(chart.map.d()) << "\nr0 "
        << io::format_double(chart.r0) << "\n";
    if (!f.csv.empty()) {
        const std::size_t n = f.samples.value_or(256);
        std::string text = "curve,source_re,source_im,image_re,image_im\n";
        const Circle circles[2] = {outer, inner};
        for (int c = 0; c < 2; ++c) {
            for (const Complex z : sample_boundary(circles[c], n)) {
                const Complex w = chart.map(z);
                text += (c == 0 ? "outer," : "inner,") + io::format_double(z.real()) + "," + io::format_double(z.imag()) +
                        "," + io::format_double(w.real()) + "," + io::format_double(w.imag()) + "\n";
            }
        }
        io::write_text_file(f.csv, text);
    }
    return 0;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
    const io::ResultFile r = io::parse_result(io::read_json_file(f.input));
    const std::size_t n = f.samples.value_or(r.problem.options.boundary_samples);
    const VerificationReport report = io::reverify(r, n);
    print_checks(report, out);
    if (!f.csv.empty()) io::write_text_file(f.csv, boundary_csv(r.problem.to_problem(), r.function, n));
    return report_outcome(report, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounded holomorphic extension on circle domains", "holext"};
    app.require_subcommand(1);
    Flags f;

    const auto add_input = [&](CLI::App* cmd, const char* what) { cmd->add_option("input", f.input, what)->required(); };
    const auto add_samples = [&](CLI::App* cmd) {
        cmd->add_option_function<std::size_t>("--samples", [&](const std::size_t& n) { f.samples = n; },
                                              "Boundary samples per curve")
            ->check(CLI::PositiveNumber);
    };
    const auto add_seedless = [&](CLI::App* cmd) {
        cmd->add_flag("--seedless", f.seedless, "Assert that no randomness is used (always true)");
    };

    CLI::App* solve = app.add_subcommand("solve", "Solve an extension problem");
    add_input(solve, "Problem file");
    solve->add_option("--out", f.out, "Result file")->required();
    solve->add_option("--report", f.report, "Report file (default: <out>.report.json)");
    solve->add_option("--csv", f.csv, "Boundary samples of F as CSV");
    add_samples(solve);
    solve->add_option_function<double>("--safety", [&](const double& s) { f.safety = s; }, "Bound safety factor");
    add_seedless(solve);

    CLI::App* dec = app.add_subcommand("decompose", "Decompose an annulus measure");
    add_input(dec, "Measure file");
    dec->add_option("--out", f.out, "Output file")->required();
    dec->add_option("--truncation", f.truncation, "Coefficient truncation order J");
    add_seedless(dec);

    CLI::App* map = app.add_subcommand("map", "Annulus chart of a two-circle domain");
    add_input(map, "Domain or problem file");
    map->add_option("--csv", f.csv, "Boundary correspondence as CSV");
    add_samples(map);
    add_seedless(map);

    CLI::App* verify = app.add_subcommand("verify", "Re-run the checks of a stored result");
    add_input(verify, "Result file");
    verify->add_option("--csv", f.csv, "Boundary samples of F as CSV");
    add_samples(verify);
    add_seedless(verify);

    std::vector<const char*> argv{"holext"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, x;
        const int code = app.exit(e, o, x);
        out << o.str();
        err << x.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve) return cmd_solve(f, out, err);
        if (*dec) return cmd_decompose(f, out);
        if (*map) return cmd_map(f, out);
        return cmd_verify(f, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace holext
