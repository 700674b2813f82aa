#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holext/gluing.hpp"
#include "holext/measure.hpp"

namespace holext::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ConstraintEntry {
    double angle = 0.0;
    Complex value;
};

struct BoundSpec {
    bool trig = false;
    double value = 1.0;
    std::vector<double> cos;
    std::vector<double> sin;

    BoundFunction function() const;
};

/// Problem file contents, kept in file form so angles round-trip exactly.
struct ProblemFile {
    Circle outer;
    std::vector<Circle> holes;
    std::vector<Complex> punctures;
    std::vector<std::vector<ConstraintEntry>> constraints;  ///< per curve
    std::vector<BoundSpec> bounds;                          ///< per curve
    std::vector<Complex> puncture_values;
    SolverOptions options;

    /// Throws ParseError naming the field for geometry or shape problems.
    ExtensionProblem to_problem() const;
};

// Every parse_* throws Error(ParseError) with the JSON path of the bad field.

Json to_json(Complex z);
Json to_json(const Circle& c);
Json to_json(const RegionDescriptor& r);
Json to_json(const HoloFunction& f);
Json to_json(const ProblemFile& p);
Json to_json(const CircleMeasure& m);
Json to_json(const AnnulusMeasure& m);
Json to_json(const VerificationReport& r);
Json to_json(const GlueMargins& m);

Complex parse_complex(const Json& j, const std::string& path);
Circle parse_circle(const Json& j, const std::string& path);
HoloFunction parse_function(const Json& j, const std::string& path = "F");
ProblemFile parse_problem(const Json& j);
AnnulusMeasure parse_measure(const Json& j);

/// Stored output of a solve: the problem it answers plus the expression trees.
struct ResultFile {
    ProblemFile problem;
    bool punctured = false;
    GlueMargins margins;
    HoloFunction function;
    std::vector<HoloFunction> components;
    std::vector<HoloFunction> separators;
    int solver_rounds = 0;
    VerificationReport report;
};

ResultFile make_result(const ProblemFile& problem, const ExtensionResult& r);
Json to_json(const ResultFile& r);
ResultFile parse_result(const Json& j);

/// Report file: the verification record plus margins and solver rounds.
Json report_json(const ResultFile& r);

/// Re-runs the verification checks of a stored result.
VerificationReport reverify(const ResultFile& r, std::size_t samples);

Json decomposition_json(const AnnulusMeasure& m, const Decomposition& d);

/// Canonical text: two-space indent and a trailing newline.
std::string dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// printf("%.17g")
std::string format_double(double x);

}  // namespace holext::io
