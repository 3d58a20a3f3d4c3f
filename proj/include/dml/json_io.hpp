#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "dml/diagnostics.hpp"

namespace dml {

using ordered_json = nlohmann::ordered_json;

// Doubles that JSON cannot hold (inf, nan) are emitted as strings.
ordered_json json_double(double d);

ordered_json log_json(const LogOfRational& x);
ordered_json point_set_json(const AlgebraicPointSet& s);
ordered_json conjugacy_json(const ConjugacyResult& r);
ordered_json orbit_json(const OrbitSegment& o);
ordered_json orbit_json(const ProjOrbitSegment& o);
ordered_json preperiodic_json(const PreperiodicityVerdict& v);
ordered_json height_json(const HeightValue& weil, const CanonicalHeightEstimate* canonical);
ordered_json certificate_json(const GrowthCertificate& c);
ordered_json certificate_json(const GrowthCertificate& c, const BadPlaceSet& table);
ordered_json verification_json(const VerificationReport& r);
ordered_json return_set_json(const ReturnSetReport& r);
ordered_json silverman_json(const SilvermanTrace& t);
ordered_json boundary_json(const BoundaryTrace& t);
ordered_json contradiction_json(const ContradictionReport& r);

// CSV with a header row and LF line endings; exact values as rational
// strings, log columns at the trace's reporting precision.
std::string orbit_csv(const OrbitSegment& o);
std::string orbit_csv(const ProjOrbitSegment& o);
std::string silverman_csv(const SilvermanTrace& t);
std::string boundary_csv(const BoundaryTrace& t);

// One input schema for every command: {f, g, x0, y0, curve, options}.
// Coefficient lists are descending ("3,0,1" is 3x^2 + 1); maps pair two
// lists with ';'. Points are "u:w", "inf" or a rational. Curves are
// {"m", "n", "coeffs"} grids (rows by x-power, ascending both ways) or a
// bare grid. Fields irrelevant to a command are reported in `warnings`
// by the caller that knows the command.
struct ProblemSpec {
    std::optional<AffinePolyMap> f;
    std::optional<ProjRatMap> g;
    std::optional<Rat> x0;
    std::optional<ProjPoint> y0;
    std::optional<ProjPoint> p;  // target point for silverman traces
    std::optional<PlaneCurve> curve;
    std::optional<Place> place;

    long nmax = 12;        // doubles as every search/preperiodicity budget
    long precision = 17;   // decimal digits in reported logs
    long period = 1;       // m for certify-progression
    long n_iter = 10;      // canonical height iterations
    long n_hi = -1;        // verify-growth upper row; -1 means N + 8
    unsigned long seed = 1;

    OrbitCaps orbit_caps;
    FactorBudget factor_budget;
    IterateCaps iterate_caps;

    std::vector<std::string> fields;    // top-level keys present in the input
    std::vector<std::string> warnings;  // unknown keys and similar, for stderr
};

ordered_json load_json(const std::string& path);  // file read + parse, errc::parse on failure
ProblemSpec parse_problem(const ordered_json& j, const std::string& location);
ProblemSpec load_problem(const std::string& path);

}  // namespace dml
