#include "dml/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dml {

ordered_json json_double(double d) {
    if (std::isfinite(d)) return d;
    if (std::isnan(d)) return "nan";
    return d > 0 ? "inf" : "-inf";
}

ordered_json log_json(const LogOfRational& x) {
    return {{"arg", to_string(x.arg)}, {"root", to_string(x.root)}, {"approx", x.approx()}};
}

ordered_json point_set_json(const AlgebraicPointSet& s) {
    ordered_json rational = ordered_json::array();
    for (const ProjPoint& p : s.rational) rational.push_back(p.str());
    ordered_json quadratic = ordered_json::array();
    for (const MinPoly2& q : s.quadratic) quadratic.push_back(q.str());
    return {{"rational", std::move(rational)}, {"quadratic", std::move(quadratic)}};
}

ordered_json conjugacy_json(const ConjugacyResult& r) {
    const char* kind = r.kind == ConjugacyKind::NoIterate  ? "NoIterate"
                       : r.kind == ConjugacyKind::GItself ? "GItself"
                                                          : "SquareOnly";
    return {{"kind", kind}, {"witness", point_set_json(r.witness)}};
}

namespace {

ordered_json cycle_json(const std::optional<CycleInfo>& c) {
    if (!c) return nullptr;
    return ordered_json{{"tail", c->tail}, {"period", c->period}};
}

}  // namespace

ordered_json orbit_json(const OrbitSegment& o) {
    ordered_json values = ordered_json::array();
    for (const Rat& v : o.values) values.push_back(to_string(v));
    return {{"start", to_string(o.start)},
            {"values", std::move(values)},
            {"cycle", cycle_json(o.cycle)},
            {"truncated", o.truncated}};
}

ordered_json orbit_json(const ProjOrbitSegment& o) {
    ordered_json values = ordered_json::array();
    for (const ProjPoint& p : o.points) values.push_back(p.str());
    return {{"start", o.start.str()},
            {"values", std::move(values)},
            {"cycle", cycle_json(o.cycle)},
            {"truncated", o.truncated}};
}

ordered_json preperiodic_json(const PreperiodicityVerdict& v) {
    switch (v.kind) {
        case PreperiodicityVerdict::Kind::Preperiodic:
            return {{"kind", "Preperiodic"},
                    {"tail", v.tail},
                    {"period", v.period},
                    {"budget_spent", v.budget_spent}};
        case PreperiodicityVerdict::Kind::NonPreperiodic:
            return {{"kind", "NonPreperiodic"},
                    {"witness_index", v.witness_index},
                    {"witness_arg", to_string(v.witness_arg)},
                    {"threshold_arg", to_string(v.threshold_arg)},
                    {"budget_spent", v.budget_spent}};
        case PreperiodicityVerdict::Kind::Unknown:
        default:
            return {{"kind", "Unknown"}, {"budget_spent", v.budget_spent}};
    }
}

ordered_json height_json(const HeightValue& weil, const CanonicalHeightEstimate* canonical) {
    ordered_json out{{"weil", {{"arg", to_string(weil.arg)}, {"approx", weil.approx}}}};
    if (canonical) {
        out["canonical"] = {{"arg", to_string(canonical->arg)},
                            {"n", canonical->n},
                            {"scale", to_string(canonical->scale)},
                            {"estimate", canonical->estimate},
                            {"error_bound", canonical->error_bound}};
    }
    return out;
}

ordered_json certificate_json(const GrowthCertificate& c) {
    return {{"place", c.place.str()}, {"N", c.n0},          {"in_S", c.in_s},
            {"C_v", to_string(c.c_v)}, {"A1", log_json(c.a1)}, {"B1", log_json(c.b1)},
            {"A2", log_json(c.a2)},    {"B2", log_json(c.b2)}, {"c1", log_json(c.c1)},
            {"c2", log_json(c.c2)},    {"N''", c.n2}};
}

ordered_json certificate_json(const GrowthCertificate& c, const BadPlaceSet& table) {
    ordered_json out = certificate_json(c);
    ordered_json ct = ordered_json::object();
    for (const auto& [place, threshold] : table.thresholds) ct[place.str()] = to_string(threshold);
    out["C"] = std::move(ct);
    return out;
}

ordered_json verification_json(const VerificationReport& r) {
    ordered_json rows = ordered_json::array();
    for (const CheckRow& row : r.rows)
        rows.push_back({{"n", row.n}, {"check", row.check}, {"ok", row.ok}, {"detail", row.detail}});
    return {{"valid", r.valid}, {"rows", std::move(rows)}};
}

ordered_json return_set_json(const ReturnSetReport& r) {
    ordered_json structure = ordered_json::array();
    for (const Progression& p : r.progressions) {
        std::string status =
            p.certified ? "CertifiedForward(" + std::to_string(p.certified_m) + ")" : "Observed";
        structure.push_back({{"start", p.start}, {"period", p.period}, {"status", status}});
    }
    std::string completeness = r.complete ? "CompleteByPeriodicity"
                                          : "TruncatedAt(" + std::to_string(r.scanned_to) + ")";
    return {{"observed", r.observed},
            {"completeness", completeness},
            {"finite_part", r.finite_part},
            {"structure", std::move(structure)},
            {"scanned_to", r.scanned_to}};
}

ordered_json silverman_json(const SilvermanTrace& t) {
    ordered_json terms = ordered_json::array();
    for (const SilvermanTerm& s : t.terms)
        terms.push_back({{"n", s.n},
                         {"capped", to_string(s.capped)},
                         {"at_infinity", s.at_infinity},
                         {"value", s.value_str}});
    return {{"g", t.g.str()},
            {"y0", t.y0.str()},
            {"p", t.p.str()},
            {"place", t.place.str()},
            {"precision", t.precision},
            {"terms", std::move(terms)},
            {"warnings", t.warnings}};
}

namespace {

ordered_json infinity_json(const InfinityData& info) {
    ordered_json phi_inf = ordered_json::array();
    for (const Rat& c : info.phi_inf.coeffs()) phi_inf.push_back(to_string(c));
    ordered_json roots = ordered_json::array();
    for (const auto& [root, mult] : info.rational_roots)
        roots.push_back({{"root", to_string(root)}, {"multiplicity", mult}});
    return {{"m", info.m},
            {"phi_inf", std::move(phi_inf)},
            {"a_mn_nonzero", info.a_mn_nonzero},
            {"roots", std::move(roots)}};
}

}  // namespace

ordered_json boundary_json(const BoundaryTrace& t) {
    ordered_json rows = ordered_json::array();
    for (const BoundaryRow& r : t.rows) {
        ordered_json dists = ordered_json::array();
        for (const Rat& d : r.root_dists) dists.push_back(to_string(d));
        rows.push_back({{"n", r.n},
                        {"x_abs", to_string(r.x_abs)},
                        {"phi_inf_abs", to_string(r.phi_inf_abs)},
                        {"y_infinite", r.y_infinite},
                        {"dists", std::move(dists)}});
    }
    return {{"place", t.place.str()},
            {"normalized", t.normalized},
            {"mobius", t.mobius.str()},
            {"g", t.g.str()},
            {"y0", t.y0.str()},
            {"infinity", infinity_json(t.info)},
            {"rows", std::move(rows)},
            {"scanned_to", t.scanned_to}};
}

ordered_json contradiction_json(const ContradictionReport& r) {
    ordered_json hypotheses = ordered_json::array();
    for (const Hypothesis& h : r.hypotheses)
        hypotheses.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
    ordered_json pairs = ordered_json::array();
    for (const GrowthPair& p : r.pairs)
        pairs.push_back({{"n", p.n},
                         {"root_index", p.root_index},
                         {"delta", to_string(p.delta)},
                         {"neg_log", json_double(p.neg_log)},
                         {"bound", json_double(p.bound)},
                         {"comparison", p.comparison},
                         {"backing", p.backing}});
    ordered_json silverman = ordered_json::array();
    for (const SilvermanTrace& t : r.silverman) silverman.push_back(silverman_json(t));
    return {{"hypotheses", std::move(hypotheses)},
            {"heuristic", r.heuristic},
            {"vacuous", r.vacuous},
            {"certificate", r.certificate ? certificate_json(*r.certificate) : ordered_json(nullptr)},
            {"boundary", r.boundary ? boundary_json(*r.boundary) : ordered_json(nullptr)},
            {"silverman", std::move(silverman)},
            {"pairs", std::move(pairs)},
            {"notes", r.notes}};
}

std::string orbit_csv(const OrbitSegment& o) {
    std::string out = "n,value\n";
    for (size_t n = 0; n < o.values.size(); ++n)
        out += std::to_string(n) + "," + to_string(o.values[n]) + "\n";
    return out;
}

std::string orbit_csv(const ProjOrbitSegment& o) {
    std::string out = "n,value\n";
    for (size_t n = 0; n < o.points.size(); ++n)
        out += std::to_string(n) + "," + o.points[n].str() + "\n";
    return out;
}

std::string silverman_csv(const SilvermanTrace& t) {
    std::string out = "n,capped,value\n";
    for (const SilvermanTerm& s : t.terms)
        out += std::to_string(s.n) + "," + to_string(s.capped) + "," + s.value_str + "\n";
    return out;
}

std::string boundary_csv(const BoundaryTrace& t) {
    std::string out = "n,x_abs,phi_inf_abs";
    for (size_t s = 1; s <= t.info.rational_roots.size(); ++s)
        out += ",dist_" + std::to_string(s);
    out += "\n";
    for (const BoundaryRow& r : t.rows) {
        out += std::to_string(r.n) + "," + to_string(r.x_abs) + "," + to_string(r.phi_inf_abs);
        for (const Rat& d : r.root_dists) out += "," + to_string(d);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

Rat rat_of(const ordered_json& j, const std::string& loc) {
    if (j.is_string()) return parse_rational(j.get<std::string>(), loc);
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    fail(errc::parse, "expected a rational string or an integer", loc);
}

long long_of(const ordered_json& j, const std::string& loc) {
    if (!j.is_number_integer()) fail(errc::parse, "expected an integer", loc);
    return static_cast<long>(j.get<long long>());
}

// descending coefficient list: "3,0,1" or ["3", 0, 1]
std::vector<Rat> coeff_list(const ordered_json& j, const std::string& loc) {
    std::vector<Rat> descending;
    if (j.is_string()) {
        for (const std::string& part : split(j.get<std::string>(), ','))
            descending.push_back(parse_rational(strip(part), loc));
    } else if (j.is_array()) {
        size_t k = 0;
        for (const auto& item : j) descending.push_back(rat_of(item, loc + "[" + std::to_string(k++) + "]"));
    } else {
        fail(errc::parse, "expected a coefficient list (string or array)", loc);
    }
    if (descending.empty()) fail(errc::parse, "empty coefficient list", loc);
    return {descending.rbegin(), descending.rend()};  // ascending
}

AffinePolyMap f_of(const ordered_json& j, const std::string& loc) {
    return AffinePolyMap(coeff_list(j, loc));
}

ProjRatMap g_of(const ordered_json& j, const std::string& loc) {
    std::vector<Rat> g1, g2;
    if (j.is_string()) {
        auto parts = split(j.get<std::string>(), ';');
        if (parts.size() != 2) fail(errc::parse, "expected 'G1;G2'", loc);
        g1 = coeff_list(ordered_json(parts[0]), loc + " (G1)");
        g2 = coeff_list(ordered_json(parts[1]), loc + " (G2)");
    } else if (j.is_array() && j.size() == 2) {
        g1 = coeff_list(j[0], loc + "[0]");
        g2 = coeff_list(j[1], loc + "[1]");
    } else if (j.is_object() && j.contains("g1") && j.contains("g2")) {
        g1 = coeff_list(j["g1"], loc + ".g1");
        g2 = coeff_list(j["g2"], loc + ".g2");
    } else {
        fail(errc::parse, "expected 'G1;G2', [G1, G2] or {g1, g2}", loc);
    }
    return ProjRatMap::from_rational_coeffs(g1, g2);
}

ProjPoint point_of(const ordered_json& j, const std::string& loc) {
    if (j.is_string()) return ProjPoint::parse(j.get<std::string>(), loc);
    if (j.is_number_integer()) return ProjPoint::from_rational(rat_of(j, loc));
    fail(errc::parse, "expected a point ('u:w', 'inf' or a rational)", loc);
}

PlaneCurve curve_of(const ordered_json& j, const std::string& loc) {
    const ordered_json* grid = &j;
    if (j.is_object()) {
        if (!j.contains("coeffs")) fail(errc::parse, "curve object needs 'coeffs'", loc);
        grid = &j["coeffs"];
    }
    if (!grid->is_array() || grid->empty())
        fail(errc::parse, "curve needs a nonempty coefficient grid", loc);
    std::vector<std::vector<Rat>> rows;
    size_t i = 0;
    for (const auto& row : *grid) {
        std::string rloc = loc + ".coeffs[" + std::to_string(i) + "]";
        if (!row.is_array()) fail(errc::parse, "curve rows must be arrays", rloc);
        rows.emplace_back();
        size_t k = 0;
        for (const auto& item : row)
            rows.back().push_back(rat_of(item, rloc + "[" + std::to_string(k++) + "]"));
        ++i;
    }
    if (j.is_object()) {
        if (j.contains("m") && long_of(j["m"], loc + ".m") != static_cast<long>(rows.size()) - 1)
            fail(errc::parse, "declared m does not match the grid", loc + ".m");
        if (j.contains("n") &&
            long_of(j["n"], loc + ".n") != static_cast<long>(rows.front().size()) - 1)
            fail(errc::parse, "declared n does not match the grid", loc + ".n");
    }
    try {
        return PlaneCurve(std::move(rows));
    } catch (const error& e) {
        fail(errc::parse, e.what(), loc);
    }
}

Place place_of(const ordered_json& j, const std::string& loc) {
    if (j.is_string()) return Place::parse(j.get<std::string>(), loc);
    if (j.is_number_integer()) return Place::parse(std::to_string(j.get<long long>()), loc);
    fail(errc::parse, "expected 'inf' or a prime", loc);
}

void apply_options(ProblemSpec& spec, const ordered_json& j, const std::string& loc) {
    if (!j.is_object()) fail(errc::parse, "options must be an object", loc);
    for (const auto& [key, value] : j.items()) {
        std::string kloc = loc + "." + key;
        if (key == "nmax") {
            spec.nmax = long_of(value, kloc);
            if (spec.nmax < 0) fail(errc::parse, "nmax must be >= 0", kloc);
        } else if (key == "precision") {
            spec.precision = long_of(value, kloc);
            if (spec.precision < 1 || spec.precision > 10000)
                fail(errc::parse, "precision out of range", kloc);
        } else if (key == "place") {
            spec.place = place_of(value, kloc);
        } else if (key == "seed") {
            spec.seed = static_cast<unsigned long>(long_of(value, kloc));
            spec.factor_budget.seed = spec.seed;
        } else if (key == "period") {
            spec.period = long_of(value, kloc);
            if (spec.period < 1) fail(errc::parse, "period must be >= 1", kloc);
        } else if (key == "n_iter") {
            spec.n_iter = long_of(value, kloc);
            if (spec.n_iter < 1) fail(errc::parse, "n_iter must be >= 1", kloc);
        } else if (key == "n_hi") {
            spec.n_hi = long_of(value, kloc);
        } else if (key == "value_bits") {
            spec.orbit_caps.value_bits = static_cast<unsigned long>(long_of(value, kloc));
        } else if (key == "memo_bits") {
            spec.orbit_caps.memo_bits = static_cast<unsigned long>(long_of(value, kloc));
        } else if (key == "coeff_bits") {
            spec.iterate_caps.coeff_bits = static_cast<unsigned long>(long_of(value, kloc));
        } else if (key == "max_terms") {
            spec.iterate_caps.max_terms = long_of(value, kloc);
        } else if (key == "trial_limit") {
            spec.factor_budget.trial_limit = static_cast<unsigned long>(long_of(value, kloc));
        } else if (key == "rho_iterations") {
            spec.factor_budget.rho_iterations = static_cast<unsigned long>(long_of(value, kloc));
        } else {
            spec.warnings.push_back("unknown option '" + key + "' ignored (" + kloc + ")");
        }
    }
}

}  // namespace

ProblemSpec parse_problem(const ordered_json& j, const std::string& location) {
    if (!j.is_object()) fail(errc::parse, "problem spec must be a JSON object", location);
    ProblemSpec spec;
    for (const auto& [key, value] : j.items()) {
        std::string kloc = location.empty() ? key : location + ": " + key;
        if (key == "f") {
            spec.f = f_of(value, kloc);
        } else if (key == "g") {
            spec.g = g_of(value, kloc);
        } else if (key == "x0") {
            spec.x0 = rat_of(value, kloc);
        } else if (key == "y0") {
            spec.y0 = point_of(value, kloc);
        } else if (key == "p") {
            spec.p = point_of(value, kloc);
        } else if (key == "curve") {
            spec.curve = curve_of(value, kloc);
        } else if (key == "options") {
            apply_options(spec, value, kloc);
        } else {
            spec.warnings.push_back("unknown field '" + key + "' ignored (" + kloc + ")");
            continue;
        }
        spec.fields.push_back(key);
    }
    return spec;
}

ordered_json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse, "cannot open input file", path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::parse, e.what(), path);
    }
}

ProblemSpec load_problem(const std::string& path) {
    return parse_problem(load_json(path), path);
}

}  // namespace dml
