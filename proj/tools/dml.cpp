#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>
#include <vector>

#include "dml/json_io.hpp"

namespace fs = std::filesystem;
using namespace dml;

namespace {

struct Flags {
    std::string input, f, g, x0, y0, p, curve, place, output, batch, out_dir = "batch-out";
    long nmax = -1, precision = -1, period = -1, n_iter = -1, n_hi = -2;
    long long seed = -1, value_bits = -1;
    bool csv = false;
    long threads = 1;
};

int exit_code(errc c) {
    switch (c) {
        case errc::budget: return 2;
        case errc::parse: return 3;
        default: return 1;
    }
}

ordered_json error_json(errc c, const std::string& message, const std::string& location) {
    return {{"error",
             {{"code", exit_code(c)}, {"message", message}, {"location", location}}}};
}

// one merged spec: input file (if any) overlaid with the inline flags
ProblemSpec merged_spec(const Flags& fl) {
    ordered_json root = fl.input.empty() ? ordered_json::object() : load_json(fl.input);
    if (!root.is_object()) fail(errc::parse, "problem spec must be a JSON object", fl.input);
    if (!fl.f.empty()) root["f"] = fl.f;
    if (!fl.g.empty()) root["g"] = fl.g;
    if (!fl.x0.empty()) root["x0"] = fl.x0;
    if (!fl.y0.empty()) root["y0"] = fl.y0;
    if (!fl.p.empty()) root["p"] = fl.p;
    if (!fl.curve.empty()) {
        ordered_json grid = ordered_json::array();
        std::string row;
        std::istringstream rows(fl.curve);
        while (std::getline(rows, row, ';')) {
            ordered_json r = ordered_json::array();
            std::string item;
            std::istringstream cells(row);
            while (std::getline(cells, item, ',')) r.push_back(item);
            grid.push_back(std::move(r));
        }
        root["curve"] = std::move(grid);
    }
    if (!root.contains("options")) root["options"] = ordered_json::object();
    auto& opt = root["options"];
    if (fl.nmax >= 0) opt["nmax"] = fl.nmax;
    if (fl.precision >= 0) opt["precision"] = fl.precision;
    if (fl.period >= 0) opt["period"] = fl.period;
    if (fl.n_iter >= 0) opt["n_iter"] = fl.n_iter;
    if (fl.n_hi >= -1) opt["n_hi"] = fl.n_hi;
    if (fl.seed >= 0) opt["seed"] = fl.seed;
    if (fl.value_bits >= 0) opt["value_bits"] = fl.value_bits;
    if (!fl.place.empty()) opt["place"] = fl.place;
    std::string loc = fl.input.empty() ? std::string("--flags") : fl.input;
    return parse_problem(root, loc);
}

const AffinePolyMap& need_f(const ProblemSpec& s) {
    if (!s.f) fail(errc::parse, "command needs 'f'");
    return *s.f;
}
const ProjRatMap& need_g(const ProblemSpec& s) {
    if (!s.g) fail(errc::parse, "command needs 'g'");
    return *s.g;
}
const Rat& need_x0(const ProblemSpec& s) {
    if (!s.x0) fail(errc::parse, "command needs 'x0'");
    return *s.x0;
}
const ProjPoint& need_y0(const ProblemSpec& s) {
    if (!s.y0) fail(errc::parse, "command needs 'y0'");
    return *s.y0;
}
const PlaneCurve& need_curve(const ProblemSpec& s) {
    if (!s.curve) fail(errc::parse, "command needs 'curve'");
    return *s.curve;
}

struct Output {
    ordered_json json;
    std::string csv;  // used instead when nonempty
};

Output run_command(const std::string& cmd, const ProblemSpec& spec, bool csv,
                   std::set<std::string>& used) {
    Place v = spec.place ? *spec.place : Place::archimedean();
    if (cmd == "orbit") {
        if (spec.f && spec.x0) {
            used = {"f", "x0"};
            OrbitSegment o = orbit(*spec.f, *spec.x0, spec.nmax, spec.orbit_caps);
            return {orbit_json(o), csv ? orbit_csv(o) : ""};
        }
        used = {"g", "y0"};
        ProjOrbitSegment o = orbit(need_g(spec), need_y0(spec), spec.nmax, spec.orbit_caps);
        return {orbit_json(o), csv ? orbit_csv(o) : ""};
    }
    if (cmd == "return-set") {
        used = {"f", "g", "x0", "y0", "curve"};
        return {return_set_json(return_set(need_f(spec), need_g(spec), need_x0(spec),
                                           need_y0(spec), need_curve(spec), spec.nmax,
                                           spec.orbit_caps, spec.iterate_caps)),
                ""};
    }
    if (cmd == "certify-growth") {
        used = {"f", "x0"};
        auto cert = find_certificate(need_f(spec), need_x0(spec), spec.nmax, false,
                                     spec.factor_budget, spec.orbit_caps);
        if (!cert) fail(errc::budget, "no growth certificate found within the search budget");
        return {certificate_json(*cert, bad_places(*spec.f, spec.factor_budget)), ""};
    }
    if (cmd == "verify-growth") {
        used = {"f", "x0"};
        auto cert = find_certificate(need_f(spec), need_x0(spec), spec.nmax, false,
                                     spec.factor_budget, spec.orbit_caps);
        if (!cert) fail(errc::budget, "no growth certificate found within the search budget");
        long n_hi = spec.n_hi >= 0 ? spec.n_hi : cert->n0 + 8;
        VerificationReport rep = verify_certificate(*spec.f, *spec.x0, *cert, n_hi,
                                                    spec.orbit_caps);
        return {{{"certificate", certificate_json(*cert)}, {"verification", verification_json(rep)}},
                ""};
    }
    if (cmd == "exceptional") {
        used = {"g"};
        return {point_set_json(exceptional_set(need_g(spec))), ""};
    }
    if (cmd == "poly-conjugate") {
        used = {"g"};
        return {conjugacy_json(polynomial_conjugacy(need_g(spec))), ""};
    }
    if (cmd == "preperiodic") {
        if (spec.f && spec.x0) {
            used = {"f", "x0"};
            return {preperiodic_json(is_preperiodic(*spec.f, *spec.x0, spec.nmax, spec.orbit_caps)),
                    ""};
        }
        used = {"g", "y0"};
        return {preperiodic_json(is_preperiodic(need_g(spec), need_y0(spec), spec.nmax,
                                                spec.orbit_caps)),
                ""};
    }
    if (cmd == "height") {
        used = {"g", "y0", "x0"};
        ProjPoint pt = spec.y0 ? *spec.y0
                               : ProjPoint::from_rational(need_x0(spec));
        HeightValue w = weil_height(pt);
        if (spec.g && spec.g->degree() >= 2) {
            CanonicalHeightEstimate est = canonical_height(*spec.g, pt, spec.n_iter,
                                                           spec.orbit_caps);
            return {height_json(w, &est), ""};
        }
        return {height_json(w, nullptr), ""};
    }
    if (cmd == "silverman") {
        used = {"g", "y0", "p"};
        if (!spec.p) fail(errc::parse, "command needs 'p'");
        SilvermanTrace t = silverman_trace(need_g(spec), need_y0(spec), *spec.p, v, spec.nmax,
                                           spec.precision, spec.orbit_caps);
        return {silverman_json(t), csv ? silverman_csv(t) : ""};
    }
    if (cmd == "boundary") {
        used = {"f", "g", "x0", "y0", "curve"};
        BoundaryTrace t = boundary_trace(need_f(spec), need_g(spec), need_x0(spec),
                                         need_y0(spec), need_curve(spec), v, spec.nmax,
                                         spec.orbit_caps);
        return {boundary_json(t), csv ? boundary_csv(t) : ""};
    }
    if (cmd == "contradiction") {
        used = {"f", "g", "x0", "y0", "curve"};
        return {contradiction_json(contradiction_report(need_f(spec), need_g(spec), need_x0(spec),
                                                        need_y0(spec), need_curve(spec),
                                                        spec.nmax, spec.precision,
                                                        spec.orbit_caps)),
                ""};
    }
    if (cmd == "certify-progression") {
        used = {"f", "g", "curve"};
        bool ok = certify_progression(need_f(spec), need_g(spec), need_curve(spec), spec.period,
                                      spec.iterate_caps);
        return {{{"m", spec.period}, {"certified", ok}}, ""};
    }
    fail(errc::internal, "unknown command '" + cmd + "'");
}

void warn_unused(const std::string& cmd, const ProblemSpec& spec,
                 const std::set<std::string>& used) {
    for (const std::string& w : spec.warnings) std::cerr << "warning: " << w << "\n";
    for (const std::string& field : spec.fields)
        if (!used.count(field) && field != "options")
            std::cerr << "warning: field '" << field << "' unused by '" << cmd << "'\n";
}

std::string render(const Output& out, bool csv) {
    if (csv) {
        if (out.csv.empty()) fail(errc::parse, "this command has no CSV form");
        return out.csv;
    }
    return out.json.dump(2) + "\n";
}

int run_single(const std::string& cmd, const Flags& fl) {
    try {
        ProblemSpec spec = merged_spec(fl);
        std::set<std::string> used;
        Output out = run_command(cmd, spec, fl.csv, used);
        warn_unused(cmd, spec, used);
        std::string text = render(out, fl.csv);
        if (fl.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream of(fl.output, std::ios::binary);
            if (!of) fail(errc::parse, "cannot open output file", fl.output);
            of << text;
        }
        return 0;
    } catch (const error& e) {
        std::cout << error_json(e.code(), e.what(), e.location()).dump(2) << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cout << error_json(errc::internal, e.what(), "").dump(2) << "\n";
        return 1;
    }
}

int run_batch(const std::string& cmd, const Flags& fl) {
    std::vector<fs::path> inputs;
    try {
        for (const auto& entry : fs::directory_iterator(fl.batch))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                inputs.push_back(entry.path());
    } catch (const fs::filesystem_error& e) {
        std::cout << error_json(errc::parse, e.what(), fl.batch).dump(2) << "\n";
        return 3;
    }
    std::sort(inputs.begin(), inputs.end());
    fs::create_directories(fl.out_dir);

    long threads = std::clamp(fl.threads, 1l, 64l);
    std::atomic<size_t> next{0};
    std::atomic<int> worst{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < inputs.size(); i = next.fetch_add(1)) {
            Flags local = fl;
            local.input = inputs[i].string();
            std::string ext = fl.csv ? ".csv" : ".json";
            fs::path out_path = fs::path(fl.out_dir) / (inputs[i].stem().string() + "." + cmd + ext);
            std::string text;
            int code = 0;
            try {
                ProblemSpec spec = merged_spec(local);
                std::set<std::string> used;
                Output out = run_command(cmd, spec, fl.csv, used);
                text = render(out, fl.csv);
            } catch (const error& e) {
                text = error_json(e.code(), e.what(), e.location()).dump(2) + "\n";
                code = exit_code(e.code());
            } catch (const std::exception& e) {
                text = error_json(errc::internal, e.what(), local.input).dump(2) + "\n";
                code = 1;
            }
            std::ofstream of(out_path, std::ios::binary);
            of << text;
            int prev = worst.load();
            while (prev < code && !worst.compare_exchange_weak(prev, code)) {
            }
        }
    };
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return worst.load();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic-dynamics toolkit for split self-maps of A^1 x P^1"};
    app.require_subcommand(1);

    Flags fl;
    const std::vector<std::string> commands = {
        "orbit",      "return-set", "certify-growth", "verify-growth",
        "exceptional", "poly-conjugate", "preperiodic", "height",
        "silverman",  "boundary",   "contradiction",  "certify-progression"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", fl.input, "problem spec JSON file");
        sub->add_option("--f", fl.f, "affine map, descending coefficients 'a_d,...,a_0'");
        sub->add_option("--g", fl.g, "projective map 'G1;G2', descending coefficients");
        sub->add_option("--x0", fl.x0, "affine start point");
        sub->add_option("--y0", fl.y0, "projective start point 'u:w' | 'inf' | rational");
        sub->add_option("--p", fl.p, "target point for silverman");
        sub->add_option("--curve", fl.curve, "coefficient grid 'a00,a01;a10,a11' (ascending)");
        sub->add_option("--place", fl.place, "'inf' or a prime");
        sub->add_option("--nmax", fl.nmax, "iteration/search budget");
        sub->add_option("--precision", fl.precision, "decimal digits for reported logs");
        sub->add_option("--seed", fl.seed, "factoring seed");
        sub->add_option("--period", fl.period, "progression period m");
        sub->add_option("--n-iter", fl.n_iter, "canonical height iterations");
        sub->add_option("--n-hi", fl.n_hi, "verify-growth top row");
        sub->add_option("--value-bits", fl.value_bits, "orbit coordinate bit cap");
        sub->add_option("--output", fl.output, "write the report here instead of stdout");
        sub->add_flag("--csv", fl.csv, "CSV output (trace commands)");
        sub->add_option("--batch", fl.batch, "directory of problem specs to run");
        sub->add_option("--out-dir", fl.out_dir, "batch output directory");
        sub->add_option("--threads", fl.threads, "batch worker threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cout << error_json(errc::parse, e.what(), "command line").dump(2) << "\n";
        return 3;
    }

    std::string cmd;
    for (const std::string& name : commands)
        if (app.got_subcommand(name)) cmd = name;

    return fl.batch.empty() ? run_single(cmd, fl) : run_batch(cmd, fl);
}
