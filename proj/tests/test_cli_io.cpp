#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "dml/json_io.hpp"

using namespace dml;

namespace {

AffinePolyMap amap(std::vector<Rat> ascending) { return AffinePolyMap(std::move(ascending)); }

ordered_json parse(const std::string& text) { return ordered_json::parse(text); }

ProblemSpec from_text(const std::string& text) { return parse_problem(parse(text), "test"); }

std::vector<std::string> keys(const ordered_json& j) {
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

}  // namespace

TEST_CASE("certificate json holds the bracket constants in order") {
    AffinePolyMap f = amap({Rat(1), Rat(0), Rat(3)});
    auto cert = find_certificate(f, Rat(1), 12);
    REQUIRE(cert.has_value());
    ordered_json j = certificate_json(*cert, bad_places(f));
    CHECK(keys(j) == std::vector<std::string>{"place", "N", "in_S", "C_v", "A1", "B1", "A2",
                                              "B2", "c1", "c2", "N''", "C"});
    CHECK(j["place"] == "inf");
    CHECK(j["N"] == 1);
    CHECK(j["C_v"] == "7/3");
    CHECK(j["C"] == parse(R"({"inf":"7/3","3":"13"})"));
    CHECK(j["c1"]["arg"] == "6");
    CHECK(j["c1"]["root"] == "4");

    ordered_json bare = certificate_json(*cert);
    CHECK_FALSE(bare.contains("C"));
}

TEST_CASE("return set json spells out statuses and completeness") {
    ReturnSetReport r;
    r.observed = {0, 2, 4, 7};
    r.finite_part = {7};
    r.progressions = {{0, 2, true, 2}, {7, 1, false, 0}};
    r.complete = true;
    r.nmax = 9;
    r.scanned_to = 9;
    ordered_json j = return_set_json(r);
    CHECK(j["completeness"] == "CompleteByPeriodicity");
    CHECK(j["structure"][0]["status"] == "CertifiedForward(2)");
    CHECK(j["structure"][1]["status"] == "Observed");
    CHECK(j["finite_part"] == parse("[7]"));

    r.complete = false;
    r.scanned_to = 5;
    CHECK(return_set_json(r)["completeness"] == "TruncatedAt(5)");
}

TEST_CASE("point sets and conjugacy reports") {
    ProjRatMap newton = ProjRatMap::from_rational_coeffs({Rat(-1), Rat(0), Rat(1)},
                                                         {Rat(0), Rat(2), Rat(0)});
    ordered_json j = point_set_json(exceptional_set(newton));
    CHECK(j == parse(R"({"rational":[],"quadratic":["t^2+1"]})"));

    ProjRatMap sq = ProjRatMap::from_rational_coeffs({Rat(0), Rat(0), Rat(1)},
                                                     {Rat(1), Rat(0), Rat(0)});
    ordered_json k = point_set_json(exceptional_set(sq));
    CHECK(k == parse(R"({"rational":["0:1","1:0"],"quadratic":[]})"));

    ordered_json c = conjugacy_json(polynomial_conjugacy(newton));
    CHECK(c["kind"] == "GItself");
    CHECK(c["witness"]["quadratic"] == parse(R"(["t^2+1"])"));
}

TEST_CASE("orbit json and csv, affine and projective") {
    AffinePolyMap f = amap({Rat(-1), Rat(0), Rat(1)});
    OrbitSegment o = orbit(f, Rat(0), 5);
    ordered_json j = orbit_json(o);
    CHECK(j["start"] == "0");
    CHECK(j["values"] == parse(R"(["0","-1","0"])"));
    CHECK(j["cycle"]["tail"] == 0);
    CHECK(j["cycle"]["period"] == 2);
    CHECK(j["truncated"] == false);
    CHECK(orbit_csv(o) == "n,value\n0,0\n1,-1\n2,0\n");

    ProjRatMap inv = ProjRatMap::from_rational_coeffs({Rat(1), Rat(0)}, {Rat(0), Rat(1)});
    ProjOrbitSegment po = orbit(inv, ProjPoint::infinity(), 3);
    ordered_json pj = orbit_json(po);
    CHECK(pj["values"] == parse(R"(["1:0","0:1","1:0"])"));
    CHECK(orbit_csv(po) == "n,value\n0,1:0\n1,0:1\n2,1:0\n");
}

TEST_CASE("preperiodic and height json") {
    PreperiodicityVerdict v = is_preperiodic(amap({Rat(-1), Rat(0), Rat(1)}), Rat(0), 10);
    ordered_json j = preperiodic_json(v);
    CHECK(j["kind"] == "Preperiodic");
    CHECK(j["tail"] == 0);
    CHECK(j["period"] == 2);

    PreperiodicityVerdict w = is_preperiodic(amap({Rat(1), Rat(0), Rat(3)}), Rat(1), 10);
    ordered_json jw = preperiodic_json(w);
    CHECK(jw["kind"] == "NonPreperiodic");
    CHECK(jw.contains("witness_index"));
    CHECK(jw["witness_arg"].is_string());
    CHECK(jw["threshold_arg"].is_string());

    HeightValue h = weil_height(ProjPoint(Int(3), Int(2)));
    ordered_json hj = height_json(h, nullptr);
    CHECK(hj["weil"]["arg"] == "3");
    CHECK(hj["canonical"].is_null());

    ProjRatMap sq = ProjRatMap::from_rational_coeffs({Rat(0), Rat(0), Rat(1)},
                                                     {Rat(1), Rat(0), Rat(0)});
    CanonicalHeightEstimate est = canonical_height(sq, ProjPoint(Int(3), Int(2)), 4);
    ordered_json hc = height_json(h, &est);
    CHECK(hc["canonical"]["n"] == 4);
    CHECK(hc["canonical"]["scale"] == "16");
}

TEST_CASE("silverman json emits exact capped values and string logs") {
    ProjRatMap zinv = ProjRatMap::from_rational_coeffs({Rat(1), Rat(0), Rat(1)},
                                                       {Rat(0), Rat(1), Rat(0)});
    SilvermanTrace t = silverman_trace(zinv, ProjPoint::from_rational(Rat(2)), ProjPoint::from_rational(Rat(2)),
                                       Place::archimedean(), 3, 8);
    ordered_json j = silverman_json(t);
    CHECK(j["g"] == "1,0,1;0,1,0");
    CHECK(j["p"] == "2:1");
    CHECK(j["terms"][0]["capped"] == "0");
    CHECK(j["terms"][0]["value"] == "inf");
    CHECK(j["terms"][1]["capped"] == "1/2");
    CHECK(j["terms"][1]["value"] == "0.34657359");
    std::string csv = silverman_csv(t);
    CHECK(csv.substr(0, 15) == "n,capped,value\n");
    CHECK(csv.find("1,1/2,0.34657359") != std::string::npos);
    CHECK(csv.back() == '\n');
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("boundary json mirrors the trace rows") {
    AffinePolyMap f = amap({Rat(0), Rat(0), Rat(1)});
    ProjRatMap sq = ProjRatMap::from_rational_coeffs({Rat(0), Rat(0), Rat(1)},
                                                     {Rat(1), Rat(0), Rat(0)});
    PlaneCurve phi({{Rat(0), Rat(-1)}, {Rat(1), Rat(0)}});
    BoundaryTrace t = boundary_trace(f, sq, Rat(2), ProjPoint::from_rational(Rat(2)), phi,
                                     Place::archimedean(), 4);
    ordered_json j = boundary_json(t);
    CHECK(j["place"] == "inf");
    CHECK(j["normalized"] == true);
    CHECK(j["infinity"]["m"] == 1);
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][0]["x_abs"] == "2");
    std::string csv = boundary_csv(t);
    CHECK(csv.substr(0, 24) == "n,x_abs,phi_inf_abs,dist");
}

TEST_CASE("descending coefficient lists parse into the right maps") {
    ProblemSpec s = from_text(R"({"f":"3,0,1","x0":"1"})");
    REQUIRE(s.f.has_value());
    CHECK(s.f->degree() == 2);
    CHECK(s.f->eval(Rat(2)) == Rat(13));
    CHECK(*s.x0 == Rat(1));
    CHECK(s.fields == std::vector<std::string>{"f", "x0"});

    ProblemSpec arr = from_text(R"({"f":[3,0,"1"]})");
    CHECK(arr.f->eval(Rat(2)) == Rat(13));
}

TEST_CASE("projective maps parse from string, array and object forms") {
    const std::string expect = "1,0,-1;0,2,0";
    ProblemSpec a = from_text(R"({"g":"1,0,-1;0,2,0"})");
    ProblemSpec b = from_text(R"({"g":["1,0,-1","0,2,0"]})");
    ProblemSpec c = from_text(R"({"g":{"g1":"1,0,-1","g2":"0,2,0"}})");
    CHECK(a.g->str() == expect);
    CHECK(b.g->str() == expect);
    CHECK(c.g->str() == expect);
    CHECK_THROWS_AS(from_text(R"({"g":"1,0,-1"})"), error);
}

TEST_CASE("points parse from every published form") {
    CHECK(*from_text(R"({"y0":"inf"})").y0 == ProjPoint::infinity());
    CHECK(*from_text(R"({"y0":"oo"})").y0 == ProjPoint::infinity());
    CHECK(*from_text(R"({"y0":"2:4"})").y0 == ProjPoint::from_rational(Rat(1, 2)));
    CHECK(*from_text(R"({"y0":"-1/3"})").y0 == ProjPoint::from_rational(Rat(-1, 3)));
    CHECK(*from_text(R"({"y0":7})").y0 == ProjPoint::from_rational(Rat(7)));
    CHECK(*from_text(R"({"p":"2:1"})").p == ProjPoint::from_rational(Rat(2)));
    CHECK(*from_text(R"({"x0":"5/6"})").x0 == Rat(5, 6));
    CHECK_THROWS_AS(from_text(R"({"y0":"0:0"})"), error);
}

TEST_CASE("curves parse from grids and degree-checked objects") {
    ProblemSpec s = from_text(R"({"curve":[[0,-1],[1,0]]})");
    REQUIRE(s.curve.has_value());
    CHECK(s.curve->xdeg() == 1);
    CHECK(s.curve->ydeg() == 1);
    CHECK(s.curve->coeff(1, 0) == Rat(1));
    CHECK(s.curve->coeff(0, 1) == Rat(-1));

    ProblemSpec o = from_text(R"({"curve":{"m":1,"n":1,"coeffs":[["0","-1"],["1","0"]]}})");
    CHECK(o.curve->coeff(1, 0) == Rat(1));

    CHECK_THROWS_AS(from_text(R"({"curve":{"m":2,"n":1,"coeffs":[[0,-1],[1,0]]}})"), error);
    CHECK_THROWS_AS(from_text(R"({"curve":[[0,0],[0,0]]})"), error);
    CHECK_THROWS_AS(from_text(R"({"curve":[[0,1],[1]]})"), error);
}

TEST_CASE("options wire through to budgets and caps") {
    ProblemSpec s = from_text(R"({"options":{
        "nmax": 30, "precision": 9, "place": 3, "seed": 17, "period": 4,
        "n_iter": 6, "n_hi": 21, "value_bits": 4096, "memo_bits": 512,
        "coeff_bits": 2048, "max_terms": 99, "trial_limit": 500,
        "rho_iterations": 700}})");
    CHECK(s.nmax == 30);
    CHECK(s.precision == 9);
    CHECK(*s.place == Place::finite(3));
    CHECK(s.seed == 17);
    CHECK(s.factor_budget.seed == 17);
    CHECK(s.period == 4);
    CHECK(s.n_iter == 6);
    CHECK(s.n_hi == 21);
    CHECK(s.orbit_caps.value_bits == 4096);
    CHECK(s.orbit_caps.memo_bits == 512);
    CHECK(s.iterate_caps.coeff_bits == 2048);
    CHECK(s.iterate_caps.max_terms == 99);
    CHECK(s.factor_budget.trial_limit == 500);
    CHECK(s.factor_budget.rho_iterations == 700);

    CHECK(from_text(R"({"options":{"place":"inf"}})").place == Place::archimedean());
}

TEST_CASE("unknown keys warn instead of failing") {
    ProblemSpec s = from_text(R"({"f":"1,0","frobnicate":1,"options":{"spin":2}})");
    REQUIRE(s.warnings.size() == 2);
    CHECK(s.warnings[0].find("frobnicate") != std::string::npos);
    CHECK(s.warnings[1].find("spin") != std::string::npos);
    CHECK(s.fields == std::vector<std::string>{"f", "options"});
}

TEST_CASE("parse errors carry location breadcrumbs and the parse code") {
    try {
        from_text(R"({"f":"not a map"})");
        FAIL("expected a parse error");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse);
        CHECK(e.location() == "test: f");
    }
    try {
        load_json("/nonexistent/problem.json");
        FAIL("expected a parse error");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse);
    }
}

TEST_CASE("json files round-trip through load_problem") {
    std::string path = "cli_io_roundtrip.json";
    {
        std::ofstream out(path);
        out << R"({"f":"1,0,1","g":"1,0,1;0,1,0","x0":"1","y0":"1:1",)"
            << R"("curve":[[0,-1],[1,0]],"options":{"nmax":5}})";
    }
    ProblemSpec s = load_problem(path);
    CHECK(s.f->eval(Rat(1)) == Rat(2));
    CHECK(s.g->str() == "1,0,1;0,1,0");
    CHECK(s.nmax == 5);
    ReturnSetReport r = return_set(*s.f, *s.g, *s.x0, *s.y0, *s.curve, s.nmax, s.orbit_caps,
                                   s.iterate_caps);
    CHECK(r.observed == std::vector<long>{0, 1});
    std::remove(path.c_str());
}

TEST_CASE("malformed json is a parse error, not a crash") {
    std::string path = "cli_io_broken.json";
    {
        std::ofstream out(path);
        out << "{\"f\": ";
    }
    CHECK_THROWS_AS(load_problem(path), error);
    std::remove(path.c_str());
}
