#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "dml/heights.hpp"

using namespace dml;

namespace {

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

IntBinForm form(std::initializer_list<long> ascending) {
    std::vector<Int> v;
    for (long c : ascending) v.push_back(Int(c));
    return IntBinForm(std::move(v));
}

ProjRatMap pmap(std::initializer_list<long> top, std::initializer_list<long> bot) {
    return ProjRatMap(form(top), form(bot));
}

Int big(const ProjPoint& p) {
    Int a = abs(p.u()), b = abs(p.w());
    return a > b ? a : b;
}

}  // namespace

TEST_CASE("weil height values") {
    CHECK(weil_height(ProjPoint(Int(1), Int(1))).arg == 1);
    CHECK(weil_height(ProjPoint(Int(1), Int(1))).approx == 0.0);
    CHECK(weil_height(ProjPoint(Int(5), Int(2))).arg == 5);
    CHECK(weil_height(ProjPoint(Int(-7), Int(3))).arg == 7);
    CHECK(weil_height(ProjPoint::infinity()).arg == 1);
    CHECK(weil_height(ProjPoint::from_rational(Rat(1, 3))).arg == 3);
    CHECK(weil_height(ProjPoint::parse("7204:2401")).arg == 7204);
    double got = weil_height(ProjPoint(Int(8), Int(1))).approx;
    CHECK(got == doctest::Approx(2.0794415416798357).epsilon(1e-14));
}

TEST_CASE("comparison constant frozen values") {
    CHECK(height_comparison_constant(pmap({0, 0, 1}, {1, 0, 0})).arg == 1);
    CHECK(height_comparison_constant(pmap({1, 0, 1}, {0, 1, 0})).arg == 2);
    CHECK(height_comparison_constant(pmap({-1, 0, 1}, {0, 2, 0})).arg == 6);
    CHECK(height_comparison_constant(pmap({1, 0, 3}, {1, 0, 0})).arg == 4);
    CHECK_THROWS_AS(height_comparison_constant(pmap({0, 1}, {1, 0})), error);
}

TEST_CASE("comparison inequality holds exactly on sampled points") {
    std::vector<ProjRatMap> maps = {
        pmap({0, 0, 1}, {1, 0, 0}),        // squaring
        pmap({1, 0, 1}, {0, 1, 0}),        // z + 1/z
        pmap({-1, 0, 1}, {0, 2, 0}),       // newton for z^2 - 1
        pmap({1, 0, 3}, {1, 0, 0}),        // 3z^2 + 1
        pmap({2, 0, 0, 5}, {-1, 0, 3, 0}),  // cubic
    };
    SplitMix rng{20260815};
    for (const auto& g : maps) {
        Rat c = height_comparison_constant(g).arg;
        unsigned long d = static_cast<unsigned long>(g.degree());
        for (int i = 0; i < 120; ++i) {
            long u = rng.range(-60, 60), w = rng.range(-60, 60);
            if (u == 0 && w == 0) continue;
            ProjPoint p{Int(u), Int(w)};
            ProjPoint q = eval(g, p);
            Int hp = pow_int(big(p), d);
            Int hq = big(q);
            // |h(gP) - d h(P)| <= log c, decided on the arguments
            CHECK(Rat(hq) <= c * Rat(hp));
            CHECK(Rat(hp) <= c * Rat(hq));
        }
    }
}

TEST_CASE("canonical height of the squaring map is exact") {
    ProjRatMap g = pmap({0, 0, 1}, {1, 0, 0});
    ProjPoint p(Int(3), Int(2));
    for (long n = 0; n <= 6; ++n) {
        auto est = canonical_height(g, p, n);
        CHECK(est.arg == pow_int(Int(3), 1ul << n));
        CHECK(est.scale == pow_int(Int(2), static_cast<unsigned long>(n)));
        CHECK(est.n == n);
        // estimate == log 3 independent of n, error bound from c = 1 is ~0
        CHECK(est.estimate == doctest::Approx(1.0986122886681098).epsilon(1e-14));
        CHECK(est.error_bound >= 0.0);
        CHECK(est.error_bound < 1e-9);
    }
}

TEST_CASE("canonical height estimates at different depths agree within bounds") {
    ProjRatMap g = pmap({1, 0, 1}, {0, 1, 0});
    ProjPoint p(Int(2), Int(1));
    auto e10 = canonical_height(g, p, 10);
    auto e14 = canonical_height(g, p, 14);
    CHECK(std::abs(e10.estimate - e14.estimate) <= e10.error_bound + e14.error_bound);

    // same statement decided exactly: |log a/2^10 - log b/2^14| <= 17 log(c)/2^14
    Rat c = height_comparison_constant(g).arg;
    Int a = e10.arg, b = e14.arg;
    Rat c17 = pow_rat(c, 17);
    CHECK(Rat(pow_int(a, 16)) <= c17 * Rat(b));
    CHECK(Rat(b) <= c17 * Rat(pow_int(a, 16)));
}

TEST_CASE("canonical height guards") {
    CHECK_THROWS_AS(canonical_height(pmap({0, 1}, {1, 0}), ProjPoint(Int(2), Int(1)), 5), error);
    OrbitCaps tight;
    tight.value_bits = 16;
    ProjRatMap g = pmap({0, 0, 1}, {1, 0, 0});
    CHECK_THROWS_AS(canonical_height(g, ProjPoint(Int(3), Int(1)), 40, tight), error);
}

TEST_CASE("preperiodic points are recognized with exact tail and period") {
    AffinePolyMap f(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});  // x^2 - 1
    auto v0 = is_preperiodic(f, Rat(0), 50);
    CHECK(v0.kind == PreperiodicityVerdict::Kind::Preperiodic);
    CHECK(v0.tail == 0);
    CHECK(v0.period == 2);
    auto v1 = is_preperiodic(f, Rat(1), 50);
    CHECK(v1.kind == PreperiodicityVerdict::Kind::Preperiodic);
    CHECK(v1.tail == 1);
    CHECK(v1.period == 2);
    auto vi = is_preperiodic(f.homogenized(), ProjPoint::infinity(), 50);
    CHECK(vi.kind == PreperiodicityVerdict::Kind::Preperiodic);
    CHECK(vi.tail == 0);
    CHECK(vi.period == 1);
}

TEST_CASE("escaping points yield a checkable witness") {
    auto v = is_preperiodic(pmap({0, 0, 1}, {1, 0, 0}), ProjPoint(Int(2), Int(1)), 50);
    CHECK(v.kind == PreperiodicityVerdict::Kind::NonPreperiodic);
    CHECK(v.witness_index == 0);
    CHECK(v.witness_arg == 2);
    CHECK(v.threshold_arg == 1);

    AffinePolyMap f(std::vector<Rat>{Rat(1), Rat(0), Rat(3)});  // 3x^2 + 1
    auto w = is_preperiodic(f, Rat(1), 50);
    CHECK(w.kind == PreperiodicityVerdict::Kind::NonPreperiodic);
    CHECK(w.witness_index == 2);
    CHECK(w.witness_arg == 49);
    CHECK(w.threshold_arg == 4);
    CHECK(Rat(pow_int(w.witness_arg, 1)) > w.threshold_arg);
}

TEST_CASE("degree one maps only resolve by cycle detection") {
    auto swap = is_preperiodic(pmap({1, 0}, {0, 1}), ProjPoint(Int(2), Int(1)), 20);
    CHECK(swap.kind == PreperiodicityVerdict::Kind::Preperiodic);
    CHECK(swap.period == 2);
    auto dbl = is_preperiodic(pmap({0, 2}, {1, 0}), ProjPoint(Int(3), Int(1)), 20);
    CHECK(dbl.kind == PreperiodicityVerdict::Kind::Unknown);
    CHECK(dbl.budget_spent == 20);
}

TEST_CASE("verdicts are stable under budget growth") {
    std::vector<std::pair<AffinePolyMap, Rat>> cases = {
        {AffinePolyMap(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)}), Rat(0)},
        {AffinePolyMap(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)}), Rat(2)},
        {AffinePolyMap(std::vector<Rat>{Rat(1), Rat(0), Rat(3)}), Rat(1)},
        {AffinePolyMap(std::vector<Rat>{Rat(0), Rat(0), Rat(1, 2)}), Rat(1)},
        {AffinePolyMap(std::vector<Rat>{Rat(0), Rat(0), Rat(1, 2)}), Rat(2)},
    };
    for (const auto& [f, x0] : cases) {
        auto a = is_preperiodic(f, x0, 30);
        auto b = is_preperiodic(f, x0, 60);
        if (a.kind != PreperiodicityVerdict::Kind::Unknown) {
            CHECK(a.kind == b.kind);
            CHECK(a.tail == b.tail);
            CHECK(a.period == b.period);
            CHECK(a.witness_index == b.witness_index);
            CHECK(a.witness_arg == b.witness_arg);
        }
    }
}
