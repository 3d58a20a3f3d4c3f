#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dml/projective.hpp"

using namespace dml;

namespace {

IntBinForm form(std::initializer_list<long> ascending_in_x) {
    std::vector<Int> v;
    for (long c : ascending_in_x) v.push_back(Int(c));
    return IntBinForm(std::move(v));
}

ProjRatMap pmap(std::initializer_list<long> g1, std::initializer_list<long> g2) {
    return ProjRatMap(form(g1), form(g2));
}

// Independent total-invariance oracle: dehomogenize the fiber form of P and
// read off the root multiplicities with plain polynomial division.
bool fiber_oracle(const ProjRatMap& g, const ProjPoint& p) {
    long d = g.degree();
    std::vector<Int> v(d + 1);
    for (long k = 0; k <= d; ++k) v[k] = p.w() * g.g1()[k] - p.u() * g.g2()[k];
    auto [inf_mult, f] = IntBinForm(std::move(v)).dehomogenize();
    if (p.is_infinity()) return inf_mult == d;
    if (inf_mult != 0 || f.degree() != d) return false;
    Rat x0 = p.affine();
    RatPoly lin(std::vector<Rat>{-x0, Rat(1)});
    RatPoly rem = f;
    for (long i = 0; i < d; ++i) {
        auto [q, r] = RatPoly::divrem(rem, lin);
        if (!r.is_zero()) return false;
        rem = q;
    }
    return rem.degree() == 0;
}

// Same oracle over Q[t]/(q) via synthetic division by (x - t).
bool fiber_oracle(const ProjRatMap& g, const MinPoly2& q) {
    long d = g.degree();
    std::vector<QuadExt> f(d + 1);
    for (long k = 0; k <= d; ++k) f[k] = {Rat(g.g1()[k]), Rat(-Int(g.g2()[k]))};
    QuadExt t{Rat(0), Rat(1)};
    if (f[d].is_zero()) return false;  // infinity would enter the fiber
    for (long round = 0; round < d; ++round) {
        long deg = d - round;
        std::vector<QuadExt> b(deg);
        b[deg - 1] = f[deg];
        for (long k = deg - 1; k >= 1; --k) b[k - 1] = q_add(f[k], q_mul(q, t, b[k]));
        QuadExt rem = q_add(f[0], q_mul(q, t, b[0]));
        if (!rem.is_zero()) return false;
        f.assign(b.begin(), b.end());
        f.resize(deg);
    }
    return true;
}

}  // namespace

TEST_CASE("point normalization and parsing") {
    CHECK(ProjPoint(Int(2), Int(4)) == ProjPoint(Int(1), Int(2)));
    CHECK(ProjPoint(Int(-3), Int(-6)) == ProjPoint(Int(1), Int(2)));
    CHECK(ProjPoint(Int(3), Int(-6)).w() == 2);
    CHECK(ProjPoint(Int(-5), Int(0)) == ProjPoint::infinity());
    CHECK_THROWS_AS(ProjPoint(Int(0), Int(0)), error);

    CHECK(ProjPoint::parse("2:1").affine() == 2);
    CHECK(ProjPoint::parse("inf").is_infinity());
    CHECK(ProjPoint::parse("-3/4") == ProjPoint(Int(-3), Int(4)));
    CHECK(ProjPoint::parse("4:6") == ProjPoint(Int(2), Int(3)));
    CHECK_THROWS_AS(ProjPoint::parse("0:0"), error);
    CHECK(ProjPoint::infinity().str() == "1:0");
    CHECK_THROWS_AS(ProjPoint::infinity().affine(), error);
}

TEST_CASE("map construction and normalization") {
    // joint content and sign normalization
    ProjRatMap a = pmap({-2, 0, -2}, {0, -2, 0});
    CHECK(a == pmap({1, 0, 1}, {0, 1, 0}));
    CHECK(a.degree() == 2);
    CHECK_THROWS_AS(pmap({0, 0, 1}, {0, 1, 0}), error);  // share the root X=0
    CHECK_THROWS_AS(pmap({1, 1}, {2, 2}), error);        // proportional
    CHECK_THROWS_AS(ProjRatMap(form({1, 0, 1}), form({1, 1})), error);  // degree mismatch
}

TEST_CASE("evaluation") {
    ProjRatMap add_inv = pmap({1, 0, 1}, {0, 1, 0});  // z + 1/z
    CHECK(eval(add_inv, ProjPoint(Int(2), Int(1))) == ProjPoint(Int(5), Int(2)));
    CHECK(eval(add_inv, ProjPoint::infinity()) == ProjPoint::infinity());
    CHECK(eval(add_inv, ProjPoint(Int(0), Int(1))) == ProjPoint::infinity());

    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    CHECK(eval(sq, ProjPoint(Int(2), Int(3))) == ProjPoint(Int(4), Int(9)));

    // the common factor 4 at [3:1] must be removed exactly
    ProjRatMap squares = ProjRatMap(form({1, 2, 1}), form({1, -2, 1}));
    CHECK(eval(squares, ProjPoint(Int(3), Int(1))) == ProjPoint(Int(4), Int(1)));
}

TEST_CASE("projective orbit") {
    ProjRatMap add_inv = pmap({1, 0, 1}, {0, 1, 0});
    auto seg = orbit(add_inv, ProjPoint(Int(1), Int(1)), 3);
    REQUIRE(seg.points.size() == 4);
    CHECK(seg.points[1] == ProjPoint(Int(2), Int(1)));
    CHECK(seg.points[2] == ProjPoint(Int(5), Int(2)));
    CHECK(seg.points[3] == ProjPoint(Int(29), Int(10)));
    CHECK_FALSE(seg.cycle.has_value());
    CHECK_FALSE(seg.truncated);

    // independent rational-arithmetic oracle
    Rat x(1);
    for (int i = 1; i <= 3; ++i) {
        x = x + 1 / x;
        CHECK(seg.points[i].affine() == x);
    }

    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    auto fixed = orbit(sq, ProjPoint(Int(1), Int(1)), 10);
    REQUIRE(fixed.cycle.has_value());
    CHECK(fixed.cycle->tail == 0);
    CHECK(fixed.cycle->period == 1);
    CHECK(fixed.points.size() == 2);

    auto inf = orbit(sq, ProjPoint::infinity(), 5);
    REQUIRE(inf.cycle.has_value());
    CHECK(inf.cycle->period == 1);

    OrbitCaps tight;
    tight.value_bits = 16;
    auto trunc = orbit(sq, ProjPoint(Int(2), Int(1)), 30, tight);
    CHECK(trunc.truncated);
    CHECK(trunc.points.size() == 4);  // 2, 4, 16, 256; 65536 is 17 bits
    CHECK_FALSE(trunc.cycle.has_value());
}

TEST_CASE("cycle replays exactly") {
    // z -> 1/z^2 has the 2-cycle {1/2 ... } try [2:1]: 2 -> 1/4 -> 16 -> ...
    // use instead z -> 1/z which swaps 2 and 1/2
    ProjRatMap inv = pmap({1, 0}, {0, 1});  // wait: needs degree check
    auto seg = orbit(inv, ProjPoint(Int(2), Int(1)), 10);
    REQUIRE(seg.cycle.has_value());
    CHECK(seg.cycle->tail == 0);
    CHECK(seg.cycle->period == 2);
    // replay three more periods from the recorded data
    ProjPoint p = seg.points[seg.cycle->tail];
    for (long step = 0; step < 3 * seg.cycle->period; ++step) {
        long idx = seg.cycle->tail + step % seg.cycle->period;
        CHECK(seg.points[idx] == p);
        p = eval(inv, p);
    }
}

TEST_CASE("compose and iterate") {
    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    ProjRatMap four = compose(sq, sq);
    CHECK(four == pmap({0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}));
    CHECK(iterate(sq, 2) == four);
    CHECK(iterate(sq, 1) == sq);

    ProjRatMap add_inv = pmap({1, 0, 1}, {0, 1, 0});
    ProjRatMap it2 = iterate(add_inv, 2);
    ProjPoint p(Int(3), Int(2));
    CHECK(eval(it2, p) == eval(add_inv, eval(add_inv, p)));
    CHECK_THROWS_AS(iterate(add_inv, 0), error);

    ProjRatMap grow = pmap({7, 0, 13}, {0, 11, 0});
    CHECK_THROWS_AS(iterate(grow, 40, 64), error);  // coefficient cap
}

TEST_CASE("mobius conjugation") {
    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    Mobius inv(Rat(0), Rat(1), Rat(1), Rat(0));  // z -> 1/z
    CHECK(conjugate(sq, inv) == sq);

    CHECK_THROWS_AS(Mobius(Rat(1), Rat(2), Rat(2), Rat(4)), error);

    // equivariance at sample points, including infinity
    Mobius m(Rat(2), Rat(1, 3), Rat(0), Rat(3));
    Mobius shift(Rat(1), Rat(-5), Rat(1), Rat(1));
    for (const Mobius& mm : {m, shift, inv}) {
        for (const ProjRatMap& g : {sq, pmap({1, 0, 1}, {0, 1, 0})}) {
            ProjRatMap h = conjugate(g, mm);
            for (long x : {-3, -1, 0, 1, 2, 7}) {
                ProjPoint p(Int(x), Int(1));
                CHECK(eval(h, conjugate_point(p, mm)) == conjugate_point(eval(g, p), mm));
            }
            ProjPoint p = ProjPoint::infinity();
            CHECK(eval(h, conjugate_point(p, mm)) == conjugate_point(eval(g, p), mm));
        }
    }
}

TEST_CASE("fixed point form") {
    CHECK(fixed_point_form(pmap({0, 0, 1}, {1, 0, 0})) == form({0, -1, 1, 0}));
    CHECK(fixed_point_form(pmap({1, 0, 1}, {0, 1, 0})) == form({1, 0, 0, 0}));
    CHECK(fixed_point_form(pmap({1, 0, 1}, {0, 2, 0})) == form({-1, 0, 1, 0}));
    // identity map z -> z
    CHECK_THROWS_AS(fixed_point_form(pmap({0, 1}, {1, 0})), error);
}

TEST_CASE("total invariance of rational points") {
    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    CHECK(is_totally_invariant(sq, ProjPoint(Int(0), Int(1))));
    CHECK(is_totally_invariant(sq, ProjPoint::infinity()));
    CHECK_FALSE(is_totally_invariant(sq, ProjPoint(Int(1), Int(1))));

    ProjRatMap add_inv = pmap({1, 0, 1}, {0, 1, 0});
    CHECK_FALSE(is_totally_invariant(add_inv, ProjPoint::infinity()));

    ProjRatMap half = pmap({1, 0, 1}, {0, 2, 0});  // (z^2+1)/(2z)
    CHECK(is_totally_invariant(half, ProjPoint(Int(1), Int(1))));
    CHECK(is_totally_invariant(half, ProjPoint(Int(-1), Int(1))));
    CHECK_FALSE(is_totally_invariant(half, ProjPoint::infinity()));

    // agree with the independent fiber oracle on a grid of candidates
    for (const auto& g : {sq, add_inv, half, pmap({-1, 0, 1}, {0, 2, 0})}) {
        for (long u = -3; u <= 3; ++u) {
            CHECK(is_totally_invariant(g, ProjPoint(Int(u), Int(1))) ==
                  fiber_oracle(g, ProjPoint(Int(u), Int(1))));
        }
        CHECK(is_totally_invariant(g, ProjPoint::infinity()) ==
              fiber_oracle(g, ProjPoint::infinity()));
    }
}

TEST_CASE("total invariance of quadratic pairs") {
    MinPoly2 i_pair{Rat(0), Rat(1)};  // t^2 + 1
    ProjRatMap newton = pmap({-1, 0, 1}, {0, 2, 0});  // (z^2-1)/(2z)
    CHECK(is_totally_invariant(newton, i_pair));
    CHECK(fiber_oracle(newton, i_pair));

    ProjRatMap half = pmap({1, 0, 1}, {0, 2, 0});
    CHECK_FALSE(is_totally_invariant(half, i_pair));
    CHECK_FALSE(fiber_oracle(half, i_pair));

    MinPoly2 omega{Rat(1), Rat(1)};  // t^2 + t + 1
    CHECK_FALSE(is_totally_invariant(newton, omega));
    CHECK_FALSE(fiber_oracle(newton, omega));

    CHECK_THROWS_AS(is_totally_invariant(newton, MinPoly2{Rat(0), Rat(-1)}), error);
    CHECK(i_pair.str() == "t^2+1");
    CHECK(MinPoly2{Rat(-1, 2), Rat(3)}.str() == "t^2-1/2*t+3");
}

TEST_CASE("totally invariant point sets") {
    ProjRatMap pow4 = pmap({0, 0, 0, 0, 1}, {1, 0, 0, 0, 0});
    auto t = totally_invariant_points(pow4);
    REQUIRE(t.rational.size() == 2);
    CHECK(t.rational[0] == ProjPoint(Int(0), Int(1)));
    CHECK(t.rational[1] == ProjPoint::infinity());
    CHECK(t.quadratic.empty());

    auto tn = totally_invariant_points(pmap({-1, 0, 1}, {0, 2, 0}));
    CHECK(tn.rational.empty());
    REQUIRE(tn.quadratic.size() == 1);
    CHECK(tn.quadratic[0] == MinPoly2{Rat(0), Rat(1)});

    auto th = totally_invariant_points(pmap({1, 0, 1}, {0, 2, 0}));
    REQUIRE(th.rational.size() == 2);
    CHECK(th.rational[0] == ProjPoint(Int(-1), Int(1)));
    CHECK(th.rational[1] == ProjPoint(Int(1), Int(1)));

    CHECK(totally_invariant_points(pmap({1, 0, 1}, {0, 1, 0})).empty());

    // affine polynomial: infinity is always there
    auto tp = totally_invariant_points(pmap({-2, 0, 1}, {1, 0, 0}));
    REQUIRE(tp.rational.size() == 1);
    CHECK(tp.rational[0] == ProjPoint::infinity());

    CHECK_THROWS_AS(totally_invariant_points(pmap({0, 1}, {1, 0})), error);
}

TEST_CASE("exceptional sets") {
    ProjRatMap sq = pmap({0, 0, 1}, {1, 0, 0});
    auto e = exceptional_set(sq);
    REQUIRE(e.rational.size() == 2);
    CHECK(e.point_count() == 2);

    CHECK(exceptional_set(pmap({1, 0, 1}, {0, 1, 0})).empty());
    CHECK(exceptional_set(pmap({-1, 0, 1}, {0, 2, 0})).quadratic.size() == 1);

    // E(g) = E(g^2)
    for (const auto& g : {sq, pmap({1, 0, 1}, {0, 2, 0}), pmap({-2, 0, 1}, {1, 0, 0})}) {
        CHECK(exceptional_set(g) == exceptional_set(compose(g, g)));
    }
}

TEST_CASE("polynomial conjugacy classification") {
    auto r1 = polynomial_conjugacy(pmap({-2, 0, 1}, {1, 0, 0}));  // z^2 - 2
    CHECK(r1.kind == ConjugacyKind::GItself);
    REQUIRE(r1.witness.rational.size() == 1);
    CHECK(r1.witness.rational[0] == ProjPoint::infinity());

    auto r2 = polynomial_conjugacy(pmap({-1, 0, 1}, {0, 2, 0}));
    CHECK(r2.kind == ConjugacyKind::GItself);
    CHECK(r2.witness.quadratic.size() == 1);

    auto r3 = polynomial_conjugacy(pmap({1, 0, 1}, {0, 1, 0}));
    CHECK(r3.kind == ConjugacyKind::NoIterate);
    CHECK(r3.witness.empty());

    // z -> 1/z^2 swaps 0 and infinity: only the square is polynomial
    auto r4 = polynomial_conjugacy(pmap({1, 0, 0}, {0, 0, 1}));
    CHECK(r4.kind == ConjugacyKind::SquareOnly);
    REQUIRE(r4.witness.rational.size() == 2);
    CHECK(r4.witness.rational[0] == ProjPoint(Int(0), Int(1)));
    CHECK(r4.witness.rational[1] == ProjPoint::infinity());
}

TEST_CASE("invariant sets transform along conjugation") {
    Mobius shift(Rat(1), Rat(3), Rat(0), Rat(1));
    Mobius inv(Rat(0), Rat(1), Rat(1), Rat(0));
    for (const auto& g : {pmap({0, 0, 0, 0, 1}, {1, 0, 0, 0, 0}), pmap({1, 0, 1}, {0, 2, 0})}) {
        for (const Mobius& m : {shift, inv}) {
            auto before = totally_invariant_points(g);
            auto after = totally_invariant_points(conjugate(g, m));
            std::vector<ProjPoint> mapped;
            for (const auto& p : before.rational) mapped.push_back(conjugate_point(p, m));
            std::sort(mapped.begin(), mapped.end());
            CHECK(after.rational == mapped);
            CHECK(after.quadratic.size() == before.quadratic.size());
        }
    }
}
