#include "dml/heights.hpp"

#include <algorithm>
#include <cmath>

#include "dml/real.hpp"

namespace dml {

namespace {

Int coord_max(const ProjPoint& p) {
    Int a = abs(p.u()), b = abs(p.w());
    return a > b ? a : b;
}

double log_up(const Rat& arg) {
    // upper bound on log(arg) in double precision
    Real r = Real::log_of_rational(arg, 96);
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set(t, r.raw(), MPFR_RNDU);
    mpfr_nextabove(t);
    double out = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return out;
}

}  // namespace

HeightValue weil_height(const ProjPoint& p) {
    Int arg = coord_max(p);
    return {arg, Real::log_of_int(arg, 64).to_double()};
}

// Bezout cofactors: integer (A, B) of degree < d and positive R with
// A g1 + B g2 = R on the dehomogenized side handed in as coefficients.
static std::pair<std::vector<Int>, Int> bezout_cofactors(const std::vector<Int>& g1,
                                                         const std::vector<Int>& g2) {
    size_t d = g1.size() - 1;
    size_t n = 2 * d;
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    // column k < d: x^k g1; column d+k: x^k g2; row j: coefficient of x^j
    for (size_t k = 0; k < d; ++k)
        for (size_t i = 0; i <= d; ++i) {
            m[k + i][k] = Rat(g1[i]);
            m[k + i][d + k] = Rat(g2[i]);
        }
    std::vector<Rat> rhs(n, Rat(0));
    rhs[0] = 1;
    auto sol = solve_linear(std::move(m), std::move(rhs));
    if (!sol) fail(errc::internal, "cofactor system singular for a nondegenerate map");
    Int scale(1);
    for (const Rat& c : *sol) scale = lcm(scale, c.get_den());
    std::vector<Int> cof;
    cof.reserve(n);
    for (const Rat& c : *sol) {
        Rat t = c * scale;
        cof.push_back(t.get_num());
    }
    return {std::move(cof), scale};
}

HeightBound height_comparison_constant(const ProjRatMap& g) {
    long d = g.degree();
    if (d < 2) fail(errc::domain, "height comparison needs degree >= 2");

    Int h1 = std::max(g.g1().l1_norm(), g.g2().l1_norm());

    // identities A g1 + B g2 = L in each affine chart bound max|G_i| below
    std::vector<Int> low1(g.g1().coeffs()), low2(g.g2().coeffs());
    auto [cy, ly] = bezout_cofactors(low1, low2);
    std::vector<Int> rev1(low1.rbegin(), low1.rend()), rev2(low2.rbegin(), low2.rend());
    auto [cx, lx] = bezout_cofactors(rev1, rev2);

    auto l1 = [](const std::vector<Int>& v) {
        Int s(0);
        for (const Int& z : v) s += abs(z);
        return s;
    };
    // gcd of the evaluated pair divides lx*ly; each chart loses at most its
    // own cofactor norm
    Int ky = l1(cy) * lx;
    Int kx = l1(cx) * ly;
    Int arg = std::max({h1, kx, ky, Int(1)});
    return {Rat(arg), log_up(Rat(arg))};
}

CanonicalHeightEstimate canonical_height(const ProjRatMap& g, const ProjPoint& p, long n_iter,
                                         const OrbitCaps& caps) {
    long d = g.degree();
    if (d < 2) fail(errc::domain, "canonical height needs degree >= 2");
    if (n_iter < 0) fail(errc::domain, "n_iter must be nonnegative");
    ProjPoint q = p;
    for (long i = 0; i < n_iter; ++i) {
        q = eval(g, q);
        if (std::max(bit_size(q.u()), bit_size(q.w())) > caps.value_bits)
            fail(errc::budget, "orbit coordinate size beyond cap in canonical_height");
    }
    CanonicalHeightEstimate out;
    out.arg = coord_max(q);
    out.n = n_iter;
    out.scale = pow_int(Int(d), static_cast<unsigned long>(n_iter));
    Real l = Real::log_of_int(out.arg, 96);
    l.div_int(out.scale);
    out.estimate = l.to_double();
    HeightBound c = height_comparison_constant(g);
    out.error_bound = c.approx / (mpz_get_d(out.scale.get_mpz_t()) * (d - 1));
    // keep the reported bound safely rounded up
    out.error_bound = std::nexttoward(out.error_bound, 1e300);
    return out;
}

PreperiodicityVerdict is_preperiodic(const ProjRatMap& g, const ProjPoint& p, long budget,
                                     const OrbitCaps& caps) {
    if (budget < 0) fail(errc::domain, "budget must be nonnegative");
    long d = g.degree();
    PreperiodicityVerdict v{};
    std::optional<Rat> threshold;
    if (d >= 2) threshold = height_comparison_constant(g).arg;

    std::map<ProjPoint, long> seen;
    ProjPoint q = p;
    for (long n = 0; n <= budget; ++n) {
        v.budget_spent = n;
        size_t bits = std::max(bit_size(q.u()), bit_size(q.w()));
        if (bits <= caps.memo_bits) {
            auto [it, fresh] = seen.try_emplace(q, n);
            if (!fresh) {
                v.kind = PreperiodicityVerdict::Kind::Preperiodic;
                v.tail = it->second;
                v.period = n - it->second;
                return v;
            }
        }
        if (threshold) {
            // h(q) > C/(d-1), decided as arg^(d-1) > C_arg; by Northcott and
            // the telescoped comparison bound the orbit then escapes forever
            Int arg = coord_max(q);
            if (Rat(pow_int(arg, static_cast<unsigned long>(d - 1))) > *threshold) {
                v.kind = PreperiodicityVerdict::Kind::NonPreperiodic;
                v.witness_index = n;
                v.witness_arg = arg;
                v.threshold_arg = *threshold;
                return v;
            }
        }
        if (n == budget || bits > caps.value_bits) break;
        q = eval(g, q);
    }
    v.kind = PreperiodicityVerdict::Kind::Unknown;
    return v;
}

PreperiodicityVerdict is_preperiodic(const AffinePolyMap& f, const Rat& x0, long budget,
                                     const OrbitCaps& caps) {
    return is_preperiodic(f.homogenized(), ProjPoint::from_rational(x0), budget, caps);
}

}  // namespace dml
