#include "dml/projective.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace dml {

ProjPoint::ProjPoint(Int u, Int w) : u_(std::move(u)), w_(std::move(w)) {
    if (u_ == 0 && w_ == 0) fail(errc::domain, "[0:0] is not a projective point");
    Int g = gcd(u_, w_);
    u_ /= g;
    w_ /= g;
    if (w_ < 0 || (w_ == 0 && u_ < 0)) {
        u_ = -u_;
        w_ = -w_;
    }
}

ProjPoint ProjPoint::infinity() { return from_coprime(Int(1), Int(0)); }

ProjPoint ProjPoint::from_rational(const Rat& x) {
    // normalizing constructor: tolerates rationals built without canonicalize()
    return ProjPoint(x.get_num(), x.get_den());
}

ProjPoint ProjPoint::from_coprime(Int u, Int w) {
    ProjPoint p;
    p.u_ = std::move(u);
    p.w_ = std::move(w);
    assert(p.w_ > 0 || (p.w_ == 0 && p.u_ == 1));
    return p;
}

ProjPoint ProjPoint::parse(std::string_view s, const std::string& location) {
    if (s == "inf" || s == "oo") return infinity();
    auto colon = s.find(':');
    if (colon == std::string_view::npos) return from_rational(parse_rational(s, location));
    Int u = parse_int(s.substr(0, colon), location);
    Int w = parse_int(s.substr(colon + 1), location);
    if (u == 0 && w == 0) fail(errc::parse, "[0:0] is not a projective point", location);
    return ProjPoint(std::move(u), std::move(w));
}

Rat ProjPoint::affine() const {
    if (is_infinity()) fail(errc::domain, "infinity has no affine value");
    return rat_from_coprime(u_, w_);
}

std::string ProjPoint::str() const { return to_string(u_) + ":" + to_string(w_); }

Mobius::Mobius(Rat a, Rat b, Rat c, Rat d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ == 0) fail(errc::domain, "Mobius map needs nonzero determinant");
}

Mobius Mobius::identity() { return Mobius(Rat(1), Rat(0), Rat(0), Rat(1)); }

Rat mobius_det(const Mobius& m) { return m.a() * m.d() - m.b() * m.c(); }

std::array<Int, 4> Mobius::integer_rep() const {
    Int l = lcm(lcm(a_.get_den(), b_.get_den()), lcm(c_.get_den(), d_.get_den()));
    std::array<Int, 4> m;
    const Rat* src[4] = {&a_, &b_, &c_, &d_};
    Int g(0);
    for (int i = 0; i < 4; ++i) {
        Rat t = *src[i] * l;
        m[i] = t.get_num();
        g = gcd(g, m[i]);
    }
    for (auto& z : m) z /= g;
    for (auto& z : m) {
        if (z == 0) continue;
        if (z < 0)
            for (auto& y : m) y = -y;
        break;
    }
    return m;
}

std::string Mobius::str() const {
    return "[" + to_string(a_) + "," + to_string(b_) + ";" + to_string(c_) + "," + to_string(d_) +
           "]";
}

ProjRatMap::ProjRatMap(IntBinForm g1, IntBinForm g2) : g1_(std::move(g1)), g2_(std::move(g2)) {
    if (g1_.degree() != g2_.degree())
        fail(errc::domain, "map coordinates must share one degree");
    if (g1_.degree() < 1) fail(errc::domain, "map degree must be at least 1");
    if (g1_.is_zero() || g2_.is_zero()) fail(errc::domain, "degenerate map: zero coordinate form");
    Int cont = gcd(g1_.content(), g2_.content());
    std::vector<Int> v1(g1_.coeffs()), v2(g2_.coeffs());
    for (Int& z : v1) z /= cont;
    for (Int& z : v2) z /= cont;
    // sign convention: highest nonzero coefficient of the first form positive
    for (size_t k = v1.size(); k-- > 0;) {
        if (v1[k] == 0) continue;
        if (v1[k] < 0) {
            for (Int& z : v1) z = -z;
            for (Int& z : v2) z = -z;
        }
        break;
    }
    g1_ = IntBinForm(std::move(v1));
    g2_ = IntBinForm(std::move(v2));
    res_abs_ = abs(resultant(g1_, g2_));
    if (res_abs_ == 0) fail(errc::domain, "degenerate map: coordinate forms share a root");
}

ProjRatMap ProjRatMap::from_rational_coeffs(const std::vector<Rat>& g1, const std::vector<Rat>& g2) {
    if (g1.size() != g2.size() || g1.empty())
        fail(errc::domain, "map coordinates must share one degree");
    Int l(1);
    for (const Rat& c : g1) l = lcm(l, c.get_den());
    for (const Rat& c : g2) l = lcm(l, c.get_den());
    std::vector<Int> v1, v2;
    for (const Rat& c : g1) {
        Rat t = c * l;
        v1.push_back(t.get_num());
    }
    for (const Rat& c : g2) {
        Rat t = c * l;
        v2.push_back(t.get_num());
    }
    return ProjRatMap(IntBinForm(std::move(v1)), IntBinForm(std::move(v2)));
}

std::string ProjRatMap::str() const {
    auto side = [](const IntBinForm& f) {
        std::string s;
        for (long k = f.degree(); k >= 0; --k) {
            s += to_string(f[k]);
            if (k) s += ",";
        }
        return s;
    };
    return side(g1_) + ";" + side(g2_);
}

ProjPoint eval(const ProjRatMap& g, const ProjPoint& p) {
    Int a = g.g1().eval(p.u(), p.w());
    Int b = g.g2().eval(p.u(), p.w());
    // gcd(a, b) divides the resultant for coprime input, so reduce against it
    const Int& r = g.resultant_abs();
    Int ga = gcd(a, r);
    Int gb = gcd(b, r);
    Int c = gcd(ga, gb);
    a /= c;
    b /= c;
    if (b < 0 || (b == 0 && a < 0)) {
        a = -a;
        b = -b;
    }
    // when b = 0 the whole of a = gcd(a, b) divides the resultant, so a = 1 here
    return ProjPoint::from_coprime(std::move(a), std::move(b));
}

ProjOrbitSegment orbit(const ProjRatMap& g, const ProjPoint& start, long nmax,
                       const OrbitCaps& caps) {
    if (nmax < 0) fail(errc::domain, "nmax must be nonnegative");
    ProjOrbitSegment seg;
    seg.start = start;
    std::map<ProjPoint, long> seen;
    ProjPoint p = start;
    for (long n = 0;; ++n) {
        size_t bits = std::max(bit_size(p.u()), bit_size(p.w()));
        if (bits <= caps.memo_bits) {
            auto [it, fresh] = seen.try_emplace(p, n);
            if (!fresh) {
                seg.points.push_back(p);
                seg.cycle = CycleInfo{it->second, n - it->second};
                return seg;
            }
        }
        if (bits > caps.value_bits) {
            seg.truncated = true;
            return seg;
        }
        seg.points.push_back(p);
        if (n == nmax) return seg;
        p = eval(g, p);
    }
}

ProjRatMap compose(const ProjRatMap& outer, const ProjRatMap& inner) {
    IntBinForm h1 = IntBinForm::substitute(outer.g1(), inner.g1(), inner.g2());
    IntBinForm h2 = IntBinForm::substitute(outer.g2(), inner.g1(), inner.g2());
    return ProjRatMap(std::move(h1), std::move(h2));
}

ProjRatMap iterate(const ProjRatMap& g, long m, unsigned long coeff_bits_cap) {
    if (m < 1) fail(errc::domain, "iterate needs m >= 1");
    ProjRatMap acc = g;
    for (long i = 1; i < m; ++i) {
        acc = compose(g, acc);
        size_t bits = 0;
        for (const Int& z : acc.g1().coeffs()) bits = std::max(bits, bit_size(z));
        for (const Int& z : acc.g2().coeffs()) bits = std::max(bits, bit_size(z));
        if (bits > coeff_bits_cap) fail(errc::budget, "iterate coefficient size beyond cap");
    }
    return acc;
}

ProjPoint conjugate_point(const ProjPoint& p, const Mobius& m) {
    auto z = m.integer_rep();
    return ProjPoint(z[0] * p.u() + z[1] * p.w(), z[2] * p.u() + z[3] * p.w());
}

ProjRatMap conjugate(const ProjRatMap& g, const Mobius& m) {
    auto z = m.integer_rep();
    // adjugate substitution computes g(m^-1(.)) projectively
    IntBinForm sub_a(std::vector<Int>{-z[1], z[3]});   // d X - b Y
    IntBinForm sub_b(std::vector<Int>{z[0], -z[2]});   // -c X + a Y
    IntBinForm h1 = IntBinForm::substitute(g.g1(), sub_a, sub_b);
    IntBinForm h2 = IntBinForm::substitute(g.g2(), sub_a, sub_b);
    std::vector<Int> top(h1.coeffs()), bot(h1.coeffs());
    for (size_t k = 0; k < top.size(); ++k) {
        top[k] = z[0] * h1[k] + z[1] * h2[k];
        bot[k] = z[2] * h1[k] + z[3] * h2[k];
    }
    return ProjRatMap(IntBinForm(std::move(top)), IntBinForm(std::move(bot)));
}

IntBinForm fixed_point_form(const ProjRatMap& g) {
    long d = g.degree();
    std::vector<Int> v(d + 2, Int(0));
    // Y*G1 - X*G2: coefficient of X^k Y^(d+1-k)
    for (long k = 0; k <= d + 1; ++k) {
        if (k <= d) v[k] += g.g1()[k];
        if (k >= 1) v[k] -= g.g2()[k - 1];
    }
    IntBinForm f(std::move(v));
    if (f.is_zero()) fail(errc::domain, "identity map has every point fixed");
    return f.primitive_part();
}

std::string MinPoly2::str() const {
    auto term = [](const Rat& c, const char* var) {
        std::string s = c < 0 ? "-" : "+";
        Rat a = abs(c);
        if (a != 1 || !*var) {
            s += to_string(a);
            if (*var) s += "*";
        }
        s += var;
        return s;
    };
    std::string s = "t^2";
    if (c1 != 0) s += term(c1, "t");
    if (c0 != 0) s += term(c0, "");
    return s;
}

bool is_irreducible(const MinPoly2& q) {
    Rat d = q.discriminant();
    if (d < 0) return true;
    return !(mpz_perfect_square_p(d.get_num().get_mpz_t()) &&
             mpz_perfect_square_p(d.get_den().get_mpz_t()));
}

QuadExt q_add(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
QuadExt q_sub(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }

QuadExt q_mul(const MinPoly2& q, const QuadExt& x, const QuadExt& y) {
    // (a1 + b1 t)(a2 + b2 t) with t^2 = -c1 t - c0
    Rat bb = x.b * y.b;
    return {x.a * y.a - bb * q.c0, x.a * y.b + x.b * y.a - bb * q.c1};
}

QuadExt q_scale(const QuadExt& x, const Rat& c) { return {x.a * c, x.b * c}; }

namespace {

Int binom(long n, long k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace

bool is_totally_invariant(const ProjRatMap& g, const ProjPoint& p) {
    long d = g.degree();
    if (d < 2) fail(errc::domain, "total invariance needs degree >= 2");
    // fiber form (w G1 - u G2) must be proportional to (w X - u Y)^d
    std::vector<Int> phi(d + 1), tgt(d + 1);
    bool phi_zero = true;
    for (long k = 0; k <= d; ++k) {
        phi[k] = p.w() * g.g1()[k] - p.u() * g.g2()[k];
        if (phi[k] != 0) phi_zero = false;
        Int s = pow_int(Int(-p.u()), d - k);
        tgt[k] = binom(d, k) * pow_int(p.w(), k) * s;
    }
    if (phi_zero) fail(errc::internal, "zero fiber form on a nondegenerate map");
    for (long k = 0; k <= d; ++k)
        for (long l = k + 1; l <= d; ++l)
            if (phi[k] * tgt[l] != phi[l] * tgt[k]) return false;
    return true;
}

bool is_totally_invariant(const ProjRatMap& g, const MinPoly2& q) {
    long d = g.degree();
    if (d < 2) fail(errc::domain, "total invariance needs degree >= 2");
    if (!is_irreducible(q)) fail(errc::domain, "minimal polynomial must be irreducible");
    // the point is [t : 1]; work in Q[t]/(q)
    std::vector<QuadExt> phi(d + 1), tgt(d + 1);
    QuadExt minus_t{Rat(0), Rat(-1)};
    std::vector<QuadExt> mtpow(d + 1);
    mtpow[0] = {Rat(1), Rat(0)};
    for (long j = 1; j <= d; ++j) mtpow[j] = q_mul(q, mtpow[j - 1], minus_t);
    for (long k = 0; k <= d; ++k) {
        phi[k] = {Rat(g.g1()[k]), Rat(-Int(g.g2()[k]))};
        tgt[k] = q_scale(mtpow[d - k], Rat(binom(d, k)));
    }
    for (long k = 0; k <= d; ++k)
        for (long l = k + 1; l <= d; ++l)
            if (!(q_sub(q_mul(q, phi[k], tgt[l]), q_mul(q, phi[l], tgt[k])).is_zero()))
                return false;
    return true;
}

AlgebraicPointSet totally_invariant_points(const ProjRatMap& g) {
    long d = g.degree();
    if (d < 2) fail(errc::domain, "totally_invariant_points needs degree >= 2");

    // Point P is totally invariant iff the 2 x (d+1) matrix with rows
    //   (coeffs of the fiber form of P) and (coeffs of (wX - uY)^d)
    // has rank 1 at (u, w) = P. Each entry is a binary form in (u, w); the
    // common roots of all 2x2 minors cut exactly the invariant locus.
    std::vector<IntBinForm> phi, beta;
    for (long k = 0; k <= d; ++k) {
        phi.push_back(IntBinForm(std::vector<Int>{g.g1()[k], -Int(g.g2()[k])}));
        std::vector<Int> b(d + 1, Int(0));
        Int sign = (d - k) % 2 ? Int(-1) : Int(1);
        b[d - k] = binom(d, k) * sign;
        beta.push_back(IntBinForm(std::move(b)));
    }
    std::optional<IntBinForm> acc;
    for (long k = 0; k <= d; ++k)
        for (long l = k + 1; l <= d; ++l) {
            IntBinForm minor = phi[k] * beta[l] - phi[l] * beta[k];
            if (minor.is_zero()) continue;
            acc = acc ? binform_gcd(*acc, minor) : minor.primitive_part();
        }
    if (!acc) fail(errc::internal, "all invariance minors vanished identically");

    AlgebraicPointSet out;
    IntBinForm locus = binform_squarefree(*acc);
    auto [ymult, f] = locus.dehomogenize();
    if (f.degree() + (ymult ? 1 : 0) > 2)
        fail(errc::internal, "more than two totally invariant points");

    std::vector<ProjPoint> rational;
    std::vector<MinPoly2> quadratic;
    if (ymult > 0) rational.push_back(ProjPoint::infinity());
    if (f.degree() == 1) {
        rational.push_back(ProjPoint::from_rational(-f.coeff(0) / f.coeff(1)));
    } else if (f.degree() == 2) {
        MinPoly2 q{f.coeff(1) / f.coeff(2), f.coeff(0) / f.coeff(2)};
        if (is_irreducible(q)) {
            quadratic.push_back(q);
        } else {
            Rat disc = q.discriminant();
            Int sn, sd;
            mpz_sqrt(sn.get_mpz_t(), disc.get_num().get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), disc.get_den().get_mpz_t());
            Rat s = rat_from_coprime(sn, sd);
            rational.push_back(ProjPoint::from_rational((-q.c1 + s) / 2));
            rational.push_back(ProjPoint::from_rational((-q.c1 - s) / 2));
        }
    }

    // re-verify every candidate independently
    for (const ProjPoint& p : rational) {
        if (!is_totally_invariant(g, p))
            fail(errc::internal, "candidate failed invariance recheck: " + p.str());
        out.rational.push_back(p);
    }
    for (const MinPoly2& q : quadratic) {
        if (!is_totally_invariant(g, q))
            fail(errc::internal, "candidate failed invariance recheck: " + q.str());
        out.quadratic.push_back(q);
    }
    std::sort(out.rational.begin(), out.rational.end());
    std::sort(out.quadratic.begin(), out.quadratic.end());
    if (out.point_count() > 2) fail(errc::internal, "more than two totally invariant points");
    return out;
}

AlgebraicPointSet exceptional_set(const ProjRatMap& g) {
    if (g.degree() < 2) fail(errc::domain, "exceptional_set needs degree >= 2");
    return totally_invariant_points(compose(g, g));
}

ConjugacyResult polynomial_conjugacy(const ProjRatMap& g) {
    if (g.degree() < 2) fail(errc::domain, "polynomial_conjugacy needs degree >= 2");
    AlgebraicPointSet t1 = totally_invariant_points(g);
    if (!t1.empty()) return {ConjugacyKind::GItself, std::move(t1)};
    AlgebraicPointSet t2 = exceptional_set(g);
    if (!t2.empty()) return {ConjugacyKind::SquareOnly, std::move(t2)};
    return {ConjugacyKind::NoIterate, {}};
}

}  // namespace dml
