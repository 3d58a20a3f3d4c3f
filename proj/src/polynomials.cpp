#include "dml/polynomials.hpp"

#include <algorithm>
#include <cassert>

namespace dml {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }

RatPoly RatPoly::monomial(const Rat& c, size_t k) {
    std::vector<Rat> v(k + 1);
    v[k] = c;
    return RatPoly(std::move(v));
}

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& RatPoly::coeff(size_t k) const {
    static const Rat zero(0);
    return k < c_.size() ? c_[k] : zero;
}

const Rat& RatPoly::leading() const {
    if (c_.empty()) fail(errc::internal, "leading coefficient of 0");
    return c_.back();
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
    RatPoly acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * inner + constant(c_[k]);
    return acc;
}

RatPoly RatPoly::scaled(const Rat& c) const {
    if (c == 0) return RatPoly();
    std::vector<Rat> v(c_);
    for (Rat& x : v) x *= c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rat(1) / leading());
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
    return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) - b.coeff(k);
    return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> RatPoly::divrem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) fail(errc::domain, "polynomial division by 0");
    RatPoly r = a;
    std::vector<Rat> q;
    if (a.degree() >= b.degree()) q.assign(a.degree() - b.degree() + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        Rat c = r.leading() / b.leading();
        q[shift] = c;
        r = r - monomial(c, shift) * b;
    }
    return {RatPoly(std::move(q)), r};
}

RatPoly RatPoly::gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RatPoly RatPoly::squarefree_part() const {
    if (is_zero()) return *this;
    if (degree() == 0) return constant(Rat(1));
    RatPoly g = gcd(*this, derivative());
    return divrem(*this, g).first.monic();
}

namespace {

std::vector<Int> divisors_from(const Factorization& f, size_t cap) {
    std::vector<Int> divs{Int(1)};
    for (auto& [p, e] : f.factors) {
        size_t n = divs.size();
        Int pe(1);
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t k = 0; k < n; ++k) {
                divs.push_back(divs[k] * pe);
                if (divs.size() > cap)
                    fail(errc::budget, "too many divisor candidates in root search");
            }
        }
    }
    return divs;
}

}  // namespace

std::vector<std::pair<Rat, unsigned>> rational_roots(const RatPoly& p, const FactorBudget& budget) {
    if (p.is_zero()) fail(errc::domain, "rational_roots of the zero polynomial");
    std::vector<std::pair<Rat, unsigned>> out;

    RatPoly q = p;
    // deflate roots at 0
    unsigned mult0 = 0;
    while (!q.is_zero() && q.coeff(0) == 0) {
        std::vector<Rat> v(q.coeffs().begin() + 1, q.coeffs().end());
        q = RatPoly(std::move(v));
        ++mult0;
    }
    if (mult0) out.push_back({Rat(0), mult0});
    if (q.degree() < 1) {
        std::sort(out.begin(), out.end());
        return out;
    }

    // clear denominators to a primitive integer polynomial
    Int scale(1);
    for (const Rat& c : q.coeffs()) scale = lcm(scale, c.get_den());
    std::vector<Int> zc;
    zc.reserve(q.coeffs().size());
    for (const Rat& c : q.coeffs()) {
        Rat t = c * scale;
        zc.push_back(t.get_num());
    }
    Int cont(0);
    for (const Int& z : zc) cont = gcd(cont, z);
    for (Int& z : zc) z /= cont;

    auto f0 = factor(zc.front(), budget);
    auto fd = factor(zc.back(), budget);
    if (!f0.complete() || !fd.complete())
        fail(errc::budget, "root search requires factored edge coefficients");
    auto ps = divisors_from(f0, 1u << 12);
    auto qs = divisors_from(fd, 1u << 12);
    if (ps.size() * qs.size() > (1u << 20))
        fail(errc::budget, "too many divisor candidates in root search");

    std::vector<Rat> candidates;
    for (const Int& a : ps)
        for (const Int& b : qs) {
            if (gcd(a, b) != 1) continue;
            candidates.push_back(rat_from_coprime(a, b));
            candidates.push_back(rat_from_coprime(Int(-a), b));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rat& r : candidates) {
        if (q.eval(r) != 0) continue;
        RatPoly lin(std::vector<Rat>{-r, Rat(1)});
        unsigned mult = 0;
        RatPoly rem = q;
        for (;;) {
            auto [quo, rr] = RatPoly::divrem(rem, lin);
            if (!rr.is_zero()) break;
            ++mult;
            rem = quo;
        }
        out.push_back({r, mult});
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntBinForm::IntBinForm(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) fail(errc::internal, "binary form needs a declared degree");
}

IntBinForm IntBinForm::zero(long degree) { return IntBinForm(std::vector<Int>(degree + 1)); }

bool IntBinForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& z) { return z == 0; });
}

Int IntBinForm::eval(const Int& u, const Int& w) const {
    // sum c_k u^k w^(d-k) with two running powers
    long d = degree();
    std::vector<Int> upow(d + 1), wpow(d + 1);
    upow[0] = 1;
    wpow[0] = 1;
    for (long k = 1; k <= d; ++k) {
        upow[k] = upow[k - 1] * u;
        wpow[k] = wpow[k - 1] * w;
    }
    Int acc(0);
    for (long k = 0; k <= d; ++k)
        if (c_[k] != 0) acc += c_[k] * upow[k] * wpow[d - k];
    return acc;
}

Int IntBinForm::content() const {
    Int g(0);
    for (const Int& z : c_) g = gcd(g, z);
    return g;
}

Int IntBinForm::l1_norm() const {
    Int s(0);
    for (const Int& z : c_) s += abs(z);
    return s;
}

IntBinForm IntBinForm::primitive_part() const {
    Int g = content();
    if (g == 0) return *this;
    std::vector<Int> v(c_);
    for (Int& z : v) z /= g;
    for (size_t k = v.size(); k-- > 0;) {
        if (v[k] != 0) {
            if (v[k] < 0)
                for (Int& z : v) z = -z;
            break;
        }
    }
    return IntBinForm(std::move(v));
}

IntBinForm operator+(const IntBinForm& a, const IntBinForm& b) {
    if (a.degree() != b.degree()) fail(errc::internal, "form degree mismatch in +");
    std::vector<Int> v(a.c_);
    for (size_t k = 0; k < v.size(); ++k) v[k] += b.c_[k];
    return IntBinForm(std::move(v));
}

IntBinForm operator-(const IntBinForm& a, const IntBinForm& b) {
    if (a.degree() != b.degree()) fail(errc::internal, "form degree mismatch in -");
    std::vector<Int> v(a.c_);
    for (size_t k = 0; k < v.size(); ++k) v[k] -= b.c_[k];
    return IntBinForm(std::move(v));
}

IntBinForm operator*(const IntBinForm& a, const IntBinForm& b) {
    std::vector<Int> v(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) v[i + j] += a.c_[i] * b.c_[j];
    }
    return IntBinForm(std::move(v));
}

IntBinForm IntBinForm::operator-() const {
    std::vector<Int> v(c_);
    for (Int& z : v) z = -z;
    return IntBinForm(std::move(v));
}

IntBinForm IntBinForm::substitute(const IntBinForm& outer, const IntBinForm& a,
                                  const IntBinForm& b) {
    if (a.degree() != b.degree()) fail(errc::internal, "substitution pair degree mismatch");
    long d = outer.degree();
    std::vector<IntBinForm> apow, bpow;
    apow.reserve(d + 1);
    bpow.reserve(d + 1);
    apow.push_back(IntBinForm(std::vector<Int>{Int(1)}));
    bpow.push_back(IntBinForm(std::vector<Int>{Int(1)}));
    for (long k = 1; k <= d; ++k) {
        apow.push_back(apow.back() * a);
        bpow.push_back(bpow.back() * b);
    }
    IntBinForm acc = IntBinForm::zero(d * a.degree());
    for (long k = 0; k <= d; ++k) {
        if (outer.c_[k] == 0) continue;
        IntBinForm term = apow[k] * bpow[d - k];
        std::vector<Int> v(acc.coeffs());
        for (size_t i = 0; i < v.size(); ++i) v[i] += outer.c_[k] * term[i];
        acc = IntBinForm(std::move(v));
    }
    return acc;
}

std::pair<long, RatPoly> IntBinForm::dehomogenize() const {
    std::vector<Rat> v;
    v.reserve(c_.size());
    for (const Int& z : c_) v.push_back(Rat(z));
    RatPoly f{std::move(v)};
    return {degree() - f.degree(), f};
}

IntBinForm IntBinForm::homogenize(const RatPoly& f, long y_mult) {
    if (f.is_zero()) fail(errc::internal, "homogenize(0)");
    Int scale(1);
    for (const Rat& c : f.coeffs()) scale = lcm(scale, c.get_den());
    std::vector<Int> v;
    v.reserve(f.degree() + 1 + y_mult);
    for (const Rat& c : f.coeffs()) {
        Rat t = c * scale;
        v.push_back(t.get_num());
    }
    for (long k = 0; k < y_mult; ++k) v.push_back(Int(0));
    // y_mult extra slots raise the Y-degree; X-exponents are unchanged
    return IntBinForm(std::move(v));
}

Int bareiss_det(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return Int(1);
    Int denom(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) return Int(0);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), denom.get_mpz_t());
            }
            m[i][k] = 0;
        }
        denom = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

Int resultant(const IntBinForm& a, const IntBinForm& b) {
    if (a.degree() != b.degree()) fail(errc::internal, "resultant needs equal declared degrees");
    long d = a.degree();
    if (d == 0) return Int(1);
    size_t n = 2 * static_cast<size_t>(d);
    // Sylvester matrix in the degree-d convention, descending coefficients
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (long row = 0; row < d; ++row)
        for (long k = 0; k <= d; ++k) {
            m[row][row + k] = a[d - k];
            m[row + d][row + k] = b[d - k];
        }
    return bareiss_det(std::move(m));
}

IntBinForm binform_gcd(const IntBinForm& a, const IntBinForm& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    auto [ya, fa] = a.dehomogenize();
    auto [yb, fb] = b.dehomogenize();
    RatPoly g = RatPoly::gcd(fa, fb);
    return IntBinForm::homogenize(g, std::min(ya, yb)).primitive_part();
}

IntBinForm binform_squarefree(const IntBinForm& f) {
    if (f.is_zero()) fail(errc::internal, "squarefree part of the zero form");
    auto [y, p] = f.dehomogenize();
    RatPoly sf = p.is_zero() ? RatPoly::constant(Rat(1)) : p.squarefree_part();
    return IntBinForm::homogenize(sf, std::min<long>(y, 1)).primitive_part();
}

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs) {
    size_t n = a.size();
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[k]);
        std::swap(rhs[pivot], rhs[k]);
        Rat inv = Rat(1) / a[k][k];
        for (size_t j = k; j < n; ++j) a[k][j] *= inv;
        rhs[k] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rat c = a[i][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= c * a[k][j];
            rhs[i] -= c * rhs[k];
        }
    }
    return rhs;
}

void SparsePoly3::add_term(const Key& k, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

SparsePoly3 operator*(const SparsePoly3& a, const SparsePoly3& b) {
    SparsePoly3 out;
    for (auto& [ka, ca] : a.t_)
        for (auto& [kb, cb] : b.t_)
            out.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return out;
}

bool SparsePoly3::divides(const SparsePoly3& f, const SparsePoly3& g) {
    if (f.is_zero()) fail(errc::domain, "division by the zero polynomial");
    SparsePoly3 rem = g;
    const auto& [lk, lc] = *f.t_.rbegin();
    while (!rem.is_zero()) {
        const auto& [rk, rc] = *rem.t_.rbegin();
        Key shift{rk[0] - lk[0], rk[1] - lk[1], rk[2] - lk[2]};
        if (shift[0] < 0 || shift[1] < 0 || shift[2] < 0) return false;
        Rat c = rc / lc;
        // rem -= c * x^shift * f
        for (auto& [k, fc] : f.t_)
            rem.add_term({k[0] + shift[0], k[1] + shift[1], k[2] + shift[2]}, -c * fc);
    }
    return true;
}

}  // namespace dml
