#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dml/places.hpp"

namespace dml {

// Dense univariate polynomial over Q, coefficients ascending.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs);
    static RatPoly constant(const Rat& c);
    static RatPoly monomial(const Rat& c, size_t k);

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rat& coeff(size_t k) const;  // 0 beyond the degree
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const;

    Rat eval(const Rat& x) const;
    RatPoly derivative() const;
    RatPoly compose(const RatPoly& inner) const;
    RatPoly scaled(const Rat& c) const;
    RatPoly monic() const;

    friend RatPoly operator+(const RatPoly&, const RatPoly&);
    friend RatPoly operator-(const RatPoly&, const RatPoly&);
    friend RatPoly operator*(const RatPoly&, const RatPoly&);
    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    static std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);
    static RatPoly gcd(RatPoly a, RatPoly b);  // monic, or zero
    RatPoly squarefree_part() const;           // monic

private:
    void trim();
    std::vector<Rat> c_;
};

// Rational roots with multiplicities, sorted ascending. Needs the leading and
// trailing coefficients factored, so it can throw errc::budget.
std::vector<std::pair<Rat, unsigned>> rational_roots(const RatPoly& p,
                                                     const FactorBudget& budget = {});

// Binary form over Z of a declared degree: c[k] is the coefficient of
// X^k Y^(d-k). Zero coefficients are kept so the degree is explicit.
class IntBinForm {
public:
    explicit IntBinForm(std::vector<Int> coeffs);
    static IntBinForm zero(long degree);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Int& operator[](size_t k) const { return c_[k]; }
    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const;

    Int eval(const Int& u, const Int& w) const;
    Int content() const;  // gcd of coefficients, >= 0
    Int l1_norm() const;
    IntBinForm primitive_part() const;  // content removed, leading nonzero coeff > 0

    friend IntBinForm operator+(const IntBinForm&, const IntBinForm&);
    friend IntBinForm operator-(const IntBinForm&, const IntBinForm&);
    friend IntBinForm operator*(const IntBinForm&, const IntBinForm&);
    IntBinForm operator-() const;
    friend bool operator==(const IntBinForm&, const IntBinForm&) = default;

    // outer(a, b) where a, b share a degree; result degree = deg outer * deg a
    static IntBinForm substitute(const IntBinForm& outer, const IntBinForm& a,
                                 const IntBinForm& b);

    // F = Y^e * homogenization of f, where f(x) = F(x, 1)
    std::pair<long, RatPoly> dehomogenize() const;
    static IntBinForm homogenize(const RatPoly& f, long y_mult);

private:
    std::vector<Int> c_;
};

// Resultant of two forms of the same declared degree (Sylvester/Bareiss).
Int resultant(const IntBinForm& a, const IntBinForm& b);

IntBinForm binform_gcd(const IntBinForm& a, const IntBinForm& b);  // primitive
IntBinForm binform_squarefree(const IntBinForm& f);                // primitive

Int bareiss_det(std::vector<std::vector<Int>> m);

// Gaussian elimination; nullopt when the system is singular.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> rhs);

// Sparse polynomial in (x, U, W) ordered lexicographically by exponent.
class SparsePoly3 {
public:
    using Key = std::array<long, 3>;

    void add_term(const Key& k, const Rat& c);
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::map<Key, Rat>& terms() const { return t_; }

    friend SparsePoly3 operator*(const SparsePoly3&, const SparsePoly3&);

    // true iff f divides g exactly in Q[x, U, W]
    static bool divides(const SparsePoly3& f, const SparsePoly3& g);

private:
    std::map<Key, Rat> t_;
};

}  // namespace dml
