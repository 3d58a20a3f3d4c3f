#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dml/polynomials.hpp"

namespace dml {

// A point of P^1(Q) as a coprime integer pair, w > 0 or (w = 0, u = 1).
class ProjPoint {
public:
    ProjPoint() : u_(0), w_(1) {}
    ProjPoint(Int u, Int w);  // normalizes; (0,0) rejected
    static ProjPoint infinity();
    static ProjPoint from_rational(const Rat& x);
    static ProjPoint from_coprime(Int u, Int w);  // trusts the invariants
    static ProjPoint parse(std::string_view s, const std::string& location = {});

    const Int& u() const { return u_; }
    const Int& w() const { return w_; }
    bool is_infinity() const { return w_ == 0; }
    Rat affine() const;  // rejects infinity
    std::string str() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        if (a.u_ != b.u_) return a.u_ < b.u_;
        return a.w_ < b.w_;
    }

private:
    Int u_, w_;
};

struct CycleInfo {
    long tail = 0;
    long period = 0;
    friend bool operator==(const CycleInfo&, const CycleInfo&) = default;
};

struct OrbitCaps {
    unsigned long value_bits = 1ul << 22;  // stop once a coordinate passes this
    unsigned long memo_bits = 1ul << 20;   // only memoize points this small
};

// Invertible fractional linear map z -> (az + b)/(cz + d).
class Mobius {
public:
    Mobius(Rat a, Rat b, Rat c, Rat d);
    static Mobius identity();
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const Rat& c() const { return c_; }
    const Rat& d() const { return d_; }
    // content-free integer matrix with the same action, lead sign > 0
    std::array<Int, 4> integer_rep() const;
    std::string str() const;

private:
    Rat a_, b_, c_, d_;
};

// Endomorphism of P^1 given by a coprime pair of integer forms of equal
// degree. Construction removes joint content, normalizes the sign and
// rejects degenerate pairs (resultant 0).
class ProjRatMap {
public:
    ProjRatMap(IntBinForm g1, IntBinForm g2);
    static ProjRatMap from_rational_coeffs(const std::vector<Rat>& g1_ascending,
                                           const std::vector<Rat>& g2_ascending);

    long degree() const { return g1_.degree(); }
    const IntBinForm& g1() const { return g1_; }
    const IntBinForm& g2() const { return g2_; }
    const Int& resultant_abs() const { return res_abs_; }
    std::string str() const;

    friend bool operator==(const ProjRatMap& a, const ProjRatMap& b) {
        return a.g1_ == b.g1_ && a.g2_ == b.g2_;
    }

private:
    IntBinForm g1_, g2_;
    Int res_abs_;
};

ProjPoint eval(const ProjRatMap& g, const ProjPoint& p);

struct ProjOrbitSegment {
    ProjPoint start;
    std::vector<ProjPoint> points;  // points[0] = start
    std::optional<CycleInfo> cycle;
    bool truncated = false;
};

ProjOrbitSegment orbit(const ProjRatMap& g, const ProjPoint& start, long nmax,
                       const OrbitCaps& caps = {});

ProjRatMap compose(const ProjRatMap& outer, const ProjRatMap& inner);
ProjRatMap iterate(const ProjRatMap& g, long m, unsigned long coeff_bits_cap = 1ul << 20);

ProjRatMap conjugate(const ProjRatMap& g, const Mobius& m);   // m g m^-1
ProjPoint conjugate_point(const ProjPoint& p, const Mobius& m);
Rat mobius_det(const Mobius& m);

// numerator of g(X/Y) = X/Y: the form Y G1 - X G2 (primitive); its roots
// are the fixed points. Rejects the identity map.
IntBinForm fixed_point_form(const ProjRatMap& g);

// Monic irreducible quadratic t^2 + c1 t + c0 cutting a Galois pair of
// points [t : 1].
struct MinPoly2 {
    Rat c1, c0;
    Rat discriminant() const { return c1 * c1 - 4 * c0; }
    std::string str() const;
    friend bool operator==(const MinPoly2&, const MinPoly2&) = default;
    friend bool operator<(const MinPoly2& a, const MinPoly2& b) {
        if (a.c1 != b.c1) return a.c1 < b.c1;
        return a.c0 < b.c0;
    }
};

bool is_irreducible(const MinPoly2& q);

// Arithmetic in Q[t]/(t^2 + c1 t + c0): elements a + b t.
struct QuadExt {
    Rat a, b;
    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const QuadExt&, const QuadExt&) = default;
};

QuadExt q_add(const QuadExt& x, const QuadExt& y);
QuadExt q_sub(const QuadExt& x, const QuadExt& y);
QuadExt q_mul(const MinPoly2& q, const QuadExt& x, const QuadExt& y);
QuadExt q_scale(const QuadExt& x, const Rat& c);

struct AlgebraicPointSet {
    std::vector<ProjPoint> rational;  // sorted
    std::vector<MinPoly2> quadratic;  // sorted; each carries two conjugate points
    size_t point_count() const { return rational.size() + 2 * quadratic.size(); }
    bool empty() const { return rational.empty() && quadratic.empty(); }
    friend bool operator==(const AlgebraicPointSet&, const AlgebraicPointSet&) = default;
};

// g^-1{p} = {p} as divisors, decided by exact form proportionality.
bool is_totally_invariant(const ProjRatMap& g, const ProjPoint& p);
bool is_totally_invariant(const ProjRatMap& g, const MinPoly2& q);

// All totally invariant points of g (deg g >= 2); at most 2 in total.
AlgebraicPointSet totally_invariant_points(const ProjRatMap& g);

// Exceptional set E(g) = totally invariant points of g^2.
AlgebraicPointSet exceptional_set(const ProjRatMap& g);

enum class ConjugacyKind { NoIterate, GItself, SquareOnly };

struct ConjugacyResult {
    ConjugacyKind kind;
    AlgebraicPointSet witness;  // totally invariant points backing the verdict
};

// Detects whether g (or g^2, and hence all higher iterates) is Mobius
// conjugate to a polynomial map.
ConjugacyResult polynomial_conjugacy(const ProjRatMap& g);

}  // namespace dml
