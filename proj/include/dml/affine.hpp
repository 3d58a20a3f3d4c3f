#pragma once

#include "dml/projective.hpp"

namespace dml {

// Polynomial self-map of A^1 over Q, degree >= 1.
class AffinePolyMap {
public:
    explicit AffinePolyMap(std::vector<Rat> coeffs_ascending);  // a_d != 0
    static AffinePolyMap from_poly(const RatPoly& p);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& coeff(size_t k) const { return c_[k]; }
    const Rat& leading() const { return c_.back(); }
    RatPoly poly() const { return RatPoly(c_); }
    std::string str() const;  // descending comma-separated coefficients

    Rat eval(const Rat& x) const;

    // (sum a_i X^i Y^(d-i), c Y^d), denominators cleared, content-normalized
    const ProjRatMap& homogenized() const { return homog_; }

    friend bool operator==(const AffinePolyMap& a, const AffinePolyMap& b) {
        return a.c_ == b.c_;
    }

private:
    static const std::vector<Rat>& validate(const std::vector<Rat>& c);
    std::vector<Rat> c_;
    ProjRatMap homog_;
};

struct OrbitSegment {
    Rat start;
    std::vector<Rat> values;  // values[0] = start
    std::optional<CycleInfo> cycle;
    bool truncated = false;
};

// Orbit computed through the homogenized map so no large-gcd reduction is
// ever needed; values stay exact.
OrbitSegment orbit(const AffinePolyMap& f, const Rat& x0, long nmax, const OrbitCaps& caps = {});

struct IterateCaps {
    long max_terms = 1 << 14;
    unsigned long coeff_bits = 1ul << 20;
};

// m-fold composition as an explicit coefficient list.
AffinePolyMap iterate_map(const AffinePolyMap& f, long m, const IterateCaps& caps = {});

}  // namespace dml
