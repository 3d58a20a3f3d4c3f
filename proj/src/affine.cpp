#include "dml/affine.hpp"

namespace dml {

namespace {

ProjRatMap homogenize(const std::vector<Rat>& c) {
    long d = static_cast<long>(c.size()) - 1;
    std::vector<Rat> top(c);
    std::vector<Rat> bot(d + 1, Rat(0));
    bot[0] = 1;  // Y^d
    return ProjRatMap::from_rational_coeffs(top, bot);
}

}  // namespace

AffinePolyMap::AffinePolyMap(std::vector<Rat> coeffs_ascending)
    : c_(std::move(coeffs_ascending)), homog_(homogenize(validate(c_))) {}

const std::vector<Rat>& AffinePolyMap::validate(const std::vector<Rat>& c) {
    if (c.size() < 2) fail(errc::domain, "affine map needs degree >= 1");
    if (c.back() == 0) fail(errc::domain, "leading coefficient must be nonzero");
    return c;
}

AffinePolyMap AffinePolyMap::from_poly(const RatPoly& p) { return AffinePolyMap(p.coeffs()); }

std::string AffinePolyMap::str() const {
    std::string s;
    for (size_t k = c_.size(); k-- > 0;) {
        s += to_string(c_[k]);
        if (k) s += ",";
    }
    return s;
}

Rat AffinePolyMap::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

OrbitSegment orbit(const AffinePolyMap& f, const Rat& x0, long nmax, const OrbitCaps& caps) {
    // the second homogenized coordinate is c Y^d, so the orbit never leaves
    // the affine chart and every projective value converts back exactly
    ProjOrbitSegment ps = orbit(f.homogenized(), ProjPoint::from_rational(x0), nmax, caps);
    OrbitSegment seg;
    seg.start = x0;
    seg.truncated = ps.truncated;
    seg.cycle = ps.cycle;
    seg.values.reserve(ps.points.size());
    for (const ProjPoint& p : ps.points) seg.values.push_back(p.affine());
    return seg;
}

AffinePolyMap iterate_map(const AffinePolyMap& f, long m, const IterateCaps& caps) {
    if (m < 1) fail(errc::domain, "iterate needs m >= 1");
    RatPoly base = f.poly();
    RatPoly acc = base;
    for (long i = 1; i < m; ++i) {
        acc = base.compose(acc);
        if (acc.degree() + 1 > caps.max_terms)
            fail(errc::budget, "iterate term count beyond cap");
        size_t bits = 0;
        for (const Rat& c : acc.coeffs()) bits = std::max(bits, bit_size(c));
        if (bits > caps.coeff_bits) fail(errc::budget, "iterate coefficient size beyond cap");
    }
    return AffinePolyMap(acc.coeffs());
}

}  // namespace dml
