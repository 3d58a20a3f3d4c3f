#pragma once

#include "dml/affine.hpp"
#include "dml/curve.hpp"

namespace dml {

struct Progression {
    long start = 0;
    long period = 1;  // >= 1
    bool certified = false;
    long certified_m = 0;  // the period whose divisibility certificate passed

    friend bool operator==(const Progression&, const Progression&) = default;
};

// Indices n <= nmax with Phi(f^n(x0), g^n(y0)) = 0, plus a structural
// description. When both orbits entered exact cycles the description is
// complete (membership beyond the tails is periodic); otherwise the
// progressions are heuristic fits over the observed window.
struct ReturnSetReport {
    std::vector<long> observed;
    std::vector<long> finite_part;
    std::vector<Progression> progressions;
    bool complete = false;
    long nmax = 0;
    long scanned_to = 0;  // < nmax only when an orbit hit its size cap
};

ReturnSetReport return_set(const AffinePolyMap& f, const ProjRatMap& g, const Rat& x0,
                           const ProjPoint& y0, const PlaneCurve& phi, long nmax,
                           const OrbitCaps& caps = {}, const IterateCaps& icaps = {});

// True iff the bihomogeneous form of phi divides that of
// phi(f^m(x), g^m(y)); then n in the return set implies n + m is too.
// False is inconclusive when phi is reducible.
bool certify_progression(const AffinePolyMap& f, const ProjRatMap& g, const PlaneCurve& phi,
                         long m, const IterateCaps& caps = {});

// Coordinate change y = mobius(y') making a_mn != 0, so the curve's closure
// misses (infinity, infinity). Return sets are unchanged under the
// simultaneous transformation.
struct Normalization {
    PlaneCurve curve;
    ProjRatMap g;
    ProjPoint y0;
    Mobius mobius;
};

Normalization normalize_at_infinity(const PlaneCurve& phi, const ProjRatMap& g,
                                    const ProjPoint& y0);

}  // namespace dml
