#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dml/growth.hpp"
#include "dml/return_set.hpp"

namespace dml {

// Sign of sa log a - sb log b for exact rationals a, b > 0. Decided by the
// equivalent integer power comparison when that stays below the bit budget,
// otherwise by interval arithmetic at escalating precision; Undecided means
// the intervals never separated, never that a wrong sign was returned.
enum class Cmp3 { Less, Equal, Greater, Undecided };

Cmp3 compare_scaled_logs(const Rat& a, const Rat& sa, const Rat& b, const Rat& sb);

struct SilvermanTerm {
    long n = 0;
    Rat capped;                // min(|g^n(y0) - p|_v, 1), decided on exact rationals
    bool at_infinity = false;  // g^n(y0) = inf; capped is 1 by the chart convention
    double value = 0;          // -log(capped) / d^n; +inf when capped = 0
    std::string value_str;     // the same at the requested decimal precision
};

struct SilvermanTrace {
    ProjRatMap g;
    ProjPoint y0, p;
    Place place = Place::archimedean();
    long precision = 17;
    std::vector<SilvermanTerm> terms;
    std::vector<std::string> warnings;
};

// Per-level decay terms of the orbit of y0 toward p. p must be affine;
// a p inside the exceptional set of g only draws a warning, since the trace
// is exactly how one sees that hypothesis fail.
SilvermanTrace silverman_trace(const ProjRatMap& g, const ProjPoint& y0, const ProjPoint& p,
                               const Place& v, long nmax, long precision = 17,
                               const OrbitCaps& caps = {});

struct BoundaryRow {
    long n = 0;
    Rat x_abs;                   // |x_n|_v
    Rat phi_inf_abs;             // |phi_inf(y_n)|_v
    bool y_infinite = false;     // row values fall back to the bihomogenized
                                 // forms at [1:0]: |a_mn|_v and 1 per root
    std::vector<Rat> root_dists; // |y_n - b_s|_v per rational root of phi_inf
};

BoundaryRow boundary_row(const PlaneCurve& phi, const InfinityData& info, long n, const Rat& x,
                         const ProjPoint& y, const Place& v);

struct BoundaryTrace {
    Place place = Place::archimedean();
    bool normalized = false;  // a_mn was 0 and a coordinate change was applied
    Mobius mobius = Mobius::identity();
    ProjRatMap g;    // the system actually traced (post-change when normalized)
    ProjPoint y0;
    InfinityData info;
    std::vector<BoundaryRow> rows;  // one row per return index <= scanned_to
    long scanned_to = 0;
};

// Exact boundary-attraction data at the return indices of the system. When
// the curve is not normalized at infinity the coordinate change is found and
// recorded, and the rows refer to the transformed system.
BoundaryTrace boundary_trace(const AffinePolyMap& f, const ProjRatMap& g, const Rat& x0,
                             const ProjPoint& y0, const PlaneCurve& phi, const Place& v,
                             long nmax, const OrbitCaps& caps = {});

struct Hypothesis {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct GrowthPair {
    long n = 0;
    size_t root_index = 0;
    Rat delta;               // |y_n - b_s|_v, exact
    double neg_log = 0;      // -log delta
    double bound = 0;        // c1 d^n
    std::string comparison;  // "exceeds" | "below" | "equal" | "undecided"
    std::string backing;     // the exact power comparison behind the verdict
};

struct ContradictionReport {
    std::vector<Hypothesis> hypotheses;
    bool heuristic = false;  // a hypothesis failed; numbers shown anyway
    bool vacuous = false;    // no return indices up to nmax
    std::optional<GrowthCertificate> certificate;
    std::optional<BoundaryTrace> boundary;
    std::vector<SilvermanTrace> silverman;  // one per rational root, root order
    std::vector<GrowthPair> pairs;
    std::vector<std::string> notes;
};

// Sets the lower-growth estimate of the certificate against the exact
// root distances at every return index: an infinite return set would force
// the decay limit to stay above log(c1 arg)/root > 0. Hypothesis failures
// are reported, not thrown; nmax doubles as the preperiodicity and
// certificate search budget.
ContradictionReport contradiction_report(const AffinePolyMap& f, const ProjRatMap& g,
                                         const Rat& x0, const ProjPoint& y0,
                                         const PlaneCurve& phi, long nmax, long precision = 17,
                                         const OrbitCaps& caps = {});

}  // namespace dml
