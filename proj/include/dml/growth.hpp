#pragma once

#include <optional>

#include "dml/heights.hpp"
#include "dml/places.hpp"

namespace dml {

// Exact real log(arg) / root.
struct LogOfRational {
    Rat arg;       // > 0
    Int root = 1;  // >= 1
    double approx() const;
};

// Places where the leading coefficient has absolute value != 1 or a lower
// coefficient has absolute value > 1, plus the archimedean place, each with
// its escape threshold C_v = (2/|a_d|_v)(1 + sum_(i<d) |a_i|_v) + 1.
struct BadPlaceSet {
    std::vector<std::pair<Place, Rat>> thresholds;  // archimedean first, then primes ascending

    bool contains(const Place& v) const { return threshold(v) != nullptr; }
    const Rat* threshold(const Place& v) const;
};

BadPlaceSet bad_places(const AffinePolyMap& f, const FactorBudget& budget = {});

// Witness (place, N) with |f^N(x0)|_v beyond its threshold, together with the
// affine bracket A1 d^(n-N) - B1 < log|f^n(x0)|_v < A2 d^(n-N) - B2 valid for
// n > N and the pure-exponential form c1 d^n < log|f^n(x0)|_v < c2 d^n valid
// for n > N''.
struct GrowthCertificate {
    Place place = Place::archimedean();
    long n0 = 0;
    bool in_s = true;
    Rat c_v;  // threshold crossed: C_v on S, 1 off S
    LogOfRational a1, b1, a2, b2;
    LogOfRational c1, c2;
    long n2 = 0;
};

// Scans n = 0..search_budget, trying the bad places in order at each orbit
// value before factoring the remaining denominator for an off-S prime.
// Returns the first witness found; nullopt means the search budget ran out,
// not that no certificate exists. Unless assume_wandering, x0 must first be
// certified non-preperiodic.
std::optional<GrowthCertificate> find_certificate(const AffinePolyMap& f, const Rat& x0,
                                                  long search_budget,
                                                  bool assume_wandering = false,
                                                  const FactorBudget& budget = {},
                                                  const OrbitCaps& caps = {});

struct CheckRow {
    long n;
    std::string check;
    bool ok;
    std::string detail;
};

// Re-derives the constants and checks thresholds, per-step ratios (exact law
// off S) and both bracket sides for n = N..n_hi by exact rational
// comparisons. Any failed row marks the certificate invalid.
struct VerificationReport {
    bool valid = true;
    std::vector<CheckRow> rows;
};

VerificationReport verify_certificate(const AffinePolyMap& f, const Rat& x0,
                                      const GrowthCertificate& cert, long n_hi,
                                      const OrbitCaps& caps = {});

}  // namespace dml
