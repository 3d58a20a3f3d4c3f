#pragma once

#include "dml/affine.hpp"

namespace dml {

// h(P) = log arg, arg = max(|u|, |w|) over coprime coordinates.
struct HeightValue {
    Int arg;
    double approx;
};

HeightValue weil_height(const ProjPoint& p);

// Exact C with |h(g P) - d h(P)| <= C = log(arg) for all P; arg >= 1.
struct HeightBound {
    Rat arg;
    double approx;
};

HeightBound height_comparison_constant(const ProjRatMap& g);  // deg >= 2

struct CanonicalHeightEstimate {
    Int arg;             // max coordinate of g^n(P)
    long n;              // iterations used
    Int scale;           // d^n
    double estimate;     // log(arg) / d^n
    double error_bound;  // C / (d^n (d-1)), rounded up
};

CanonicalHeightEstimate canonical_height(const ProjRatMap& g, const ProjPoint& p, long n_iter,
                                         const OrbitCaps& caps = {});

struct PreperiodicityVerdict {
    enum class Kind { Preperiodic, NonPreperiodic, Unknown } kind;
    // Preperiodic: exact tail and period
    long tail = 0;
    long period = 0;
    // NonPreperiodic: first index whose height clears the escape threshold,
    // with the exact inequality arg^(d-1) > threshold it exhibits
    long witness_index = 0;
    Int witness_arg;
    Rat threshold_arg;
    // Unknown: budget consumed
    long budget_spent = 0;
};

PreperiodicityVerdict is_preperiodic(const ProjRatMap& g, const ProjPoint& p, long budget,
                                     const OrbitCaps& caps = {});
PreperiodicityVerdict is_preperiodic(const AffinePolyMap& f, const Rat& x0, long budget,
                                     const OrbitCaps& caps = {});

}  // namespace dml
