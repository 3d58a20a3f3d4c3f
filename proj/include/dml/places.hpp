#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "dml/rational.hpp"

namespace dml {

// A place of Q: the archimedean absolute value or a p-adic one.
class Place {
public:
    static Place archimedean() { return Place(true, 0); }
    static Place finite(Int p);  // verifies p prime
    static Place parse(std::string_view s, const std::string& location = {});

    bool is_archimedean() const { return arch_; }
    const Int& prime() const;  // finite places only
    std::string str() const;   // "inf" or the prime in decimal

    friend bool operator==(const Place&, const Place&) = default;
    friend bool operator<(const Place& a, const Place& b) {
        if (a.arch_ != b.arch_) return a.arch_;  // archimedean sorts first
        return a.p_ < b.p_;
    }

private:
    Place(bool arch, Int p) : arch_(arch), p_(std::move(p)) {}
    bool arch_;
    Int p_;
};

// Deterministic for n < 3.317e24 (Miller-Rabin with the first 12 prime
// bases); larger inputs additionally go through GMP's BPSW test.
bool is_prime(const Int& n);

struct FactorBudget {
    unsigned long trial_limit = 1'000'000;
    unsigned long rho_iterations = 5'000'000;
    unsigned long seed = 1;
};

struct Factorization {
    std::map<Int, unsigned> factors;
    Int cofactor = 1;  // composite remainder when the budget ran out
    bool complete() const { return cofactor == 1; }
};

Factorization factor(Int n, const FactorBudget& budget = {});  // n != 0; factors |n|

long valuation(const Rat& r, const Int& p);  // r != 0, p prime
Rat abs_v(const Rat& r, const Place& v);     // exact; |0|_v = 0

// Finite places with |r|_v != 1, ascending. Throws errc::budget (message
// carries the unfactored cofactor) when factoring does not complete.
std::vector<Place> support_places(const Rat& r, const FactorBudget& budget = {});

}  // namespace dml
