#include "dml/places.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>

namespace dml {

Place Place::finite(Int p) {
    if (!is_prime(p)) fail(errc::domain, "not a prime: " + to_string(p));
    return Place(false, std::move(p));
}

const Int& Place::prime() const {
    if (arch_) fail(errc::domain, "archimedean place has no prime");
    return p_;
}

std::string Place::str() const { return arch_ ? "inf" : to_string(p_); }

Place Place::parse(std::string_view s, const std::string& location) {
    if (s == "inf" || s == "oo") return archimedean();
    Int p = parse_int(s, location);
    if (!is_prime(p)) fail(errc::parse, "place must be 'inf' or a prime, got '" + std::string(s) + "'", location);
    return Place(false, std::move(p));
}

namespace {

const unsigned long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool mr_witness(const Int& n, const Int& d, unsigned long s, unsigned long a) {
    Int x, base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : kMrBases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long a : kMrBases)
        if (mr_witness(n, d, s, a)) return false;
    static const Int kMrLimit("3317044064679887385961981");
    if (n < kMrLimit) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

namespace {

// Brent's cycle variant of Pollard rho. Deterministic for a fixed seed;
// decrements *iters per map evaluation and gives up when it hits zero.
std::optional<Int> pollard_brent(const Int& n, unsigned long seed, unsigned long* iters) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    {
        Int r;
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            return r;
        }
    }
    for (unsigned long c = 1;; ++c) {
        Int y = Int((seed + c) % 1000003 + 2) % n;
        Int g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) {
                if (*iters == 0) return std::nullopt;
                --*iters;
                y = (y * y + c) % n;
            }
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    if (*iters == 0) return std::nullopt;
                    --*iters;
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                if (*iters == 0) return std::nullopt;
                --*iters;
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle degenerated; retry with the next polynomial
    }
}

}  // namespace

Factorization factor(Int n, const FactorBudget& budget) {
    if (n == 0) fail(errc::domain, "factor(0)");
    n = abs(n);
    Factorization out;
    if (n == 1) return out;

    auto strip = [&](unsigned long d) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            ++out.factors[Int(d)];
        }
    };
    strip(2);
    strip(3);
    const unsigned long limit = std::min(budget.trial_limit, 4'000'000'000ul);
    for (unsigned long d = 5; d <= limit && n > 1; d += 6) {
        if (mpz_cmp_ui(n.get_mpz_t(), d * d) < 0) break;  // remainder is prime
        strip(d);
        strip(d + 2);
    }
    if (n == 1) return out;
    if (is_prime(n)) {
        ++out.factors[n];
        return out;
    }

    unsigned long iters = budget.rho_iterations;
    std::vector<Int> work{n};
    while (!work.empty()) {
        Int m = work.back();
        work.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            ++out.factors[m];
            continue;
        }
        auto f = pollard_brent(m, budget.seed, &iters);
        if (!f) {
            out.cofactor *= m;
            continue;
        }
        work.push_back(*f);
        work.push_back(m / *f);
    }
    return out;
}

long valuation(const Rat& r, const Int& p) {
    if (r == 0) fail(errc::domain, "valuation of 0 is undefined");
    if (!is_prime(p)) fail(errc::domain, "valuation at non-prime " + to_string(p));
    Int t;
    unsigned long vn = mpz_remove(t.get_mpz_t(), r.get_num().get_mpz_t(), p.get_mpz_t());
    if (vn > 0) return static_cast<long>(vn);
    unsigned long vd = mpz_remove(t.get_mpz_t(), r.get_den().get_mpz_t(), p.get_mpz_t());
    return -static_cast<long>(vd);
}

Rat abs_v(const Rat& r, const Place& v) {
    if (r == 0) return Rat(0);
    if (v.is_archimedean()) return r < 0 ? Rat(-r) : r;
    long val = valuation(r, v.prime());
    if (val >= 0) return rat_from_coprime(Int(1), pow_int(v.prime(), static_cast<unsigned long>(val)));
    return Rat(pow_int(v.prime(), static_cast<unsigned long>(-val)));
}

std::vector<Place> support_places(const Rat& r, const FactorBudget& budget) {
    if (r == 0) fail(errc::domain, "support of 0 is undefined");
    std::set<Int> primes;
    for (const Int* part : {&r.get_num(), &r.get_den()}) {
        if (*part == 1 || *part == -1) continue;
        Factorization f = factor(*part, budget);
        if (!f.complete())
            fail(errc::budget,
                 "factoring budget exhausted; unfactored cofactor " + to_string(f.cofactor),
                 "support_places");
        for (auto& [p, e] : f.factors) primes.insert(p);
    }
    std::vector<Place> out;
    out.reserve(primes.size());
    for (const Int& p : primes) out.push_back(Place::finite(p));
    return out;
}

}  // namespace dml
