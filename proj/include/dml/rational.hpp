#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <string_view>

#include "dml/error.hpp"

namespace dml {

using Int = mpz_class;
using Rat = mpq_class;

// Literal format: optional sign, decimal digits, optional "/" followed by a
// positive decimal integer. "4/6" parses and canonicalizes to 2/3.
Int parse_int(std::string_view s, const std::string& location = {});
Rat parse_rational(std::string_view s, const std::string& location = {});

std::string to_string(const Int& z);
std::string to_string(const Rat& r);  // "p" or "p/q"

inline const Int& num(const Rat& r) { return r.get_num(); }
inline const Int& den(const Rat& r) { return r.get_den(); }

// Builds p/q from a pair already known coprime with q > 0 (skips the gcd).
Rat rat_from_coprime(const Int& p, const Int& q);

Int pow_int(const Int& base, unsigned long e);
Rat pow_rat(const Rat& base, unsigned long e);

inline size_t bit_size(const Int& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }
inline size_t bit_size(const Rat& r) {
    return std::max(bit_size(r.get_num()), bit_size(r.get_den()));
}

}  // namespace dml
