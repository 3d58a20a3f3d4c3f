#include "dml/rational.hpp"

#include <cassert>
#include <cctype>

namespace dml {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Int parse_int(std::string_view s, const std::string& location) {
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body))
        fail(errc::parse, "invalid integer literal '" + std::string(s) + "'", location);
    Int z(std::string(body), 10);
    return neg ? Int(-z) : z;
}

Rat parse_rational(std::string_view s, const std::string& location) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(s, location));
    std::string_view left = s.substr(0, slash);
    std::string_view right = s.substr(slash + 1);
    Int p = parse_int(left, location);
    if (!all_digits(right))
        fail(errc::parse, "denominator must be a positive integer in '" + std::string(s) + "'",
             location);
    Int q = parse_int(right, location);
    if (q == 0) fail(errc::parse, "zero denominator in '" + std::string(s) + "'", location);
    Rat r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Int& z) { return z.get_str(10); }

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str(10);
    return r.get_num().get_str(10) + "/" + r.get_den().get_str(10);
}

Rat rat_from_coprime(const Int& p, const Int& q) {
    assert(q > 0);
    Rat r;
    r.get_num() = p;
    r.get_den() = q;
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Rat pow_rat(const Rat& base, unsigned long e) {
    // num^e and den^e stay coprime, and den > 0 stays positive
    return rat_from_coprime(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

}  // namespace dml
