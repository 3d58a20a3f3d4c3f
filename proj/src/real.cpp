#include "dml/real.hpp"

#include <algorithm>
#include <cmath>

namespace dml {

namespace {

mpfr_prec_t clamp_prec(mpfr_prec_t p) {
    return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN);
}

}  // namespace

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(x_, clamp_prec(prec));
    mpfr_set_zero(x_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
}

Real& Real::operator=(Real o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::log_of_int(const Int& n, mpfr_prec_t prec) {
    if (n <= 0) fail(errc::domain, "log of non-positive integer");
    // guard bits cover the magnitude of the argument
    mpfr_prec_t work = clamp_prec(prec + 64 + static_cast<mpfr_prec_t>(std::log2(double(bit_size(n)) + 2)));
    Real out(work);
    mpfr_set_z(out.x_, n.get_mpz_t(), MPFR_RNDN);
    mpfr_log(out.x_, out.x_, MPFR_RNDN);
    return out;
}

Real Real::log_of_rational(const Rat& r, mpfr_prec_t prec) {
    if (r <= 0) fail(errc::domain, "log of non-positive rational");
    if (r == 1) return Real(clamp_prec(prec));
    Rat t = r - 1;
    if (abs(t) * 2 <= 1) {
        // near 1 the difference log(num) - log(den) cancels; use log1p
        mpfr_prec_t work = clamp_prec(prec + 64);
        Real out(work);
        mpfr_set_q(out.x_, t.get_mpq_t(), MPFR_RNDN);
        mpfr_log1p(out.x_, out.x_, MPFR_RNDN);
        return out;
    }
    Real ln = log_of_int(r.get_num(), prec + 4);
    if (r.get_den() == 1) return ln;
    Real ld = log_of_int(r.get_den(), prec + 4);
    mpfr_prec_t work = std::max(mpfr_get_prec(ln.raw()), mpfr_get_prec(ld.raw()));
    Real out(work);
    mpfr_sub(out.raw(), ln.raw(), ld.raw(), MPFR_RNDN);
    return out;
}

std::string Real::decimal(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real log_abs_v(const Rat& r, const Place& v, mpfr_prec_t precision_bits) {
    if (r == 0) fail(errc::domain, "log|0|_v is undefined");
    if (v.is_archimedean()) return Real::log_of_rational(abs(r), precision_bits);
    long val = valuation(r, v.prime());
    if (val == 0) return Real(precision_bits);
    Real lp = Real::log_of_int(v.prime(), precision_bits);
    lp.mul_si(-val);
    return lp;
}

double log_abs_v_d(const Rat& r, const Place& v) { return log_abs_v(r, v, 64).to_double(); }

}  // namespace dml
