#pragma once

#include <mpfr.h>

#include <string>

#include "dml/places.hpp"

namespace dml {

// Arbitrary-precision float used only for reported logarithm approximations.
// Every decision the library certifies is made in exact rational arithmetic;
// Real values never feed back into an exact comparison.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(Real o) noexcept;
    ~Real();

    // Natural logs with relative error < 2^-prec (exact zero for argument 1).
    static Real log_of_rational(const Rat& r, mpfr_prec_t prec);  // r > 0
    static Real log_of_int(const Int& n, mpfr_prec_t prec);       // n > 0

    void negate() { mpfr_neg(x_, x_, MPFR_RNDN); }
    void add(const Real& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); }
    void sub(const Real& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); }
    void mul_si(long k) { mpfr_mul_si(x_, x_, k, MPFR_RNDN); }
    void div_int(const Int& z) { mpfr_div_z(x_, x_, z.get_mpz_t(), MPFR_RNDN); }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    std::string decimal(int digits) const;
    int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

private:
    mpfr_t x_;
};

// log|r|_v as a Real carrying relative error < 2^-precision_bits. r != 0.
Real log_abs_v(const Rat& r, const Place& v, mpfr_prec_t precision_bits);
double log_abs_v_d(const Rat& r, const Place& v);

}  // namespace dml
