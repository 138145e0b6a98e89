// Thin MPFR wrapper with a configurable global working precision, plus the
// prime-tail estimates used by the Euler-product evaluations.
#ifndef TQF_REAL_HH
#define TQF_REAL_HH

#include "tqf/intutil.hpp"

#include <mpfr.h>

namespace tqf {

class Real {
public:
    Real() { mpfr_init2(v, precision_bits()); mpfr_set_zero(v, 1); }
    Real(long x) { mpfr_init2(v, precision_bits()); mpfr_set_si(v, x, MPFR_RNDN); }
    Real(int x) : Real((long)x) {}
    Real(double x) { mpfr_init2(v, precision_bits()); mpfr_set_d(v, x, MPFR_RNDN); }
    explicit Real(const QQ& q)
    {
        mpfr_init2(v, precision_bits());
        mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN);
    }
    explicit Real(const ZZ& z)
    {
        mpfr_init2(v, precision_bits());
        mpfr_set_z(v, z.get_mpz_t(), MPFR_RNDN);
    }
    Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_swap(v, o.v); }
    Real& operator=(const Real& o)
    {
        if (this != &o)
            mpfr_set(v, o.v, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept
    {
        mpfr_swap(v, o.v);
        return *this;
    }
    ~Real() { mpfr_clear(v); }

    static void set_precision_digits(long digits);
    static mpfr_prec_t precision_bits();

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
    Real operator-() const { Real r; mpfr_neg(r.v, v, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { mpfr_add(v, v, o.v, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v, v, o.v, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v, v, o.v, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v, v, o.v, MPFR_RNDN); return *this; }

    bool operator<(const Real& o) const { return mpfr_cmp(v, o.v) < 0; }
    bool operator>(const Real& o) const { return mpfr_cmp(v, o.v) > 0; }
    bool operator<=(const Real& o) const { return mpfr_cmp(v, o.v) <= 0; }
    bool operator>=(const Real& o) const { return mpfr_cmp(v, o.v) >= 0; }

    Real sqrt() const { Real r; mpfr_sqrt(r.v, v, MPFR_RNDN); return r; }
    Real log() const { Real r; mpfr_log(r.v, v, MPFR_RNDN); return r; }
    Real exp() const { Real r; mpfr_exp(r.v, v, MPFR_RNDN); return r; }
    Real abs() const { Real r; mpfr_abs(r.v, v, MPFR_RNDN); return r; }
    // this^e
    Real pow(const Real& e) const { Real r; mpfr_pow(r.v, v, e.v, MPFR_RNDN); return r; }

    static Real pi() { Real r; mpfr_const_pi(r.v, MPFR_RNDN); return r; }
    static Real zeta_ui(unsigned long n) { Real r; mpfr_zeta_ui(r.v, n, MPFR_RNDN); return r; }
    static Real zeta(const Real& s) { Real r; mpfr_zeta(r.v, s.v, MPFR_RNDN); return r; }

    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
    std::string str(int digits = 30) const;

private:
    mpfr_t v;
};

// e^{-x} continued-fraction exponential integral E_1(x), x > 1
Real expint_e1(const Real& x);

// rigorous enclosure of sum over primes q > p of q^{-2}; needs pi(p) exact
void prime_tail_sum2(long p, long pi_p, Real& lo, Real& hi);

} // namespace tqf

#endif
