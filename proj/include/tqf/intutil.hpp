// Exact integer utilities: valuations, factorization, residue symbols, CRT.
#ifndef TQF_INTUTIL_HH
#define TQF_INTUTIL_HH

#include <gmpxx.h>
#include <cstdint>
#include <vector>
#include <utility>
#include <stdexcept>
#include <string>

namespace tqf {

typedef mpz_class ZZ;
typedef mpq_class QQ;

inline ZZ gcd(const ZZ& a, const ZZ& b)
{
    ZZ g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline ZZ abs(const ZZ& a) { return ::abs(a); }

inline long to_long(const ZZ& a)
{
    if (!a.fits_slong_p())
        throw std::overflow_error("tqf: integer does not fit in long");
    return a.get_si();
}

// largest k with p^k | n; n must be nonzero
long valuation(const ZZ& n, const ZZ& p);
inline long valuation(long n, long p) { return valuation(ZZ(n), ZZ(p)); }

// n / p^{v_p(n)}
ZZ unit_part(const ZZ& n, const ZZ& p);

// Kronecker/Legendre symbol (a/p), p an odd prime
int legendre(const ZZ& a, const ZZ& p);

// least positive quadratic non-residue modulo an odd prime
long least_nonresidue(long p);

bool is_prime(const ZZ& n);

// all primes <= n
std::vector<long> primes_up_to(long n);

// sieve of smallest prime factors for 1..n (index i holds spf(i), spf(1)=1)
std::vector<int32_t> spf_table(long n);

// factorization as (prime, exponent) pairs, primes increasing; |n| is factored
std::vector<std::pair<ZZ, int>> factor(const ZZ& n);
std::vector<std::pair<long, int>> factor_long(long n, const std::vector<int32_t>* spf = nullptr);

// number of distinct prime factors
int omega(const ZZ& n);

// #{p : p^k | n}
int omega_k(const ZZ& n, int k);

bool is_squarefree(const ZZ& n);

// x with x == r[i] mod m[i]; moduli must be pairwise coprime
ZZ crt(const std::vector<ZZ>& r, const std::vector<ZZ>& m);

// canonical nonnegative residue
inline ZZ mod(const ZZ& a, const ZZ& m)
{
    ZZ r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ZZ pow_zz(const ZZ& b, unsigned long e)
{
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::string to_string(const QQ& q);

} // namespace tqf

#endif
