#include "tqf/intutil.hpp"

#include <cassert>
#include <cmath>

namespace tqf {

long valuation(const ZZ& n, const ZZ& p)
{
    if (n == 0)
        throw std::invalid_argument("valuation: n = 0");
    ZZ m = abs(n);
    long v = 0;
    ZZ q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0)
            return v;
        m = q;
        v++;
    }
}

ZZ unit_part(const ZZ& n, const ZZ& p)
{
    ZZ m = n;
    ZZ q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0)
            return m;
        m = q;
    }
}

int legendre(const ZZ& a, const ZZ& p)
{
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

long least_nonresidue(long p)
{
    assert(p > 2);
    ZZ zp(p);
    for (long r = 2;; r++)
        if (legendre(ZZ(r), zp) == -1)
            return r;
}

bool is_prime(const ZZ& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<long> primes_up_to(long n)
{
    std::vector<long> ps;
    if (n < 2)
        return ps;
    std::vector<bool> comp(n + 1, false);
    for (long i = 2; i <= n; i++) {
        if (!comp[i]) {
            ps.push_back(i);
            for (long j = i * i; j <= n && i <= n / i; j += i)
                comp[j] = true;
        }
    }
    return ps;
}

std::vector<int32_t> spf_table(long n)
{
    std::vector<int32_t> spf(n + 1, 0);
    if (n >= 1)
        spf[1] = 1;
    for (long i = 2; i <= n; i++) {
        if (spf[i] == 0) {
            for (long j = i; j <= n; j += i)
                if (spf[j] == 0)
                    spf[j] = (int32_t)i;
        }
    }
    return spf;
}

std::vector<std::pair<ZZ, int>> factor(const ZZ& n)
{
    std::vector<std::pair<ZZ, int>> fs;
    ZZ m = abs(n);
    if (m <= 1)
        return fs;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                e++;
            }
            fs.push_back({ZZ(p), e});
        }
    }
    ZZ p(17);
    while (m > 1) {
        if (is_prime(m)) {
            fs.push_back({m, 1});
            break;
        }
        // trial division is fine at the sizes this library sees
        while (m % p != 0)
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        int e = 0;
        while (m % p == 0) {
            m /= p;
            e++;
        }
        fs.push_back({p, e});
    }
    return fs;
}

std::vector<std::pair<long, int>> factor_long(long n, const std::vector<int32_t>* spf)
{
    std::vector<std::pair<long, int>> fs;
    long m = n < 0 ? -n : n;
    if (m <= 1)
        return fs;
    if (spf && m < (long)spf->size()) {
        while (m > 1) {
            long p = (*spf)[m];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                e++;
            }
            fs.push_back({p, e});
        }
        return fs;
    }
    for (long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                e++;
            }
            fs.push_back({p, e});
        }
    }
    if (m > 1)
        fs.push_back({m, 1});
    return fs;
}

int omega(const ZZ& n)
{
    return (int)factor(n).size();
}

int omega_k(const ZZ& n, int k)
{
    int c = 0;
    for (auto& [p, e] : factor(n))
        if (e >= k)
            c++;
    return c;
}

bool is_squarefree(const ZZ& n)
{
    for (auto& [p, e] : factor(n))
        if (e >= 2)
            return false;
    return true;
}

ZZ crt(const std::vector<ZZ>& r, const std::vector<ZZ>& m)
{
    assert(r.size() == m.size());
    ZZ x(0), M(1);
    for (size_t i = 0; i < r.size(); i++) {
        // solve x' == x mod M, x' == r[i] mod m[i]
        ZZ g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), M.get_mpz_t(), m[i].get_mpz_t());
        assert(g == 1);
        ZZ Mnew = M * m[i];
        x = mod(x + M * s % Mnew * (r[i] - x), Mnew);
        M = Mnew;
    }
    return x;
}

std::string to_string(const QQ& q)
{
    return q.get_str();
}

} // namespace tqf
