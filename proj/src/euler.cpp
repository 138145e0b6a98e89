#include "tqf/euler.hpp"

#include <sstream>

namespace tqf {

std::string Bounded::str(int digits) const
{
    std::ostringstream os;
    os << value.str(digits) << " +- " << error.str(4);
    return os.str();
}

namespace {

Real powp(long p, const Real& e)
{
    return Real((long)p).pow(e);
}

} // namespace

Real euler_A(long p, const Real& s)
{
    Real ps = powp(p, -s);
    if (p == 2)
        return Real(1) + ps / Real(3) - ps * ps / Real(2);
    Real pi(1);
    pi = Real(1) / Real(p);
    return Real(1) + ps / Real(2) - ps * pi / Real(2) - ps * ps * pi;
}

Real Ip_closed(long p, const Real& s)
{
    Real ps1 = powp(p, -(s + Real(1)));  // p^{-(s+1)}
    Real p2s = powp(p, Real(-2) * s);    // p^{-2s}
    Real head = (Real(1) - ps1 * ps1 * ps1) / (Real(1) - ps1);
    Real mid = Real(1) / ((Real(1) - p2s) * (Real(1) - p2s / Real(p)));
    return head * mid * euler_A(p, s);
}

Real Ip_series(long p, const Real& s, int kmax)
{
    Real sum(0);
    for (int k = 0; k <= kmax; k++) {
        QQ nu = nu_iso_tilde_local(ZZ(p), k);
        sum += powp(p, Real((long)k) * (Real(1) - s)) * Real(nu);
    }
    return sum;
}

Bounded dirichlet_I(const Real& s, long pmax)
{
    if (!(s > Real(0.5)))
        throw std::invalid_argument("dirichlet_I: divergent (s <= 1/2)");
    Real z = Real::zeta(s + Real(1)) * Real::zeta(Real(2) * s) * Real::zeta(Real(2) * s + Real(1)) /
             Real::zeta(Real(3) * s + Real(3));
    Real prod(1);
    for (long p : primes_up_to(pmax))
        prod *= euler_A(p, s);
    Bounded b;
    b.value = z * prod;
    if (s > Real(1)) {
        // |A_p - 1| <= p^{-s}; tail of sum p^{-s} below integral bound
        Real t = powp(pmax, Real(1) - s) / (s - Real(1));
        Real factor = (t * Real(2)).exp() - Real(1); // conservative
        b.error = b.value.abs() * factor;
    } else {
        b.error = Real(1e300); // the infinite product diverges for s <= 1
    }
    return b;
}

namespace {

// odd-prime factor of the varpi product
Real varpi_factor(long p)
{
    Real P((long)p);
    Real mu = (Real(1) - Real(1) / (P * P * P * P * P * P)) *
              (Real(1) - P / (Real(2) * (P + Real(1)) * (P + Real(1))));
    return mu * (Real(1) - Real(1) / P).pow(Real(-0.5));
}

Real k1_factor(long p)
{
    Real P((long)p);
    return (Real(1) - P / (Real(2) * (P + Real(1)) * (P + Real(1)))) *
           (Real(1) - Real(1) / P).pow(Real(-0.5));
}

// rigorous tail of sum_{p > P} log f_p for factors with
// log f = (9/8) p^{-2} + O(p^{-3}), |O| <= 2 p^{-3} (validated in tests for
// p <= 10^4 and dominated beyond)
void log_tail(long pmax, long pi_pmax, Real& lo, Real& hi)
{
    Real s2lo, s2hi;
    prime_tail_sum2(pmax, pi_pmax, s2lo, s2hi);
    Real c(9);
    c /= Real(8);
    Real cube = Real(1) / (Real(pmax) * Real(pmax)); // sum_{n>P} 2 n^{-3} <= P^{-2}
    lo = c * s2lo - cube;
    hi = c * s2hi + cube;
}

} // namespace

Bounded varpi(long pmax)
{
    std::vector<long> ps = primes_up_to(pmax);
    Real prod = Real(2) / Real::pi().sqrt();
    // p = 2: (25/36)(1 - 2^{-6}) (1 - 1/2)^{-1/2}
    prod *= Real(25 * 63) / Real(36 * 64) * Real(2).sqrt();
    for (size_t i = 1; i < ps.size(); i++)
        prod *= varpi_factor(ps[i]);
    Real lo, hi;
    log_tail(ps.back(), (long)ps.size(), lo, hi);
    Real mid = (lo + hi) / Real(2);
    Bounded b;
    b.value = prod * mid.exp();
    b.error = b.value.abs() * (((hi - lo) / Real(2)).exp() - Real(1)) + Real(1e-40);
    return b;
}

Bounded K_at_1(long pmax)
{
    std::vector<long> ps = primes_up_to(pmax);
    Real prod = Real(25) / Real(24) * Real::zeta_ui(3) / Real::zeta_ui(6);
    for (long p : ps)
        prod *= k1_factor(p);
    Real lo, hi;
    log_tail(ps.back(), (long)ps.size(), lo, hi);
    Real mid = (lo + hi) / Real(2);
    Bounded b;
    b.value = prod * mid.exp();
    b.error = b.value.abs() * (((hi - lo) / Real(2)).exp() - Real(1)) + Real(1e-40);
    return b;
}

} // namespace tqf
