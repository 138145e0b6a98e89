#include "tqf/real.hpp"

#include <atomic>
#include <sstream>

namespace tqf {

namespace {
std::atomic<long> g_prec_bits{256}; // ~ 77 digits
} // namespace

void Real::set_precision_digits(long digits)
{
    g_prec_bits = (long)(digits * 3.33) + 16;
}

mpfr_prec_t Real::precision_bits()
{
    return (mpfr_prec_t)g_prec_bits.load();
}

std::string Real::str(int digits) const
{
    std::ostringstream os;
    char* s = nullptr;
    mpfr_exp_t e;
    s = mpfr_get_str(nullptr, &e, 10, (size_t)digits, v, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    bool neg = !m.empty() && m[0] == '-';
    std::string digs = neg ? m.substr(1) : m;
    os << (neg ? "-" : "");
    os << "0." << digs << "e" << e;
    return os.str();
}

Real expint_e1(const Real& x)
{
    // E_1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - 3^2/(...)))),
    // evaluated bottom-up with enough terms for the working precision
    int terms = 120;
    Real f(0);
    for (int n = terms; n >= 1; n--) {
        Real den = x + Real(2 * n + 1) - f;
        f = Real((long)n * (long)n) / den;
    }
    Real cf = x + Real(1) - f;
    return (-x).exp() / cf;
}

void prime_tail_sum2(long p, long pi_p, Real& lo, Real& hi)
{
    // sum_{q > p} q^{-2} = -pi(p)/p^2 + 2 int_p^inf pi(x) x^{-3} dx with the
    // Rosser-Schoenfeld bounds x/ln x <= pi(x) <= 1.25506 x/ln x (x >= 17)
    if (p < 17)
        throw std::invalid_argument("prime_tail_sum2: p too small");
    Real P((long)p);
    Real base = Real(-(long)pi_p) / (P * P);
    Real I = expint_e1(P.log()); // int_p^inf dx / (x^2 ln x)
    lo = base + Real(2) * I;
    hi = base + Real(2) * Real(1.25506) * I;
    // widen slightly against the CF truncation of E_1
    Real slack = I * Real(1e-25);
    lo -= slack;
    hi += slack;
}

} // namespace tqf
