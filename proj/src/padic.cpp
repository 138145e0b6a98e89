#include "tqf/padic.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace tqf {

SquareClass sqclass(const ZZ& n, const ZZ& p)
{
    if (n == 0)
        throw std::invalid_argument("sqclass: n = 0");
    SquareClass c;
    c.prime = p;
    if (p == -1) {
        c.unit = n > 0 ? 1 : -1;
        c.parity = 0;
        return c;
    }
    long v = valuation(n, p);
    ZZ u = unit_part(n, p);
    c.parity = (int)(v & 1);
    if (p == 2) {
        c.unit = to_long(mod(u, ZZ(8)));
    } else {
        c.unit = legendre(u, p) == 1 ? 1 : least_nonresidue(to_long(p));
    }
    return c;
}

namespace {

inline int eps4(const ZZ& u) { return to_long(mod(u, ZZ(4))) == 1 ? 0 : 1; } // (u-1)/2 mod 2
inline int omg8(const ZZ& u)
{
    long r = to_long(mod(u, ZZ(8)));
    return (r == 1 || r == 7) ? 0 : 1; // (u^2-1)/8 mod 2
}

} // namespace

int hilbert_symbol_zz(const ZZ& a, const ZZ& b, const ZZ& p)
{
    if (a == 0 || b == 0)
        throw std::invalid_argument("hilbert_symbol: zero argument");
    if (p == -1)
        return (a < 0 && b < 0) ? -1 : 1;
    long al = valuation(a, p), be = valuation(b, p);
    ZZ u = unit_part(a, p), v = unit_part(b, p);
    if (p == 2) {
        int e = eps4(u) * eps4(v) + (int)(al & 1) * omg8(v) + (int)(be & 1) * omg8(u);
        return (e & 1) ? -1 : 1;
    }
    int e = (int)(al & 1) * (int)(be & 1) * eps4(p);
    int s = (e & 1) ? -1 : 1;
    if (be & 1)
        s *= legendre(u, p);
    if (al & 1)
        s *= legendre(v, p);
    return s;
}

int hilbert_symbol(const QQ& a, const QQ& b, const ZZ& p)
{
    ZZ an = a.get_num() * a.get_den();
    ZZ bn = b.get_num() * b.get_den();
    return hilbert_symbol_zz(an, bn, p);
}

int hasse_invariant(const TernaryForm& f, const ZZ& p)
{
    TernaryForm t = fix_leading_minors(f);
    ZZ d1 = t.at(0, 0);
    ZZ d2 = t.at(0, 0) * t.at(1, 1) - t.at(0, 1) * t.at(0, 1);
    ZZ d = t.determinant();
    return hilbert_symbol_zz(ZZ(-1), -d, p) * hilbert_symbol_zz(d1, -d2, p) * hilbert_symbol_zz(d2, -d, p);
}

bool is_isotropic_local(const TernaryForm& f, const ZZ& p)
{
    return hasse_invariant(f, p) == 1;
}

bool is_isotropic_global(const TernaryForm& f)
{
    ZZ d = f.determinant();
    if (d == 0)
        throw std::invalid_argument("is_isotropic_global: singular form");
    if (!signature(f).indefinite_nonsingular())
        return false;
    if (hasse_invariant(f, ZZ(2)) != 1)
        return false;
    for (auto& [p, e] : factor(d))
        if (p != 2 && hasse_invariant(f, p) != 1)
            return false;
    return true;
}

namespace {

struct Vec3 {
    ZZ x, y, z;
    bool operator<(const Vec3& o) const
    {
        if (x != o.x)
            return x < o.x;
        if (y != o.y)
            return y < o.y;
        return z < o.z;
    }
};

// v_p of the gradient 2*M*x, or a large sentinel when the gradient vanishes
// to the tracked precision
long grad_valuation(const TernaryForm& f, const Vec3& v, const ZZ& p, long cap)
{
    ZZ g[3];
    for (int i = 0; i < 3; i++)
        g[i] = 2 * (f.at(i, 0) * v.x + f.at(i, 1) * v.y + f.at(i, 2) * v.z);
    long w = cap;
    for (int i = 0; i < 3; i++)
        if (g[i] != 0)
            w = std::min(w, valuation(g[i], p));
    return w;
}

// primitive solution of f(x) = n over Z_p: leveled search with certificates
bool represents_primitively(const TernaryForm& f, const ZZ& n, const ZZ& p)
{
    ZZ det = f.determinant();
    long hard = 2 * valuation(2 * det, p) + valuation(n, p) + 2;
    long pl = to_long(p);

    ZZ pm = p;
    std::set<Vec3> states;
    for (long a = 0; a < pl; a++)
        for (long b = 0; b < pl; b++)
            for (long c = 0; c < pl; c++) {
                if (a == 0 && b == 0 && c == 0)
                    continue;
                Vec3 v{ZZ(a), ZZ(b), ZZ(c)};
                if (mod(f.evaluate(v.x, v.y, v.z) - n, pm) == 0)
                    states.insert(v);
            }
    for (long m = 1; m <= hard; m++) {
        if (states.empty())
            return false;
        ZZ pm1 = pm * p;
        std::set<Vec3> next;
        for (const Vec3& v : states) {
            ZZ r = f.evaluate(v.x, v.y, v.z) - n;
            if (r == 0)
                return true; // exact integral solution
            long w = grad_valuation(f, v, p, m);
            long mr = valuation(r, p);
            // the gradient valuation is only stable under lifting when w < m
            if (w < m && mr >= 2 * w + 1)
                return true; // Hensel: lifts to an exact solution
            for (long a = 0; a < pl; a++)
                for (long b = 0; b < pl; b++)
                    for (long c = 0; c < pl; c++) {
                        Vec3 u{v.x + a * pm, v.y + b * pm, v.z + c * pm};
                        if (mod(f.evaluate(u.x, u.y, u.z) - n, pm1) == 0)
                            next.insert(u);
                    }
        }
        states.swap(next);
        pm = pm1;
    }
    return false;
}

} // namespace

bool represents_locally(const TernaryForm& f, const ZZ& n, const ZZ& p)
{
    if (n == 0)
        throw std::invalid_argument("represents_locally: use isotropy test");
    if (f.determinant() == 0)
        throw std::invalid_argument("represents_locally: singular form");
    ZZ m = n;
    ZZ p2 = p * p;
    // non-primitive solutions are primitive ones of n / p^2
    for (;;) {
        if (represents_primitively(f, m, p))
            return true;
        if (mod(m, p2) != 0)
            return false;
        m /= p2;
    }
}

namespace {

// certificate-free DFS for a primitive solution of f(x) == n mod p^levels;
// all arithmetic in machine words (the caller checks the ranges fit)
struct BruteCtx {
    long long g[9];
    long long n;
    long p;
    int levels;
    unsigned long long pmod[32]; // p^i
};

long long brute_eval(const BruteCtx& c, long long x, long long y, long long z)
{
    return c.g[0] * x * x + c.g[4] * y * y + c.g[8] * z * z +
           2 * (c.g[1] * x * y + c.g[2] * x * z + c.g[5] * y * z);
}

bool brute_dfs(const BruteCtx& c, long long x, long long y, long long z, int level)
{
    if (level == c.levels)
        return true;
    long long pm = (long long)c.pmod[level];
    long long pm1 = (long long)c.pmod[level + 1];
    for (long a = 0; a < c.p; a++)
        for (long b = 0; b < c.p; b++)
            for (long d = 0; d < c.p; d++) {
                long long u = x + a * pm, v = y + b * pm, w = z + d * pm;
                if ((brute_eval(c, u, v, w) - c.n) % pm1 == 0)
                    if (brute_dfs(c, u, v, w, level + 1))
                        return true;
            }
    return false;
}

} // namespace

bool represents_brute(const TernaryForm& f, const ZZ& n, const ZZ& p, int levels)
{
    BruteCtx c;
    for (int i = 0; i < 9; i++)
        c.g[i] = to_long(f.g[i]);
    c.p = to_long(p);
    c.levels = levels;
    c.pmod[0] = 1;
    for (int i = 1; i <= levels + 1; i++)
        c.pmod[i] = c.pmod[i - 1] * (unsigned long long)c.p;
    // overflow guard: |f(x)| <= 6 max|g| pmax^2 must fit in signed 64 bits
    long long maxg = 0;
    for (int i = 0; i < 9; i++)
        maxg = std::max(maxg, std::llabs(c.g[i]));
    double bound = 6.0 * (double)maxg * (double)c.pmod[levels] * (double)c.pmod[levels];
    if (bound > 9e17)
        throw std::overflow_error("represents_brute: range too large for direct search");

    c.n = to_long(n);
    long long p2 = (long long)c.p * c.p;
    for (;;) {
        bool found = false;
        for (long a = 0; a < c.p && !found; a++)
            for (long b = 0; b < c.p && !found; b++)
                for (long d = 0; d < c.p && !found; d++) {
                    if (a == 0 && b == 0 && d == 0)
                        continue;
                    if ((brute_eval(c, a, b, d) - c.n) % c.p == 0)
                        found = brute_dfs(c, a, b, d, 1);
                }
        if (found)
            return true;
        if (c.n % p2 != 0)
            return false;
        c.n /= p2; // x = p y descent
    }
}

} // namespace tqf
