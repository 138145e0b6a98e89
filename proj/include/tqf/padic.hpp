// p-adic square classes, Hilbert symbols, Hasse invariants, and bounded-Hensel
// representation tests. The prime p = -1 stands for the real place throughout.
#ifndef TQF_PADIC_HH
#define TQF_PADIC_HH

#include "tqf/form.hpp"

namespace tqf {

struct SquareClass {
    ZZ prime;   // odd prime, 2, or -1
    long unit;  // odd p: 1 or least nonresidue; p=2: 1,3,5,7; p=-1: +1/-1
    int parity; // v_p(n) mod 2 (0 for p=-1)

    bool operator==(const SquareClass& o) const
    {
        return prime == o.prime && unit == o.unit && parity == o.parity;
    }
};

SquareClass sqclass(const ZZ& n, const ZZ& p);

// standard Hilbert symbol (a,b)_p, bimultiplicative and symmetric; p = -1 is R
int hilbert_symbol(const QQ& a, const QQ& b, const ZZ& p);
int hilbert_symbol_zz(const ZZ& a, const ZZ& b, const ZZ& p);

// c_p(F) = (-1,-d)_p (D1,-D2)_p (D2,-d)_p with D1, D2 the leading principal
// minors after a deterministic basis fix
int hasse_invariant(const TernaryForm& f, const ZZ& p);

// ternary F over Q_p is isotropic iff c_p(F) = 1
bool is_isotropic_local(const TernaryForm& f, const ZZ& p);

// nonsingular, indefinite over R, and c_p = 1 at every finite prime
bool is_isotropic_global(const TernaryForm& f);

// n in R_p(f): f(x) = n solvable with x in Z_p^3 \ {0}; decided by leveled
// search mod p^m with Hensel lifting certificates. n = 0 is rejected.
bool represents_locally(const TernaryForm& f, const ZZ& n, const ZZ& p);

// same decision by raw exhaustive search mod p^levels, no lifting shortcut;
// test oracle for the Hensel bound
bool represents_brute(const TernaryForm& f, const ZZ& n, const ZZ& p, int levels);

} // namespace tqf

#endif
