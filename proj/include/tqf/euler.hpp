// Euler factors A_p(s), the Dirichlet series I(s), the regular part K(s) at
// s = 1, and the isotropic density constant; truncated products carry
// explicit tail bounds.
#ifndef TQF_EULER_HH
#define TQF_EULER_HH

#include "tqf/mass.hpp"
#include "tqf/real.hpp"

namespace tqf {

struct Bounded {
    Real value;
    Real error; // |true - value| <= error

    std::string str(int digits = 25) const;
};

// A_2(s) = 1 + (1/3) 2^{-s} - (1/2) 2^{-2s};
// A_p(s) = 1 + p^{-s}/2 - p^{-s-1}/2 - p^{-2s-1} for odd p
Real euler_A(long p, const Real& s);

// closed-form Euler factor of I(s) at p
Real Ip_closed(long p, const Real& s);

// truncated mass series sum_{k <= kmax} p^{k(1-s)} nu-tilde^iso(p^k)
Real Ip_series(long p, const Real& s, int kmax);

// I(s) = zeta(s+1) zeta(2s) zeta(2s+1) / zeta(3s+3) * prod_p A_p(s); the tail
// bound requires s > 1 (the A-product diverges at s = 1)
Bounded dirichlet_I(const Real& s, long pmax);

// isotropic density constant:
// (2/Gamma(1/2)) prod_p mu_p(prim iso) (1-1/p)^{-1/2}, with
// mu_2 = (25/36)(1-2^{-6}) and mu_p = (1-p^{-6})(1 - p/(2(p+1)^2)) for odd p;
// partial product times a rigorously enclosed prime tail
Bounded varpi(long pmax);

// K(1) = 25/24 * zeta(3)/zeta(6) * prod_p [1 - p/(2(p+1)^2)](1-1/p)^{-1/2}
Bounded K_at_1(long pmax);

} // namespace tqf

#endif
