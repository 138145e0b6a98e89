// Exact local p-masses, Siegel masses, and the isotropic mass function.
// nu(G) = NU(G) * zeta(2) where NU(G) is an exact rational, so all mass
// ratios stay in Q.
#ifndef TQF_MASS_HH
#define TQF_MASS_HH

#include "tqf/genus.hpp"

namespace tqf {

// Conway-Sloane p-mass m_p of a local class
QQ local_mass(const LocalClass& c);

// exact part of the Siegel mass: nu(G) = 2 prod_p 2 delta_p(G_p) with
// delta_p = m_p / p^{2 v_p}; NU folds the tame tail into zeta(2):
// NU(G) = 2 * prod_{p | 2d} [ 2 delta_p (1 - p^{-2}) ]
QQ siegel_nu_finite(const GenusSymbol& g);

// nu-tilde^iso(d) = nu^iso(d) / nu^iso(1), multiplicative route (local mass
// sums per prime power)
QQ nu_iso_tilde(const ZZ& d);

// same value by direct genus enumeration
QQ nu_iso_tilde_via_genera(const ZZ& d);

// sum over isotropic local classes of det class p^k u of m_p / p^{2k},
// normalized by the k = 0 value; equals nu-tilde^iso(p^k)
QQ nu_iso_tilde_local(const ZZ& p, int k);

} // namespace tqf

#endif
