// Spinor kernels: automorphous square classes at every place, their images in
// Sq*(Z/PZ) with P = 8 * prod of odd p with p^3 | d, and class numbers per
// genus (one class per spinor genus for indefinite ternaries).
#ifndef TQF_SPINOR_HH
#define TQF_SPINOR_HH

#include "tqf/genus.hpp"

namespace tqf {

// generators of the automorphous group at an odd prime, as (parity, chi) pairs
// in Sq*(Q_p) = Z/2 x {+-1}
std::vector<std::pair<int, int>> automorphous_odd(const OddLocalClass& c);

// number of classes in the genus
long class_count(const GenusSymbol& g);

// h(d) = sum of h(G) over genera of determinant d (grouped evaluation)
ZZ class_number(const ZZ& d);

// same by plain enumeration; cross-validation oracle
ZZ class_number_direct(const ZZ& d);

// number of genera g(d)
inline long genus_number(const ZZ& d) { return count_genera(d); }

} // namespace tqf

#endif
