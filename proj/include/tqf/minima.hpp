// Minima of anisotropic forms with certificates, local minima of packets and
// genera, search caps, and the Jones-Watson representation criterion.
#ifndef TQF_MINIMA_HH
#define TQF_MINIMA_HH

#include "tqf/spinor.hpp"

#include <optional>

namespace tqf {

struct LocalMinData {
    long kstar = 0; // K*: least positive entry of R^(abs)
    long k = 0;     // K: 0 for isotropic members, else K*
};

// least |n| represented by every member of the packet; terminates by
// K*(H) <= 2 r(H)
LocalMinData local_min(const Packet& h);
LocalMinData local_min(const GenusSymbol& g);

// some odd prime q with q || n and q coprime to d
bool jones_watson_applies(const ZZ& n, const ZZ& d);

enum class KappaCert { Isotropic, LocalLowerBoundMet, JonesWatsonExcluded, UpperBoundOnly };

struct KappaResult {
    ZZ value;
    std::optional<std::array<ZZ, 3>> witness;
    KappaCert cert = KappaCert::UpperBoundOnly;
    long radius = 0;

    bool exact() const { return cert != KappaCert::UpperBoundOnly; }
};

// kappa(F) for a primitive nonsingular indefinite form
KappaResult kappa(const TernaryForm& f, long max_radius = 4096);

// max over invertible residues a mod q of the least prime p == a (mod q)
long least_prime_cap(long q);

// rigorous search cap for kappa over determinant d classes:
// min(2 r(d) B(8 P_d), hard_cap)
ZZ watson_cap(const ZZ& d, const ZZ& hard_cap = ZZ(1000000));

} // namespace tqf

#endif
