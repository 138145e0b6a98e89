// Genera of primitive indefinite ternary forms of positive determinant
// (signature (1,2), c_inf = +1), packets over finite prime supports, and the
// r/s determinant factorization.
#ifndef TQF_GENUS_HH
#define TQF_GENUS_HH

#include "tqf/localclass.hpp"

#include <optional>

namespace tqf {

// r(d) = 2^{v_2} * prod of p^{v_p} over odd p with v_p >= 2; s(d) = d / r(d)
std::pair<ZZ, ZZ> factor_rs(const ZZ& d);

// largest squarefree odd P with p | P => p^2 | d
ZZ P_d(const ZZ& d);

struct GenusSymbol {
    ZZ d;                          // positive determinant
    std::vector<LocalClass> locals; // p = 2 first, then odd p | d increasing

    const LocalClass* local_at(const ZZ& p) const;
    bool isotropic() const; // all finite c_p = +1
    std::string key() const;
};

// all genera of primitive indefinite forms of determinant d > 0
std::vector<GenusSymbol> enumerate_genera(const ZZ& d);

// count without materializing symbols
long count_genera(const ZZ& d);

struct Packet {
    // sorted by prime, 2 always present
    std::vector<std::pair<ZZ, LocalClass>> locals;

    std::vector<ZZ> support() const;
    ZZ determinant() const;
    Packet restriction(const std::vector<ZZ>& primes) const;
    Packet root() const;
    bool operator==(const Packet& o) const;
    bool operator<(const Packet& o) const;
    std::string key() const;
};

Packet packet_of(const GenusSymbol& g);
Packet root_packet(const GenusSymbol& g);
bool packet_leq(const Packet& h, const Packet& hp);

} // namespace tqf

#endif
