// Z_p-classification of primitive nonsingular ternary forms for odd p:
// Jordan splitting into unit diagonal blocks with strictly increasing scales,
// canonical class data, complete enumeration per determinant class, masses.
#ifndef TQF_LOCALODD_HH
#define TQF_LOCALODD_HH

#include "tqf/padic.hpp"

namespace tqf {

// unit block of a Jordan splitting at odd p: p^scale * (x1^2 + ... + eta x_dim^2)
struct OddBlock {
    int scale = 0;
    int dim = 0;
    int eta = 1; // +1 square unit class, -1 nonsquare

    bool operator==(const OddBlock& o) const
    {
        return scale == o.scale && dim == o.dim && eta == o.eta;
    }
    bool operator<(const OddBlock& o) const { return scale < o.scale; }
};

struct OddLocalClass {
    long p = 3;
    std::vector<OddBlock> blocks; // scales strictly increasing

    bool operator==(const OddLocalClass& o) const { return p == o.p && blocks == o.blocks; }

    long vp() const; // v_p of the determinant
    int det_eta() const;
    TernaryForm representative() const;
    int hasse() const;     // c_p of the class
    bool isotropic() const { return hasse() == 1; }
    QQ mass() const;       // Conway-Sloane p-mass m_p
    std::string symbol() const;
};

// Jordan data of f at odd p (f nonsingular)
OddLocalClass jordan_split_odd(const TernaryForm& f, long p);

// all classes with determinant square class p^v * (square eta=+1 / nonsquare eta=-1)
std::vector<OddLocalClass> enumerate_local_classes_odd(long p, int v, int d0_eta);

} // namespace tqf

#endif
