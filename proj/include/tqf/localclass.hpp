// Uniform view of a Z_p-equivalence class for any prime (odd p or p = 2).
#ifndef TQF_LOCALCLASS_HH
#define TQF_LOCALCLASS_HH

#include "tqf/local2.hpp"
#include "tqf/localodd.hpp"

namespace tqf {

struct LocalClass {
    ZZ p;
    OddLocalClass odd;        // valid when p odd
    const Local2Class* two = nullptr; // valid when p = 2 (owned by the database)

    LocalClass() : p(3) {}
    explicit LocalClass(OddLocalClass c) : p(c.p), odd(std::move(c)) {}
    explicit LocalClass(const Local2Class* c) : p(2), two(c) {}

    bool is_two() const { return two != nullptr; }
    long vp() const { return is_two() ? 2L * two->u + two->v : odd.vp(); }
    int hasse() const
    {
        if (is_two())
            return two->hasse;
        if (!hasse_c)
            hasse_c = odd.hasse();
        return hasse_c;
    }
    mutable int hasse_c = 0;
    bool isotropic() const { return hasse() == 1; }
    QQ mass() const { return is_two() ? two->mass : odd.mass(); }
    TernaryForm representative() const { return is_two() ? two->rep : odd.representative(); }
    std::string symbol() const { return is_two() ? two->sym : odd.symbol(); }

    // 2^t w or p^t (w square/nonsquare) locally represented
    bool represents(const ZZ& n) const;

    bool operator==(const LocalClass& o) const;
};

// canonical class of a primitive nonsingular form at p (odd or 2)
LocalClass canonical_local_class(const TernaryForm& f, const ZZ& p);

// all classes of determinant square class p^v * u at p; for odd p, u is given
// by its Legendre character (+1/-1), for p = 2 by d0 in {1,3,5,7}
std::vector<LocalClass> enumerate_local_classes(const ZZ& p, int v, int unit_class);

} // namespace tqf

#endif
