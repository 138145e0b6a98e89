#include "tqf/localclass.hpp"

#include <map>
#include <mutex>

namespace tqf {

bool LocalClass::operator==(const LocalClass& o) const
{
    if (p != o.p)
        return false;
    if (is_two())
        return two == o.two;
    return odd == o.odd;
}

bool LocalClass::represents(const ZZ& n) const
{
    if (is_two()) {
        long t = valuation(n, ZZ(2));
        int u = (int)to_long(mod(unit_part(n, ZZ(2)), ZZ(8)));
        long k = 2L * two->u + two->v;
        // scaling x -> 2x shows stability two levels up; past the Jordan
        // scales the profile is determined by t mod 2
        long tt = t;
        long cap = k + 3;
        if (tt > cap)
            tt = cap - ((tt - cap) & 1);
        return (two->rep_units_at((int)tt) >> ((u - 1) / 2)) & 1;
    }
    // odd p: cache profiles per class
    static std::mutex mu;
    static std::map<std::pair<long, std::string>, std::vector<int>> cache;
    long t = valuation(n, p);
    int c = legendre(unit_part(n, p), p) == 1 ? 0 : 1;
    long cap = odd.vp() + 2;
    long tt = t;
    if (tt > cap)
        tt = cap - ((tt - cap) & 1);
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(odd.p, odd.symbol());
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<int> prof;
        TernaryForm rep = odd.representative();
        for (long s = 0; s <= cap; s++) {
            int mask = 0;
            ZZ ps = pow_zz(ZZ(odd.p), s);
            ZZ r(least_nonresidue(odd.p));
            if (represents_locally(rep, ps, ZZ(odd.p)))
                mask |= 1;
            if (represents_locally(rep, ps * r, ZZ(odd.p)))
                mask |= 2;
            prof.push_back(mask);
        }
        it = cache.emplace(key, std::move(prof)).first;
    }
    return (it->second[tt] >> c) & 1;
}

LocalClass canonical_local_class(const TernaryForm& f, const ZZ& p)
{
    if (f.determinant() == 0)
        throw std::invalid_argument("canonical_local_class: singular form");
    if (f.content() != 1)
        throw std::invalid_argument("canonical_local_class: imprimitive form");
    if (p == 2)
        return LocalClass(&classify2(f));
    return LocalClass(jordan_split_odd(f, to_long(p)));
}

std::vector<LocalClass> enumerate_local_classes(const ZZ& p, int v, int unit_class)
{
    static std::mutex mu;
    static std::map<std::tuple<long, int, int>, std::vector<LocalClass>> cache;
    auto key = std::make_tuple(to_long(p), v, unit_class);
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<LocalClass> out;
        if (p == 2) {
            for (const Local2Class* c : local2_classes_of_det(v, unit_class))
                out.emplace_back(c);
        } else {
            for (auto& c : enumerate_local_classes_odd(to_long(p), v, unit_class))
                out.emplace_back(std::move(c));
        }
        for (auto& c : out)
            c.hasse(); // warm the cache while we hold the lock
        it = cache.emplace(key, std::move(out)).first;
    }
    return it->second;
}

} // namespace tqf
