#include "tqf/spinor.hpp"

#include <cassert>

namespace tqf {

std::vector<std::pair<int, int>> automorphous_odd(const OddLocalClass& c)
{
    // Diagonal entries p^{t_i} u_i from the canonical representative; the
    // automorphous group is generated by their pairwise ratios, together with
    // all unit classes whenever two entries share a scale.
    std::vector<std::pair<int, int>> entries; // (t, chi)
    ZZ p(c.p);
    for (auto& b : c.blocks) {
        for (int i = 0; i < b.dim - 1; i++)
            entries.push_back({b.scale, 1});
        entries.push_back({b.scale, b.eta});
    }
    std::vector<std::pair<int, int>> gens;
    for (size_t i = 0; i < entries.size(); i++)
        for (size_t j = i + 1; j < entries.size(); j++)
            gens.push_back({(entries[i].first + entries[j].first) & 1,
                            entries[i].second * entries[j].second});
    bool shared_scale = false;
    for (auto& b : c.blocks)
        if (b.dim >= 2)
            shared_scale = true;
    if (shared_scale)
        gens.push_back({0, -1});
    return gens;
}

namespace {

// F_2 vector space Sq*(Z/PZ): two coordinates for mod 8 and one per odd prime
struct SqSpace {
    std::vector<long> odd_primes; // odd q with q^3 | d
    int dim() const { return 2 + (int)odd_primes.size(); }

    // bits of a unit n (must be coprime to 2 and the primes)
    uint32_t image_int(const ZZ& n) const
    {
        long u = to_long(mod(n, ZZ(8)));
        uint32_t v = 0;
        if (u == 3 || u == 7)
            v |= 1;
        if (u == 5 || u == 7)
            v |= 2;
        for (size_t i = 0; i < odd_primes.size(); i++)
            if (legendre(n, ZZ(odd_primes[i])) == -1)
                v |= 1u << (2 + i);
        return v;
    }
};

int rank_f2(std::vector<uint32_t> rows)
{
    int r = 0;
    for (int c = 0; c < 32; c++) {
        size_t pr = SIZE_MAX;
        for (size_t i = r; i < rows.size(); i++)
            if (rows[i] & (1u << c)) {
                pr = i;
                break;
            }
        if (pr == SIZE_MAX)
            continue;
        std::swap(rows[r], rows[pr]);
        for (size_t i = 0; i < rows.size(); i++)
            if (i != (size_t)r && (rows[i] & (1u << c)))
                rows[i] ^= rows[r];
        r++;
        if (r == (int)rows.size())
            break;
    }
    return r;
}

} // namespace

long class_count(const GenusSymbol& g)
{
    SqSpace V;
    for (auto& [p, e] : factor(g.d))
        if (p != 2 && e >= 3)
            V.odd_primes.push_back(to_long(p));

    std::vector<uint32_t> gens;

    // p = -1: the forms are indefinite, so -1 is automorphous at the real place
    gens.push_back(V.image_int(ZZ(-1)));

    // p = 2: image of the 2-adically automorphous classes
    {
        const LocalClass* c2 = g.local_at(ZZ(2));
        assert(c2 && c2->is_two());
        int a2 = c2->two->aut2;
        for (int code = 0; code < 8; code++) {
            if (!(a2 & (1 << code)))
                continue;
            static const int units[4] = {1, 3, 7, 5};
            int u = units[code & 3];
            int parity = code >> 2;
            // Delta_2: unit part at the 2-coordinates, 2^parity elsewhere
            uint32_t vec = V.image_int(ZZ(u)) & 3u;
            if (parity)
                for (size_t i = 0; i < V.odd_primes.size(); i++)
                    if (legendre(ZZ(2), ZZ(V.odd_primes[i])) == -1)
                        vec |= 1u << (2 + i);
            gens.push_back(vec);
        }
    }

    // odd p | d: Delta_p of the automorphous group; for p | s(d) this reduces
    // to adjoining the class of the integer p
    for (auto& c : g.locals) {
        if (c.p == 2)
            continue;
        long p = to_long(c.p);
        for (auto& [parity, chi] : automorphous_odd(c.odd)) {
            uint32_t vec = 0;
            if (chi == -1) {
                // unit-part coordinate lives only at p itself
                for (size_t i = 0; i < V.odd_primes.size(); i++)
                    if (V.odd_primes[i] == p)
                        vec |= 1u << (2 + i);
            }
            if (parity) {
                // p^1 at every other coordinate
                vec ^= V.image_int(ZZ(p)) & 3u;
                for (size_t i = 0; i < V.odd_primes.size(); i++)
                    if (V.odd_primes[i] != p && legendre(ZZ(p), ZZ(V.odd_primes[i])) == -1)
                        vec |= 1u << (2 + i);
            }
            gens.push_back(vec);
        }
    }

    int rank = rank_f2(gens);
    return 1L << (V.dim() - rank);
}

ZZ class_number(const ZZ& d)
{
    // Genera grouped by their restriction to the primes dividing 2 r(d):
    // within a group the class number is constant, and the tame local classes
    // contribute 2^{omega(s)-1} genera per restriction (s > 1), split evenly
    // between both Hasse parities.
    auto [r, s] = factor_rs(d);
    auto fs = factor(d);
    long v2 = 0;
    for (auto& [p, e] : fs)
        if (p == 2)
            v2 = e;
    int d0 = (int)to_long(mod(unit_part(d, ZZ(2)), ZZ(8)));

    std::vector<std::vector<LocalClass>> wild;
    wild.push_back(enumerate_local_classes(ZZ(2), (int)v2, d0));
    std::vector<ZZ> tame;
    for (auto& [p, e] : fs) {
        if (p == 2)
            continue;
        int eta = legendre(unit_part(d, p), p);
        if (e >= 2)
            wild.push_back(enumerate_local_classes(p, e, eta));
        else
            tame.push_back(p);
    }
    int omega_s = (int)tame.size();
    ZZ group_count = omega_s > 0 ? pow_zz(ZZ(2), omega_s - 1) : ZZ(1);

    // tame completion template: pick the +1 tame class everywhere except one
    // adjustable slot
    std::vector<LocalClass> tame_plus, tame_minus;
    for (const ZZ& p : tame) {
        int eta = legendre(unit_part(d, p), p);
        auto cs = enumerate_local_classes(p, 1, eta);
        assert(cs.size() == 2);
        const LocalClass& cp = cs[cs[0].hasse() == 1 ? 0 : 1];
        const LocalClass& cm = cs[cs[0].hasse() == 1 ? 1 : 0];
        tame_plus.push_back(cp);
        tame_minus.push_back(cm);
    }

    ZZ total(0);
    std::vector<size_t> pick(wild.size(), 0);
    for (;;) {
        int parity = 1;
        for (size_t i = 0; i < wild.size(); i++)
            parity *= wild[i][pick[i]].hasse();
        bool representable = omega_s > 0 || parity == 1;
        if (representable) {
            GenusSymbol g;
            g.d = d;
            for (size_t i = 0; i < wild.size(); i++)
                g.locals.push_back(wild[i][pick[i]]);
            for (size_t i = 0; i < tame.size(); i++) {
                bool flip_here = i + 1 == tame.size() && parity == -1;
                g.locals.push_back(flip_here ? tame_minus[i] : tame_plus[i]);
            }
            total += group_count * class_count(g);
        }
        size_t k = 0;
        while (k < wild.size() && ++pick[k] == wild[k].size()) {
            pick[k] = 0;
            k++;
        }
        if (k == wild.size())
            break;
    }
    return total;
}

ZZ class_number_direct(const ZZ& d)
{
    ZZ h(0);
    for (auto& g : enumerate_genera(d))
        h += class_count(g);
    return h;
}

} // namespace tqf
