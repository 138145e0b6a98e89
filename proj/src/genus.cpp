#include "tqf/genus.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tqf {

std::pair<ZZ, ZZ> factor_rs(const ZZ& d)
{
    if (d <= 0)
        throw std::invalid_argument("factor_rs: d must be positive");
    ZZ r(1);
    for (auto& [p, e] : factor(d))
        if (p == 2 || e >= 2)
            r *= pow_zz(p, e);
    return {r, d / r};
}

ZZ P_d(const ZZ& d)
{
    if (d == 0)
        throw std::invalid_argument("P_d: d = 0");
    ZZ P(1);
    for (auto& [p, e] : factor(d))
        if (p != 2 && e >= 2)
            P *= p;
    return P;
}

const LocalClass* GenusSymbol::local_at(const ZZ& p) const
{
    for (auto& c : locals)
        if (c.p == p)
            return &c;
    return nullptr;
}

bool GenusSymbol::isotropic() const
{
    for (auto& c : locals)
        if (c.hasse() != 1)
            return false;
    return true;
}

std::string GenusSymbol::key() const
{
    std::ostringstream os;
    os << d;
    for (auto& c : locals)
        os << '|' << c.p << ':' << c.symbol();
    return os.str();
}

std::vector<GenusSymbol> enumerate_genera(const ZZ& d)
{
    if (d <= 0)
        throw std::invalid_argument("enumerate_genera: d must be positive");
    auto fs = factor(d);
    long v2 = 0;
    for (auto& [p, e] : fs)
        if (p == 2)
            v2 = e;
    int d0 = (int)to_long(mod(unit_part(d, ZZ(2)), ZZ(8)));

    std::vector<std::vector<LocalClass>> lists;
    lists.push_back(enumerate_local_classes(ZZ(2), (int)v2, d0));
    for (auto& [p, e] : fs) {
        if (p == 2)
            continue;
        int eta = legendre(unit_part(d, p), p);
        lists.push_back(enumerate_local_classes(p, e, eta));
    }

    std::vector<GenusSymbol> out;
    std::vector<size_t> pick(lists.size(), 0);
    for (;;) {
        int prod = 1;
        for (size_t i = 0; i < lists.size(); i++)
            prod *= lists[i][pick[i]].hasse();
        if (prod == 1) {
            GenusSymbol g;
            g.d = d;
            for (size_t i = 0; i < lists.size(); i++)
                g.locals.push_back(lists[i][pick[i]]);
            out.push_back(std::move(g));
        }
        size_t k = 0;
        while (k < lists.size() && ++pick[k] == lists[k].size()) {
            pick[k] = 0;
            k++;
        }
        if (k == lists.size())
            break;
    }
    return out;
}

long count_genera(const ZZ& d)
{
    auto fs = factor(d);
    long v2 = 0;
    for (auto& [p, e] : fs)
        if (p == 2)
            v2 = e;
    int d0 = (int)to_long(mod(unit_part(d, ZZ(2)), ZZ(8)));
    // product over p of (n_p^+ + n_p^-) and (n_p^+ - n_p^-); genera with
    // global Hasse product +1 number (prod_all + prod_diff) / 2
    long all = 1, diff = 1;
    auto tally = [&](const std::vector<LocalClass>& cs) {
        long plus = 0, minus = 0;
        for (auto& c : cs)
            (c.hasse() == 1 ? plus : minus)++;
        all *= plus + minus;
        diff *= plus - minus;
    };
    tally(enumerate_local_classes(ZZ(2), (int)v2, d0));
    for (auto& [p, e] : fs) {
        if (p == 2)
            continue;
        int eta = legendre(unit_part(d, p), p);
        tally(enumerate_local_classes(p, e, eta));
    }
    return (all + diff) / 2;
}

std::vector<ZZ> Packet::support() const
{
    std::vector<ZZ> s;
    for (auto& [p, c] : locals)
        s.push_back(p);
    return s;
}

ZZ Packet::determinant() const
{
    ZZ d(1);
    for (auto& [p, c] : locals)
        d *= pow_zz(p, c.vp());
    return d;
}

Packet Packet::restriction(const std::vector<ZZ>& primes) const
{
    Packet r;
    for (auto& [p, c] : locals)
        if (std::find(primes.begin(), primes.end(), p) != primes.end())
            r.locals.push_back({p, c});
    return r;
}

Packet Packet::root() const
{
    ZZ d = determinant();
    std::vector<ZZ> keep;
    for (auto& [p, c] : locals)
        if (p == 2 || c.vp() >= 2)
            keep.push_back(p);
    return restriction(keep);
}

bool Packet::operator==(const Packet& o) const
{
    if (locals.size() != o.locals.size())
        return false;
    for (size_t i = 0; i < locals.size(); i++)
        if (locals[i].first != o.locals[i].first || !(locals[i].second == o.locals[i].second))
            return false;
    return true;
}

bool Packet::operator<(const Packet& o) const { return key() < o.key(); }

std::string Packet::key() const
{
    std::ostringstream os;
    for (auto& [p, c] : locals)
        os << p << ':' << c.symbol() << '|';
    return os.str();
}

Packet packet_of(const GenusSymbol& g)
{
    Packet h;
    for (auto& c : g.locals)
        h.locals.push_back({c.p, c});
    std::sort(h.locals.begin(), h.locals.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    return h;
}

Packet root_packet(const GenusSymbol& g)
{
    return packet_of(g).root();
}

bool packet_leq(const Packet& h, const Packet& hp)
{
    // support containment, equal root packets, restriction equality
    auto sh = h.support();
    for (const ZZ& p : sh) {
        bool found = false;
        for (auto& [q, c] : hp.locals)
            if (q == p)
                found = true;
        if (!found)
            return false;
    }
    if (!(h.root() == hp.root()))
        return false;
    return h == hp.restriction(sh);
}

} // namespace tqf
