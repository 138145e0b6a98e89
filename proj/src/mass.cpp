#include "tqf/mass.hpp"

#include <cassert>

namespace tqf {

QQ local_mass(const LocalClass& c)
{
    return c.mass();
}

QQ siegel_nu_finite(const GenusSymbol& g)
{
    QQ nu(2);
    for (auto& c : g.locals) {
        QQ p(c.p);
        QQ delta = c.mass() / QQ(pow_zz(c.p, 2 * c.vp()));
        nu *= 2 * delta * (1 - 1 / (p * p));
    }
    // primes p | 2d with no stored local class contribute the tame factor,
    // which is exactly cancelled against zeta(2); the only prime possibly
    // missing from locals is none (2 is always present, odd p | d always
    // present), so nothing further to do.
    return nu;
}

QQ nu_iso_tilde_local(const ZZ& p, int k)
{
    QQ num(0), den(0);
    if (p == 2) {
        for (const Local2Class* c : local2_classes_of_det(k, 1))
            if (c->iso)
                num += c->mass;
        for (const Local2Class* c : local2_classes_of_det(0, 1))
            if (c->iso)
                den += c->mass;
    } else {
        long pl = to_long(p);
        for (auto& c : enumerate_local_classes_odd(pl, k, 1))
            if (c.isotropic())
                num += c.mass();
        for (auto& c : enumerate_local_classes_odd(pl, 0, 1))
            if (c.isotropic())
                den += c.mass();
    }
    return num / den / QQ(pow_zz(p, 2 * (long)k));
}

QQ nu_iso_tilde(const ZZ& d)
{
    if (d <= 0)
        throw std::invalid_argument("nu_iso_tilde: d must be positive");
    QQ t(1);
    for (auto& [p, e] : factor(d))
        t *= nu_iso_tilde_local(p, e);
    return t;
}

QQ nu_iso_tilde_via_genera(const ZZ& d)
{
    // NU(1) = 2 * [2 * (1/4) * (3/4)] = 3/4 from the unimodular isotropic
    // 2-adic class of mass 1/4
    QQ nu1(3);
    nu1 /= 4;
    QQ s(0);
    for (auto& g : enumerate_genera(d))
        if (g.isotropic())
            s += siegel_nu_finite(g);
    return s / nu1;
}

} // namespace tqf
