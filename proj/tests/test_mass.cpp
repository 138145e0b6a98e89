#include <doctest.h>
#include <cmath>

#include "tqf/euler.hpp"

using namespace tqf;

TEST_CASE("local mass pins")
{
    // odd p, v = 0: (1/2)(1 - p^-2)^-1, p = 3 gives 9/16
    auto c3 = enumerate_local_classes(ZZ(3), 0, 1);
    REQUIRE(c3.size() == 1);
    CHECK(local_mass(c3[0]) == QQ(9) / 16);
    // p = 2 unimodular: 1/4 (isotropic) and 1/12
    auto c2 = enumerate_local_classes(ZZ(2), 0, 1);
    REQUIRE(c2.size() == 2);
    CHECK(local_mass(c2[0]) + local_mass(c2[1]) == QQ(1) / 4 + QQ(1) / 12);
    // 1_II^2 2_-1^1 has mass 2 * (16/3) / 64 = 1/6
    bool found = false;
    for (auto& c : enumerate_local_classes(ZZ(2), 1, 1))
        if (c.two->sym == "1_II^2 2_-1^1") {
            CHECK(c.two->mass == QQ(1) / 6);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("odd local isotropic mass identities")
{
    // Lemma-level identities: v_p = 0 isotropic mass (1/2)(1-p^-2)^-1;
    // v_p = 1 isotropic mass (p/4)(1-1/p)^-1; all isotropic masses <= p^v / 2
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        QQ pq(p);
        for (int eta : {1, -1}) {
            QQ m1(0);
            for (auto& c : enumerate_local_classes(ZZ(p), 1, eta))
                if (c.isotropic())
                    m1 += c.mass();
            CHECK(m1 == pq / 4 / (1 - 1 / pq));
        }
        for (int v = 0; v <= 6; v++)
            for (int eta : {1, -1})
                for (auto& c : enumerate_local_classes(ZZ(p), v, eta))
                    if (c.isotropic())
                        CHECK(c.mass() <= QQ(pow_zz(ZZ(p), v)) / 2);
    }
}

TEST_CASE("composite 2-adic isotropic mass table")
{
    // sum over isotropic diagonalizable classes of 16 m_2 / 2^{u+v} per cell
    auto composite = [](int u, int v) {
        QQ s(0);
        for (auto& c : local2_cell(u, v, 1))
            if (c.iso && c.ii_scales.empty())
                s += 16 * c.mass / QQ(ZZ(1) << (unsigned)(u + v));
        return s;
    };
    int uv[3] = {0, 1, 2}; // representing 0, odd >= 1, even >= 1 via 0, 1, 2
    QQ want[3][3] = {{QQ(4), QQ(2), QQ(3)}, {QQ(2), QQ(2), QQ(2)}, {QQ(3), QQ(2), QQ(3)}};
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            int u = uv[i] == 0 ? 0 : uv[i];
            int v = uv[j] == 0 ? 0 : uv[j];
            CHECK_MESSAGE(composite(u, v) == want[i][j], "(u,v)=(", u, ",", v, ")");
            // and deeper members of the same parity class
            CHECK(composite(u ? u + 2 : 0, v ? v + 2 : 0) == want[i][j]);
        }
}

TEST_CASE("sum h2(2^k) 2^-k approaches 19/2")
{
    QQ s(0);
    for (int k = 0; k <= 20; k++)
        s += QQ(local2_count(k, 1)) / QQ(ZZ(1) << (unsigned)k);
    QQ err = s - QQ(19) / 2;
    CHECK(::abs(err.get_num().get_d() / err.get_den().get_d()) < 1e-3);
}

TEST_CASE("nu-tilde^iso multiplicativity and pins")
{
    CHECK(nu_iso_tilde(ZZ(1)) == 1);
    // p nu-tilde(p) = (p+1)/(2p) at odd p
    for (long p : {3L, 5L, 7L, 11L})
        CHECK(QQ(p) * nu_iso_tilde(ZZ(p)) == QQ(p + 1) / (2 * p));
    // exact multiplicativity on prescribed pairs
    for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 5}, {2, 3}, {5, 7}})
        for (int a = 1; a <= 3; a++)
            for (int b = 1; b <= 3; b++) {
                ZZ pa = pow_zz(ZZ(p), a), qb = pow_zz(ZZ(q), b);
                CHECK(nu_iso_tilde(pa * qb) == nu_iso_tilde(pa) * nu_iso_tilde(qb));
            }
    // iso mass sums are independent of the determinant unit class
    for (long p : {3L, 5L})
        for (int v = 0; v <= 4; v++) {
            QQ a(0), b(0);
            for (auto& c : enumerate_local_classes(ZZ(p), v, 1))
                if (c.isotropic())
                    a += c.mass();
            for (auto& c : enumerate_local_classes(ZZ(p), v, -1))
                if (c.isotropic())
                    b += c.mass();
            CHECK(a == b);
        }
    for (int v = 0; v <= 4; v++)
        for (int d0 : {3, 5, 7}) {
            QQ a(0), b(0);
            for (auto& c : enumerate_local_classes(ZZ(2), v, 1))
                if (c.isotropic())
                    a += c.mass();
            for (auto& c : enumerate_local_classes(ZZ(2), v, d0))
                if (c.isotropic())
                    b += c.mass();
            CHECK(a == b);
        }
}

TEST_CASE("two routes to nu-tilde^iso agree exactly")
{
    for (long d = 1; d <= 200; d++)
        CHECK(nu_iso_tilde(ZZ(d)) == nu_iso_tilde_via_genera(ZZ(d)));
    for (long d : {256L, 288L, 675L, 1024L})
        CHECK(nu_iso_tilde(ZZ(d)) == nu_iso_tilde_via_genera(ZZ(d)));
}

TEST_CASE("siegel mass ratios")
{
    // nu-tilde^iso(p) = (p+1)/(2 p^2): ratio of NU sums over isotropic genera
    for (long p : {3L, 5L, 7L}) {
        QQ s(0);
        for (auto& g : enumerate_genera(ZZ(p)))
            if (g.isotropic())
                s += siegel_nu_finite(g);
        CHECK(s / (QQ(3) / 4) == QQ(p + 1) / (2 * p * p));
    }
    // |D| nu stays bounded on isotropic genera (sample)
    for (long d = 1; d <= 150; d++)
        for (auto& g : enumerate_genera(ZZ(d)))
            if (g.isotropic())
                CHECK(QQ(d) * siegel_nu_finite(g) <= QQ(4));
}

TEST_CASE("euler factor identities")
{
    // A_3(1) = 29/27 and A_2(0) = 5/6
    Real a3 = euler_A(3, Real(1));
    CHECK(std::abs(a3.to_double() - 29.0 / 27.0) < 1e-15);
    Real a2 = euler_A(2, Real(0));
    CHECK(std::abs(a2.to_double() - 5.0 / 6.0) < 1e-15);
    // truncated mass series against the closed form
    for (long p : {2L, 3L, 5L, 7L})
        for (double s : {1.5, 2.0}) {
            Real series = Ip_series(p, Real(s), 30);
            Real closed = Ip_closed(p, Real(s));
            CHECK(std::abs(series.to_double() - closed.to_double()) < 1e-9);
        }
}

TEST_CASE("varpi factors and stability at small cutoffs")
{
    // factor at p = 3: (728/729)(29/32) sqrt(3/2)
    Bounded v1 = varpi(3000);
    Bounded v2 = varpi(20000);
    CHECK(std::abs(v1.value.to_double() - v2.value.to_double()) <
          v1.error.to_double() + v2.error.to_double());
    CHECK(v1.error.to_double() < 1e-4);
    CHECK(v2.value.to_double() > 1.3);
    CHECK(v2.value.to_double() < 1.4);
}

TEST_CASE("log tail expansion constant is conservative")
{
    // |log f_p - (9/8) p^-2| <= 2 p^-3 for the varpi and K(1) factors
    for (long p : primes_up_to(10000)) {
        if (p < 11)
            continue;
        double t = 1.0 / (double)p;
        double f = (1 - std::pow(t, 6)) * (1 - 0.5 * t / ((1 + t) * (1 + t))) /
                   std::sqrt(1 - t);
        double lf = std::log(f);
        CHECK(std::abs(lf - 1.125 * t * t) <= 2 * t * t * t);
        double f2 = (1 - 0.5 * t / ((1 + t) * (1 + t))) / std::sqrt(1 - t);
        CHECK(std::abs(std::log(f2) - 1.125 * t * t) <= 2 * t * t * t);
    }
}

TEST_CASE("K(1) evaluation is stable")
{
    Bounded k1 = K_at_1(2000);
    Bounded k2 = K_at_1(20000);
    CHECK(std::abs(k1.value.to_double() - k2.value.to_double()) <
          k1.error.to_double() + k2.error.to_double());
    // I(s) / zeta(s)^(1/2) stays near K(s) as s -> 1
    for (double s : {1.1, 1.05}) {
        Bounded I = dirichlet_I(Real(s), 20000);
        double ratio = I.value.to_double() / std::sqrt(Real::zeta(Real(s)).to_double());
        CHECK(std::abs(ratio - k2.value.to_double()) < 0.06);
    }
}
