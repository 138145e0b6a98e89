#include <doctest.h>

#include "tqf/spinor.hpp"

#include <set>

using namespace tqf;

TEST_CASE("r/s factorization and P_d")
{
    CHECK(factor_rs(ZZ(12)) == std::make_pair(ZZ(4), ZZ(3)));
    CHECK(factor_rs(ZZ(45)) == std::make_pair(ZZ(9), ZZ(5)));
    CHECK(factor_rs(ZZ(15)) == std::make_pair(ZZ(1), ZZ(15)));
    CHECK(P_d(ZZ(100)) == 5);
    CHECK(P_d(ZZ(12)) == 1);
    CHECK(P_d(ZZ(441)) == 21);
}

TEST_CASE("genus counts against the closed form")
{
    // squarefree odd d: g(d) = 2^omega(d)
    for (long d : {3L, 5L, 15L, 21L, 105L, 1155L}) {
        CHECK(count_genera(ZZ(d)) == (1L << omega(ZZ(d))));
        CHECK((long)enumerate_genera(ZZ(d)).size() == count_genera(ZZ(d)));
    }
    CHECK(count_genera(ZZ(1)) == 1);
    // d = 2 * odd squarefree: 2^{omega-2} g2(d) with g2 = #2-adic classes
    for (long d : {6L, 10L, 30L, 210L}) {
        long g2 = local2_count(1, (int)to_long(mod(unit_part(ZZ(d), ZZ(2)), ZZ(8))));
        long om = omega(ZZ(d));
        CHECK(count_genera(ZZ(d)) == (1L << (om - 2)) * g2);
    }
    // generic closed form (gbound2) for d with an odd prime of odd valuation
    for (long d = 2; d <= 400; d++) {
        bool generic = false;
        long v2 = 0;
        long prodv = 1, om = 0;
        for (auto& [p, e] : factor(ZZ(d))) {
            if (p == 2) {
                v2 = e;
                continue;
            }
            om++;
            prodv *= e;
            if (e % 2 == 1)
                generic = true;
        }
        if (!generic)
            continue;
        // g(d) = (1/2) g_2(d) prod over odd p | d of 2 v_p(d)
        long g2 = v2 == 0 ? 2 : local2_count((int)v2, (int)to_long(mod(unit_part(ZZ(d), ZZ(2)), ZZ(8))));
        long want = g2 * (om >= 1 ? (1L << (om - 1)) : 1) * prodv;
        CHECK_MESSAGE(count_genera(ZZ(d)) == want, "d=", d);
    }
    // exceptional d = 2^a d1^2 satisfy the coarse bound
    for (long d : {4L, 8L, 16L, 9L, 36L, 72L, 144L}) {
        long om = omega(ZZ(d));
        long prodv = 1;
        for (auto& [p, e] : factor(ZZ(d)))
            prodv *= e;
        long bound = (3 + (d % 2 == 0 ? 1 : -1) * 1) * (1L << om) * prodv;
        if (d % 2 == 1)
            bound = 2 * (1L << om) * prodv;
        CHECK(count_genera(ZZ(d)) <= bound);
    }
}

TEST_CASE("genus local determinants are consistent")
{
    for (long d : {12L, 48L, 100L, 135L}) {
        for (auto& g : enumerate_genera(ZZ(d))) {
            int prod = 1;
            for (auto& c : g.locals) {
                CHECK(c.vp() == valuation(ZZ(d), c.p));
                prod *= c.hasse();
            }
            CHECK(prod == 1);
        }
    }
}

TEST_CASE("packets and root packets")
{
    // squarefree odd d: root packet supported on {2} with v2 = 0
    auto gs = enumerate_genera(ZZ(15));
    REQUIRE(!gs.empty());
    Packet rt = root_packet(gs[0]);
    REQUIRE(rt.locals.size() == 1);
    CHECK(rt.locals[0].first == 2);
    CHECK(rt.locals[0].second.vp() == 0);
    // d = 12: 3 || d, so 3 is not in R(d)
    for (auto& g : enumerate_genera(ZZ(12))) {
        Packet r12 = root_packet(g);
        REQUIRE(r12.locals.size() == 1);
        CHECK(r12.locals[0].first == 2);
        CHECK(r12.locals[0].second.vp() == 2);
    }
    // reflexivity and restriction semantics
    Packet h = packet_of(gs[0]);
    CHECK(packet_leq(h, h));
    CHECK(packet_leq(rt, h));
}

TEST_CASE("class numbers: squarefree determinants have one class per genus")
{
    for (long d = 1; d <= 300; d++) {
        if (!is_squarefree(ZZ(d)))
            continue;
        for (auto& g : enumerate_genera(ZZ(d)))
            CHECK_MESSAGE(class_count(g) == 1, "d=", d, " genus=", g.key());
    }
}

TEST_CASE("class number bound and grouped evaluation")
{
    for (long d = 1; d <= 240; d++) {
        long bound = 4L << omega_k(ZZ(d), 3);
        ZZ direct = class_number_direct(ZZ(d));
        CHECK(class_number(ZZ(d)) == direct);
        for (auto& g : enumerate_genera(ZZ(d)))
            CHECK(class_count(g) <= bound);
    }
    // spot checks at higher ramification
    for (long d : {27L, 54L, 108L, 128L, 243L, 250L, 375L, 500L, 675L, 1024L}) {
        CHECK(class_number(ZZ(d)) == class_number_direct(ZZ(d)));
        long bound = 4L << omega_k(ZZ(d), 3);
        for (auto& g : enumerate_genera(ZZ(d)))
            CHECK(class_count(g) <= bound);
    }
}

TEST_CASE("equal restriction to p | 2r(d) gives equal class counts")
{
    for (long d : {27L, 48L, 75L, 108L, 135L, 189L, 200L, 405L}) {
        ZZ r = factor_rs(ZZ(d)).first;
        std::vector<ZZ> rp = {ZZ(2)};
        for (auto& [p, e] : factor(r))
            if (p != 2)
                rp.push_back(p);
        std::map<std::string, std::set<long>> groups;
        for (auto& g : enumerate_genera(ZZ(d))) {
            Packet h = packet_of(g).restriction(rp);
            groups[h.key()].insert(class_count(g));
        }
        for (auto& [k, hs] : groups)
            CHECK_MESSAGE(hs.size() == 1, "d=", d);
    }
}

TEST_CASE("partition of genera by root packets")
{
    for (long d = 1; d <= 120; d++) {
        auto gs = enumerate_genera(ZZ(d));
        std::map<std::string, long> byroot;
        ZZ total(0);
        for (auto& g : gs) {
            byroot[root_packet(g).key()]++;
            total += class_count(g);
        }
        long sum = 0;
        for (auto& [k, n] : byroot)
            sum += n;
        CHECK(sum == (long)gs.size());
        CHECK(total == class_number(ZZ(d)));
    }
}
