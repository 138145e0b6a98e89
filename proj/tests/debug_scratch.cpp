// scratch debugging tool, not part of the test suite
#include "tqf/count.hpp"
#include "tqf/localclass.hpp"
#include <iostream>
#include <random>

using namespace tqf;

int main(int argc, char** argv)
{
    std::string mode = argc > 1 ? argv[1] : "cells";
    if (mode == "cells") {
        // per-cell computed vs stated isotropy and fingerprint collisions
        for (int u = 0; u <= 4; u++)
            for (int v = 0; v <= 4; v++) {
                try {
                    auto& cell = local2_cell(u, v, 1);
                    for (size_t i = 0; i < cell.size(); i++)
                        for (size_t j = i + 1; j < cell.size(); j++) {
                            auto ei = cell[i].ii_scales, ej = cell[j].ii_scales;
                            if (ei != ej || cell[i].hasse != cell[j].hasse
                                || cell[i].aut2 != cell[j].aut2)
                                continue;
                            bool split = false;
                            for (int t = 0; t <= 2 * u + v + 3 && !split; t++)
                                split = cell[i].rep_units_at(t) != cell[j].rep_units_at(t);
                            if (!split)
                                std::cout << "COLLIDE (" << u << "," << v << "): " << cell[i].sym
                                          << "  vs  " << cell[j].sym << "\n";
                        }
                } catch (std::exception& e) {
                    std::cout << "cell (" << u << "," << v << "): " << e.what() << "\n";
                }
            }
    } else if (mode == "flags") {
        for (int u = 0; u <= 4; u++)
            for (int v = 0; v <= 4; v++) {
                auto& cell = local2_cell(u, v, 1);
                for (auto& c : cell)
                    std::cout << u << ',' << v << "  " << c.sym << "  iso=" << (c.iso ? 'Y' : 'N')
                              << "  mass=" << c.mass << "  rep: " << c.rep.to_line() << "\n";
            }
    } else if (mode == "equiv") {
        // is <1,16,256> equivalent to <1,80,1280> over Z_2?
        TernaryForm f1 = TernaryForm::diag(ZZ(1), ZZ(16), ZZ(256));
        TernaryForm f2 = TernaryForm::diag(ZZ(1), ZZ(80), ZZ(1280));
        std::cout << "equivalent2(<1,16,256>,<1,80,1280>) = " << equivalent2(f1, f2) << "\n";
        TernaryForm f3 = TernaryForm::diag(ZZ(1), ZZ(16), ZZ(256 * 25));
        std::cout << "equivalent2(<1,16,256>,<1,16,6400>) = " << equivalent2(f1, f3) << "\n";
        std::cout << "equivalent2(self) = " << equivalent2(f1, f1) << "\n";
        TernaryForm a = TernaryForm::diag(ZZ(7), ZZ(4), ZZ(7 * 16));
        TernaryForm b = TernaryForm::diag(ZZ(7), ZZ(7 * 4), ZZ(16));
        std::cout << "(2,2) pair equivalent = " << equivalent2(a, b) << "\n";
    } else if (mode == "build") {
        for (int u = 0; u <= 6; u++)
            for (int v = 0; v <= 6; v++)
                for (int d0 : {1, 3, 5, 7}) {
                    try {
                        local2_cell(u, v, d0);
                    } catch (std::exception& e) {
                        std::cout << "cell(" << u << "," << v << "," << d0 << "): " << e.what() << "\n";
                    }
                }
        std::cout << "build done\n";
    } else if (mode == "classfail") {
        std::mt19937_64 rng(424242);
        std::uniform_int_distribution<long> d(-20, 20);
        std::uniform_int_distribution<int> pick(0, 5), amt(1, 2), sgn(0, 1);
        int done = 0;
        while (done < 2000) {
            TernaryForm f(ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)));
            if (f.determinant() == 0)
                continue;
            try { if (f.content() % 2 == 0) continue; } catch (...) { continue; }
            done++;
            UnimodularMap u;
            for (int s = 0; s < 5; s++) {
                int ij[6][2] = {{0,1},{0,2},{1,0},{1,2},{2,0},{2,1}};
                int k = pick(rng);
                std::array<ZZ, 9> e = {ZZ(1),ZZ(0),ZZ(0),ZZ(0),ZZ(1),ZZ(0),ZZ(0),ZZ(0),ZZ(1)};
                e[3*ij[k][0]+ij[k][1]] = sgn(rng) ? amt(rng) : -amt(rng);
                u = u.mul(UnimodularMap(e));
            }
            TernaryForm t = transform(f, u);
            try {
                const Local2Class& a = classify2(f);
                const Local2Class& b = classify2(t);
                if (&a != &b)
                    std::cout << "MISMATCH f=[" << f.to_line() << "] t=[" << t.to_line() << "] " << a.sym << " vs " << b.sym << "\n";
            } catch (std::exception& e) {
                std::cout << "FAIL f=[" << f.to_line() << "] t=[" << t.to_line() << "]: " << e.what() << "\n";
                Jordan2 jf = jordan_split_2(f), jt = jordan_split_2(t);
                auto show = [&](const Jordan2& j, const char* tag) {
                    std::cout << "  " << tag << " (u,v)=(" << j.u << "," << j.v << ") blocks:";
                    for (auto& b : j.blocks) {
                        std::cout << " [s=" << b.scale << " units";
                        for (int x : b.units) std::cout << " " << x;
                        for (int x : b.vkinds) std::cout << " V" << x;
                        std::cout << "]";
                    }
                    std::cout << "\n";
                };
                show(jf, "f");
                show(jt, "t");
                if (done > 0) return 0;
            }
        }
        std::cout << "classfail done\n";
    } else if (mode == "reps") {
        // representative coverage speed/completeness for d <= 160
        for (long d = 1; d <= 160; d++) {
            try {
                auto reps = genus_representatives(ZZ(d), 24);
                if ((long)reps.size() != count_genera(ZZ(d)))
                    std::cout << "d=" << d << " reps " << reps.size() << " != g " << count_genera(ZZ(d)) << "\n";
            } catch (std::exception& e) {
                std::cout << "d=" << d << ": " << e.what() << "\n";
            }
        }
        std::cout << "reps done\n";
    } else if (mode == "rep") {
        // disagreement hunt between represents_locally and represents_brute
        std::mt19937_64 rng(777);
        std::uniform_int_distribution<long> d(-8, 8), dn(-50, 50);
        std::uniform_int_distribution<int> dp(0, 5);
        long ps[] = {2, 3, 5, 7, 11, 13};
        int done = 0;
        while (done < 500) {
            TernaryForm f(ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)));
            if (f.determinant() == 0)
                continue;
            long n = dn(rng);
            if (n == 0)
                continue;
            long p = ps[dp(rng)];
            int k0 = (int)valuation(ZZ(n), ZZ(p)) + (p == 2 ? 5 : 3);
            bool a = represents_locally(f, ZZ(n), ZZ(p));
            bool b = represents_brute(f, ZZ(n), ZZ(p), k0 + 2);
            if (a != b)
                std::cout << "DISAGREE f=[" << f.to_line() << "] n=" << n << " p=" << p
                          << " hensel=" << a << " brute=" << b << "\n";
            done++;
        }
        std::cout << "done\n";
    }
    return 0;
}
