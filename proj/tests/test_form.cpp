#include <doctest.h>

#include "tqf/form.hpp"

#include <random>

using namespace tqf;

namespace {

TernaryForm markoff()
{
    // 2x1^2 - 2x2^2 - 2x3^2 + 2x1x2 + 2x1x3 + 2x2x3
    return TernaryForm(ZZ(2), ZZ(-2), ZZ(-2), ZZ(1), ZZ(1), ZZ(1));
}

std::mt19937_64 rng(20240811);

TernaryForm random_form(long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    return TernaryForm(ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)), ZZ(d(rng)));
}

UnimodularMap random_unimodular(int steps)
{
    UnimodularMap u;
    std::uniform_int_distribution<int> pick(0, 5), amt(1, 3), sgn(0, 1);
    for (int s = 0; s < steps; s++) {
        int ij[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
        int k = pick(rng);
        std::array<ZZ, 9> e = {ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1)};
        e[3 * ij[k][0] + ij[k][1]] = sgn(rng) ? amt(rng) : -amt(rng);
        u = u.mul(UnimodularMap(e));
    }
    return u;
}

} // namespace

TEST_CASE("determinant basics")
{
    CHECK(TernaryForm::diag(ZZ(1), ZZ(1), ZZ(1)).determinant() == 1);
    CHECK(markoff().determinant() == 12);
    CHECK(TernaryForm::diag(ZZ(-2), ZZ(5), ZZ(-10)).determinant() == 100);
    TernaryForm f = random_form(30);
    CHECK(f.negated().determinant() == -f.determinant());
}

TEST_CASE("content")
{
    CHECK(TernaryForm::diag(ZZ(1), ZZ(1), ZZ(1)).content() == 1);
    CHECK(TernaryForm::diag(ZZ(2), ZZ(4), ZZ(6)).content() == 2);
    CHECK(markoff().scaled(ZZ(2)).content() == 2);
    CHECK_THROWS(TernaryForm().content());
}

TEST_CASE("evaluate")
{
    CHECK(markoff().evaluate(ZZ(1), ZZ(0), ZZ(0)) == 2);
    CHECK(TernaryForm::diag(ZZ(1), ZZ(-1), ZZ(-1)).evaluate(ZZ(1), ZZ(1), ZZ(0)) == 0);
    CHECK(markoff().evaluate(ZZ(0), ZZ(0), ZZ(0)) == 0);
}

TEST_CASE("signature")
{
    Signature s = signature(TernaryForm::diag(ZZ(1), ZZ(-1), ZZ(-1)));
    CHECK(s.pos == 1);
    CHECK(s.neg == 2);
    CHECK(s.zero == 0);
    s = signature(TernaryForm::diag(ZZ(1), ZZ(1), ZZ(1)));
    CHECK(s.pos == 3);
    s = signature(markoff());
    CHECK(s.pos == 1);
    CHECK(s.neg == 2);
    CHECK(s.indefinite_nonsingular());
    // singular ranks
    CHECK(signature(TernaryForm::diag(ZZ(0), ZZ(0), ZZ(5))).zero == 2);
    CHECK(signature(TernaryForm::diag(ZZ(3), ZZ(0), ZZ(-5))).zero == 1);
}

TEST_CASE("transform invariants on random pairs")
{
    int trials = 0;
    while (trials < 2000) {
        TernaryForm f = random_form(50);
        if (f.g == TernaryForm().g)
            continue;
        trials++;
        UnimodularMap u = random_unimodular(6);
        TernaryForm t = transform(f, u);
        CHECK(t.determinant() == f.determinant());
        CHECK(t.content() == f.content());
        Signature s1 = signature(f), s2 = signature(t);
        CHECK(s1 == s2);
    }
}

TEST_CASE("transform composition and evaluate agree with matrix algebra")
{
    for (int i = 0; i < 300; i++) {
        TernaryForm f = random_form(20);
        UnimodularMap u = random_unimodular(4), v = random_unimodular(4);
        CHECK(transform(transform(f, u), v) == transform(f, u.mul(v)));
        std::uniform_int_distribution<long> d(-9, 9);
        ZZ x(d(rng)), y(d(rng)), z(d(rng));
        // f(Ux) = (transform f U)(x)
        ZZ ux = u.at(0, 0) * x + u.at(0, 1) * y + u.at(0, 2) * z;
        ZZ uy = u.at(1, 0) * x + u.at(1, 1) * y + u.at(1, 2) * z;
        ZZ uz = u.at(2, 0) * x + u.at(2, 1) * y + u.at(2, 2) * z;
        CHECK(f.evaluate(ux, uy, uz) == transform(f, u).evaluate(x, y, z));
    }
}

TEST_CASE("form line round trip")
{
    TernaryForm f = markoff();
    CHECK(TernaryForm::parse_line(f.to_line()) == f);
    CHECK(f.to_line() == "2 -2 -2 1 1 1");
}
