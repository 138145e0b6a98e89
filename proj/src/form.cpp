#include "tqf/form.hpp"

#include <cassert>
#include <ostream>
#include <sstream>

namespace tqf {

TernaryForm TernaryForm::from_gram(const std::array<ZZ, 9>& m)
{
    TernaryForm f;
    f.g = m;
    assert(f.at(0, 1) == f.at(1, 0) && f.at(0, 2) == f.at(2, 0) && f.at(1, 2) == f.at(2, 1));
    return f;
}

ZZ TernaryForm::determinant() const
{
    const ZZ& a = at(0, 0);
    const ZZ& b = at(1, 1);
    const ZZ& c = at(2, 2);
    const ZZ& d = at(0, 1);
    const ZZ& e = at(0, 2);
    const ZZ& f = at(1, 2);
    return a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e);
}

ZZ TernaryForm::content() const
{
    ZZ c(0);
    for (const ZZ& x : g)
        c = gcd(c, x);
    if (c == 0)
        throw std::invalid_argument("content: zero form");
    return c;
}

ZZ TernaryForm::evaluate(const ZZ& x, const ZZ& y, const ZZ& z) const
{
    return at(0, 0) * x * x + at(1, 1) * y * y + at(2, 2) * z * z + 2 * (at(0, 1) * x * y + at(0, 2) * x * z + at(1, 2) * y * z);
}

TernaryForm TernaryForm::negated() const
{
    TernaryForm f;
    for (int i = 0; i < 9; i++)
        f.g[i] = -g[i];
    return f;
}

TernaryForm TernaryForm::scaled(const ZZ& c) const
{
    TernaryForm f;
    for (int i = 0; i < 9; i++)
        f.g[i] = c * g[i];
    return f;
}

std::string TernaryForm::to_line() const
{
    std::ostringstream os;
    os << at(0, 0) << ' ' << at(1, 1) << ' ' << at(2, 2) << ' '
       << at(0, 1) << ' ' << at(0, 2) << ' ' << at(1, 2);
    return os.str();
}

TernaryForm TernaryForm::parse_line(const std::string& line)
{
    std::istringstream is(line);
    std::string t[6];
    for (auto& s : t)
        if (!(is >> s))
            throw std::invalid_argument("form line: expected six integers");
    return TernaryForm(ZZ(t[0]), ZZ(t[1]), ZZ(t[2]), ZZ(t[3]), ZZ(t[4]), ZZ(t[5]));
}

std::ostream& operator<<(std::ostream& os, const TernaryForm& f)
{
    return os << f.to_line();
}

UnimodularMap::UnimodularMap(const std::array<ZZ, 9>& a) : m(a)
{
    ZZ d = det();
    assert(d == 1 || d == -1);
}

ZZ UnimodularMap::det() const
{
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
         - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
         + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

UnimodularMap UnimodularMap::mul(const UnimodularMap& o) const
{
    std::array<ZZ, 9> r;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            ZZ s(0);
            for (int k = 0; k < 3; k++)
                s += at(i, k) * o.at(k, j);
            r[3 * i + j] = s;
        }
    UnimodularMap u;
    u.m = r;
    return u;
}

TernaryForm transform(const TernaryForm& f, const UnimodularMap& u)
{
    std::array<ZZ, 9> t; // f * u
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            ZZ s(0);
            for (int k = 0; k < 3; k++)
                s += f.at(i, k) * u.at(k, j);
            t[3 * i + j] = s;
        }
    TernaryForm r;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            ZZ s(0);
            for (int k = 0; k < 3; k++)
                s += u.at(k, i) * t[3 * k + j];
            r.at(i, j) = s;
        }
    return r;
}

namespace {

// leading principal minors D1, D2 (D3 = det)
void leading_minors(const TernaryForm& f, ZZ& d1, ZZ& d2)
{
    d1 = f.at(0, 0);
    d2 = f.at(0, 0) * f.at(1, 1) - f.at(0, 1) * f.at(0, 1);
}

// deterministic set of candidate basis changes: permutations, then shears
std::vector<UnimodularMap> basis_candidates()
{
    std::vector<UnimodularMap> cs;
    int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perms) {
        std::array<ZZ, 9> m;
        m.fill(ZZ(0));
        for (int i = 0; i < 3; i++)
            m[3 * p[i] + i] = 1;
        cs.emplace_back(m);
    }
    size_t nperm = cs.size();
    for (int s = 1; s <= 2; s++)
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) {
                if (i == j)
                    continue;
                std::array<ZZ, 9> sh = {ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1)};
                sh[3 * i + j] = s;
                UnimodularMap shear(sh);
                for (size_t k = 0; k < nperm; k++)
                    cs.push_back(cs[k].mul(shear));
            }
    return cs;
}

} // namespace

TernaryForm fix_leading_minors(const TernaryForm& f)
{
    ZZ d1, d2;
    leading_minors(f, d1, d2);
    if (d1 != 0 && d2 != 0)
        return f;
    static const std::vector<UnimodularMap> cands = basis_candidates();
    for (const auto& u : cands) {
        TernaryForm t = transform(f, u);
        leading_minors(t, d1, d2);
        if (d1 != 0 && d2 != 0)
            return t;
    }
    // double shears as a last resort
    for (const auto& u : cands)
        for (const auto& v : cands) {
            TernaryForm t = transform(transform(f, u), v);
            leading_minors(t, d1, d2);
            if (d1 != 0 && d2 != 0)
                return t;
        }
    throw std::runtime_error("fix_leading_minors: no basis found (singular form?)");
}

Signature signature(const TernaryForm& f)
{
    ZZ det = f.determinant();
    Signature s;
    if (det != 0) {
        TernaryForm t = fix_leading_minors(f);
        ZZ d0(1), d1, d2;
        leading_minors(t, d1, d2);
        ZZ ms[4] = {d0, d1, d2, det};
        for (int i = 1; i <= 3; i++) {
            if (sgn(ms[i - 1]) == sgn(ms[i]))
                s.pos++;
            else
                s.neg++;
        }
        return s;
    }
    // singular: rank from minors
    bool any = false;
    for (const ZZ& x : f.g)
        if (x != 0)
            any = true;
    if (!any) {
        s.zero = 3;
        return s;
    }
    // rank 1 or 2; diagonalize the nonzero part over Q by brute minor scan
    ZZ best2(0);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            if (i == j)
                continue;
            ZZ m2 = f.at(i, i) * f.at(j, j) - f.at(i, j) * f.at(j, i);
            if (m2 != 0)
                best2 = m2;
        }
    if (best2 == 0) {
        // rank 1: sign of any nonzero f(e_i) or f(e_i + e_j)
        s.zero = 2;
        ZZ v(0);
        for (int i = 0; i < 3 && v == 0; i++)
            v = f.at(i, i);
        for (int i = 0; i < 3 && v == 0; i++)
            for (int j = i + 1; j < 3 && v == 0; j++)
                v = f.at(i, i) + 2 * f.at(i, j) + f.at(j, j);
        if (v > 0)
            s.pos = 1;
        else
            s.neg = 1;
        return s;
    }
    s.zero = 1;
    // rank 2: there is a basis pair (i,j) with nonzero 2x2 minor
    for (int i = 0; i < 3; i++)
        for (int j = i + 1; j < 3; j++) {
            ZZ a = f.at(i, i), b = f.at(j, j), c = f.at(i, j);
            ZZ m2 = a * b - c * c;
            if (m2 == 0)
                continue;
            if (m2 < 0) {
                s.pos = 1;
                s.neg = 1;
            } else if (a > 0 || (a == 0 && b > 0)) {
                s.pos = 2;
            } else {
                s.neg = 2;
            }
            return s;
        }
    throw std::logic_error("signature: unreachable");
}

bool sign_normalize(TernaryForm& f)
{
    if (f.determinant() < 0) {
        f = f.negated();
        return true;
    }
    return false;
}

} // namespace tqf
