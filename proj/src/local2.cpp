#include "tqf/local2.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <climits>
#include <cstring>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace tqf {

namespace {

typedef std::array<QQ, 9> QMat;

long qval2(const QQ& x)
{
    assert(x != 0);
    return valuation(x.get_num(), ZZ(2)) - valuation(x.get_den(), ZZ(2));
}

// odd/odd rational mod 8
int qunit8(const QQ& x, long v)
{
    ZZ num = x.get_num(), den = x.get_den();
    long vn = valuation(num, ZZ(2));
    long vd = valuation(den, ZZ(2));
    assert(vn - vd == v);
    ZZ n = num >> (unsigned long)vn;
    ZZ d = den >> (unsigned long)vd;
    long ni = to_long(mod(n, ZZ(8)));
    long di = to_long(mod(d, ZZ(8)));
    static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
    return (int)((ni * inv8[di]) % 8);
}

} // namespace

std::vector<int> Jordan2::even_scales() const
{
    std::vector<int> s;
    for (auto& b : blocks)
        for (size_t i = 0; i < b.vkinds.size(); i++)
            s.push_back(b.scale);
    return s;
}

Jordan2 jordan_split_2(const TernaryForm& f)
{
    if (f.determinant() == 0)
        throw std::invalid_argument("jordan_split_2: singular form");
    QMat m;
    for (int i = 0; i < 9; i++)
        m[i] = QQ(f.g[i]);
    std::vector<int> idx = {0, 1, 2};
    std::vector<std::pair<int, int>> units;  // (scale, unit mod 8)
    std::vector<std::pair<int, int>> vblks;  // (scale, kind)

    while (!idx.empty()) {
        long best = LONG_MAX;
        int bi = -1, bj = -1;
        for (int i : idx)
            for (int j : idx) {
                const QQ& x = m[3 * i + j];
                if (x == 0)
                    continue;
                long v = qval2(x);
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        assert(bi >= 0);
        if (bi == bj) {
            QQ piv = m[3 * bi + bi];
            for (int k : idx) {
                if (k == bi)
                    continue;
                QQ c = m[3 * bi + k] / piv;
                if (c == 0)
                    continue;
                for (int l = 0; l < 3; l++)
                    m[3 * k + l] -= c * m[3 * bi + l];
                for (int l = 0; l < 3; l++)
                    m[3 * l + k] -= c * m[3 * l + bi];
            }
            units.push_back({(int)best, qunit8(piv, best)});
            idx.erase(std::find(idx.begin(), idx.end(), bi));
        } else {
            // even 2x2 block on {bi, bj}
            QQ A = m[3 * bi + bi], B = m[3 * bi + bj], C = m[3 * bj + bj];
            QQ det = A * C - B * B;
            long dv = qval2(det);
            assert(dv == 2 * best);
            int du = qunit8(det, dv);
            assert(du == 3 || du == 7);
            vblks.push_back({(int)best, du == 7 ? 1 : 2});
            int k = -1;
            for (int t : idx)
                if (t != bi && t != bj)
                    k = t;
            if (k >= 0) {
                // clear row/col k against the block
                QQ x = m[3 * k + bi], y = m[3 * k + bj];
                QQ ci = (C * x - B * y) / det;
                QQ cj = (A * y - B * x) / det;
                // subtract ci * row(bi) + cj * row(bj)
                for (int l = 0; l < 3; l++)
                    m[3 * k + l] -= ci * m[3 * bi + l] + cj * m[3 * bj + l];
                for (int l = 0; l < 3; l++)
                    m[3 * l + k] -= ci * m[3 * l + bi] + cj * m[3 * l + bj];
            }
            idx.erase(std::find(idx.begin(), idx.end(), bi));
            idx.erase(std::find(idx.begin(), idx.end(), bj));
        }
    }

    Jordan2 j;
    std::map<int, Jordan2Block> by_scale;
    for (auto& [s, u] : units) {
        by_scale[s].scale = s;
        by_scale[s].units.push_back(u);
    }
    for (auto& [s, k] : vblks) {
        by_scale[s].scale = s;
        by_scale[s].vkinds.push_back(k);
    }
    for (auto& [s, b] : by_scale)
        j.blocks.push_back(b);

    // profile: scales s1 <= s2 (<= s3) weighted by dims give u, v with
    // v_2(det) = 2u + v matching the a + 2^u b + 2^{u+v} c normal shapes
    std::vector<int> scales;
    for (auto& b : j.blocks)
        for (int t = 0; t < b.dim(); t++)
            scales.push_back(b.scale);
    std::sort(scales.begin(), scales.end());
    assert(scales.size() == 3 && scales[0] == 0);
    j.u = scales[1];
    j.v = scales[2] - scales[1];
    return j;
}

namespace {

// ---- class database ----------------------------------------------------

// raw table rows; q stands for 2^u, r for 2^(u+v)
struct RawRow {
    const char* sym;
    const char* mass64; // 64 m_2 / 2^(u+v)
    char iso;
};

// cells indexed by category 0,1,2 exact and 3 = odd >= 3, 4 = even >= 4
const std::vector<RawRow>& cell_rows(int ucat, int vcat)
{
    static const std::vector<RawRow> c00 = {
        {"1_-1^3", "16", 'Y'},
        {"1_3^3", "16/3", 'N'},
    };
    static const std::vector<RawRow> c01 = {
        {"[1^2 2^1]_-1", "8", 'Y'},
        {"[1^2 2^1]_3", "8", 'N'},
        {"1_II^2 2_-1^1", "16/3", 'Y'},
    };
    static const std::vector<RawRow> c02 = {
        {"1_0^2 4_-1^1", "8", 'Y'},
        {"1_-2^2 4_1^1", "4", 'Y'},
        {"1_II^2 4_-1^1", "4", 'Y'},
        {"1_2^2 4_1^1", "4", 'N'},
        {"1_II^-2 4_3^-1", "4/3", 'N'},
    };
    static const std::vector<RawRow> c0o = {
        {"1_0^2 r_-1^1", "4", 'Y'},
        {"1_II^2 r_-1^1", "4", 'Y'},
        {"1_4^-2 r_3^-1", "4", 'N'},
        {"1_-2^-2 r_-3^-1", "2", 'Y'},
        {"1_-2^2 r_1^1", "2", 'Y'},
        {"1_2^2 r_1^1", "2", 'N'},
        {"1_2^-2 r_-3^-1", "2", 'N'},
        {"1_II^-2 r_3^-1", "4/3", 'Y'},
    };
    static const std::vector<RawRow> c0e = {
        {"1_0^2 r_-1^1", "4", 'Y'},
        {"1_II^2 r_-1^1", "4", 'Y'},
        {"1_4^-2 r_3^-1", "4", 'Y'},
        {"1_-2^2 r_1^1", "2", 'Y'},
        {"1_2^-2 r_-3^-1", "2", 'Y'},
        {"1_2^2 r_1^1", "2", 'N'},
        {"1_-2^-2 r_-3^-1", "2", 'N'},
        {"1_II^-2 r_3^-1", "4/3", 'N'},
    };
    static const std::vector<RawRow> c10 = {
        {"[1^1 2^2]_-1", "8", 'Y'},
        {"[1^1 2^2]_3", "8", 'N'},
        {"1_-1^1 2_II^2", "16/3", 'Y'},
    };
    static const std::vector<RawRow> c11 = {
        {"[1^1 2^1 4^1]_-1", "8", 'Y'},
        {"[1^1 2^1 4^1]_3", "8", 'N'},
    };
    static const std::vector<RawRow> c12 = {
        {"[1^1 2^1]_0 8_-1^1", "4", 'Y'},
        {"[1^1 2^1]_-2 8_1^1", "4", 'Y'},
        {"[1^-1 2^-1]_0 8_-1^1", "4", 'N'},
        {"[1^1 2^1]_2 8_1^1", "4", 'N'},
    };
    static const std::vector<RawRow> c1o = {
        {"[1^1 2^1]_0 r_-1^1", "2", 'Y'},
        {"[1^1 2^-1]_4 r_3^-1", "2", 'Y'},
        {"[1^1 2^-1]_2 r_-3^-1", "2", 'Y'},
        {"[1^1 2^1]_-2 r_1^1", "2", 'Y'},
        {"[1^-1 2^-1]_0 r_-1^1", "2", 'N'},
        {"[1^-1 2^1]_4 r_3^-1", "2", 'N'},
        {"[1^1 2^-1]_-2 r_-3^-1", "2", 'N'},
        {"[1^1 2^1]_2 r_1^1", "2", 'N'},
    };
    static const std::vector<RawRow> c1e = {
        {"[1^1 2^1]_0 r_-1^1", "2", 'Y'},
        {"[1^1 2^1]_-2 r_1^1", "2", 'Y'},
        {"[1^1 2^-1]_4 r_3^-1", "2", 'Y'},
        {"[1^1 2^-1]_-2 r_-3^-1", "2", 'Y'},
        {"[1^-1 2^-1]_0 r_-1^1", "2", 'N'},
        {"[1^1 2^1]_2 r_1^1", "2", 'N'},
        {"[1^-1 2^1]_4 r_3^-1", "2", 'N'},
        {"[1^1 2^-1]_2 r_-3^-1", "2", 'N'},
    };
    static const std::vector<RawRow> c20 = {
        {"1_-1^1 4_0^2", "8", 'Y'},
        {"1_1^1 4_-2^2", "4", 'Y'},
        {"1_-1^1 4_II^2", "4", 'Y'},
        {"1_1^1 4_2^2", "4", 'N'},
        {"1_3^-1 4_II^-2", "4/3", 'N'},
    };
    static const std::vector<RawRow> c21 = {
        {"1_-1^1 [4^1 8^1]_0", "4", 'Y'},
        {"1_1^1 [4^1 8^1]_-2", "4", 'Y'},
        {"1_-1^1 [4^-1 8^-1]_0", "4", 'N'},
        {"1_1^1 [4^1 8^1]_2", "4", 'N'},
    };
    static const std::vector<RawRow> c22 = {
        {"1_1^1 4_-1^1 16_-1^1", "4", 'Y'},
        {"1_-1^1 4_1^1 16_-1^1", "4", 'Y'},
        {"1_-1^1 4_-1^1 16_1^1", "4", 'Y'},
        {"1_1^1 4_1^1 16_1^1", "4", 'N'},
    };
    static const std::vector<RawRow> c2o = {
        {"1_-1^1 4_-1^1 r_1^1", "2", 'Y'},
        {"1_-1^1 4_1^1 r_-1^1", "2", 'Y'},
        {"1_1^1 4_-1^1 r_-1^1", "2", 'Y'},
        {"1_-3^-1 4_1^1 r_-3^-1", "2", 'Y'},
        {"1_1^1 4_1^1 r_1^1", "2", 'N'},
        {"1_3^-1 4_1^1 r_3^-1", "2", 'N'},
        {"1_3^-1 4_-1^1 r_-3^-1", "2", 'N'},
        {"1_-3^-1 4_-1^1 r_3^-1", "2", 'N'},
    };
    static const std::vector<RawRow> c2e = {
        {"1_-1^1 4_-1^1 r_1^1", "2", 'Y'},
        {"1_3^-1 4_-1^1 r_-3^-1", "2", 'Y'},
        {"1_-1^1 4_1^1 r_-1^1", "2", 'Y'},
        {"1_1^1 4_-1^1 r_-1^1", "2", 'Y'},
        {"1_3^-1 4_1^1 r_3^-1", "2", 'Y'},
        {"1_-3^-1 4_-1^1 r_3^-1", "2", 'Y'},
        {"1_1^1 4_1^1 r_1^1", "2", 'N'},
        {"1_-3^-1 4_1^1 r_-3^-1", "2", 'N'},
    };
    static const std::vector<RawRow> co0 = {
        {"1_-1^1 q_0^2", "4", 'Y'},
        {"1_-1^1 q_II^2", "4", 'Y'},
        {"1_3^-1 q_4^-2", "4", 'N'},
        {"1_1^1 q_-2^2", "2", 'Y'},
        {"1_-3^-1 q_-2^-2", "2", 'Y'},
        {"1_1^1 q_2^2", "2", 'N'},
        {"1_-3^-1 q_2^-2", "2", 'N'},
        {"1_3^-1 q_II^-2", "4/3", 'Y'},
    };
    static const std::vector<RawRow> co1 = {
        {"1_-1^1 [q^1 r^1]_0", "2", 'Y'},
        {"1_3^-1 [q^1 r^-1]_4", "2", 'Y'},
        {"1_-3^-1 [q^-1 r^1]_-2", "2", 'Y'},
        {"1_1^1 [q^1 r^1]_-2", "2", 'Y'},
        {"1_-1^1 [q^-1 r^-1]_0", "2", 'N'},
        {"1_3^-1 [q^-1 r^1]_4", "2", 'N'},
        {"1_1^1 [q^1 r^1]_2", "2", 'N'},
        {"1_-3^-1 [q^-1 r^1]_2", "2", 'N'},
    };
    static const std::vector<RawRow> co2 = {
        {"1_-1^1 q_-1^1 r_1^1", "2", 'Y'},
        {"1_-1^1 q_1^1 r_-1^1", "2", 'Y'},
        {"1_1^1 q_-1^1 r_-1^1", "2", 'Y'},
        {"1_-3^-1 q_1^1 r_-3^-1", "2", 'Y'},
        {"1_1^1 q_1^1 r_1^1", "2", 'N'},
        {"1_3^-1 q_-1^1 r_-3^-1", "2", 'N'},
        {"1_3^-1 q_1^1 r_3^-1", "2", 'N'},
        {"1_-3^-1 q_-1^1 r_3^-1", "2", 'N'},
    };
    static const std::vector<RawRow> ce0 = {
        {"1_-1^1 q_0^2", "4", 'Y'},
        {"1_3^-1 q_4^-2", "4", 'Y'},
        {"1_-1^1 q_II^2", "4", 'Y'},
        {"1_1^1 q_-2^2", "2", 'Y'},
        {"1_-3^-1 q_2^-2", "2", 'Y'},
        {"1_1^1 q_2^2", "2", 'N'},
        {"1_-3^-1 q_-2^-2", "2", 'N'},
        {"1_3^-1 q_II^-2", "4/3", 'N'},
    };
    static const std::vector<RawRow> ce1 = {
        {"1_-1^1 [q^1 r^1]_0", "2", 'Y'},
        {"1_3^-1 [q^-1 r^1]_4", "2", 'Y'},
        {"1_1^1 [q^1 r^1]_-2", "2", 'Y'},
        {"1_-3^-1 [q^-1 r^1]_2", "2", 'Y'},
        {"1_-1^1 [q^-1 r^-1]_0", "2", 'N'},
        {"1_3^-1 [q^1 r^-1]_4", "2", 'N'},
        {"1_1^1 [q^1 r^1]_2", "2", 'N'},
        {"1_-3^-1 [q^-1 r^1]_-2", "2", 'N'},
    };
    static const std::vector<RawRow> ce2 = {
        {"1_-1^1 q_-1^1 r_1^1", "2", 'Y'},
        {"1_3^-1 q_-1^1 r_-3^-1", "2", 'Y'},
        {"1_-1^1 q_1^1 r_-1^1", "2", 'Y'},
        {"1_1^1 q_-1^1 r_-1^1", "2", 'Y'},
        {"1_3^-1 q_1^1 r_3^-1", "2", 'Y'},
        {"1_-3^-1 q_-1^1 r_3^-1", "2", 'Y'},
        {"1_1^1 q_1^1 r_1^1", "2", 'N'},
        {"1_-3^-1 q_1^1 r_-3^-1", "2", 'N'},
    };
    static const std::vector<RawRow> none;

    if (ucat == 0) {
        if (vcat == 0) return c00;
        if (vcat == 1) return c01;
        if (vcat == 2) return c02;
        return vcat == 3 ? c0o : c0e;
    }
    if (ucat == 1) {
        if (vcat == 0) return c10;
        if (vcat == 1) return c11;
        if (vcat == 2) return c12;
        return vcat == 3 ? c1o : c1e;
    }
    if (ucat == 2) {
        if (vcat == 0) return c20;
        if (vcat == 1) return c21;
        if (vcat == 2) return c22;
        return vcat == 3 ? c2o : c2e;
    }
    if (ucat == 3) {
        if (vcat == 0) return co0;
        if (vcat == 1) return co1;
        if (vcat == 2) return co2;
        return none; // generated programmatically
    }
    if (vcat == 0) return ce0;
    if (vcat == 1) return ce1;
    if (vcat == 2) return ce2;
    return none; // generated
}

int ucategory(int u) { return u <= 2 ? u : (u % 2 ? 3 : 4); }

// ---- symbol parsing and realization ------------------------------------

struct Constituent {
    int scale;   // exponent
    int dim;     // 1 or 2 (3 only for the unimodular cells)
    bool even;   // type II
    int sign;    // +1 / -1
    int oddity;  // mod 8; compartment members carry -1 here
    int comp;    // compartment id or -1
};

struct ParsedRow {
    std::vector<Constituent> cs;
    int comp_total = -1; // total oddity of the (single) compartment, mod 8
};

int scale_exp(const std::string& s, int u, int v)
{
    if (s == "1") return 0;
    if (s == "2") return 1;
    if (s == "4") return 2;
    if (s == "8") return 3;
    if (s == "16") return 4;
    if (s == "q") return u;
    if (s == "r") return u + v;
    throw std::logic_error("bad scale token " + s);
}

ParsedRow parse_symbol(const std::string& sym, int u, int v)
{
    ParsedRow row;
    size_t i = 0;
    auto read_scale = [&]() {
        size_t j = i;
        while (j < sym.size() && (isdigit(sym[j]) || sym[j] == 'q' || sym[j] == 'r'))
            j++;
        std::string s = sym.substr(i, j - i);
        i = j;
        return scale_exp(s, u, v);
    };
    auto read_int = [&]() {
        size_t j = i;
        if (sym[j] == '-')
            j++;
        while (j < sym.size() && isdigit(sym[j]))
            j++;
        int x = std::stoi(sym.substr(i, j - i));
        i = j;
        return x;
    };
    while (i < sym.size()) {
        if (sym[i] == ' ') {
            i++;
            continue;
        }
        if (sym[i] == '[') {
            i++;
            int comp = 0;
            while (sym[i] != ']') {
                if (sym[i] == ' ') {
                    i++;
                    continue;
                }
                Constituent c;
                c.scale = read_scale();
                assert(sym[i] == '^');
                i++;
                int d = read_int();
                c.dim = d < 0 ? -d : d;
                c.sign = d < 0 ? -1 : 1;
                c.even = false;
                c.oddity = -1;
                c.comp = comp;
                row.cs.push_back(c);
            }
            i++; // ]
            assert(sym[i] == '_');
            i++;
            row.comp_total = ((read_int() % 8) + 8) % 8;
        } else {
            Constituent c;
            c.scale = read_scale();
            assert(sym[i] == '_');
            i++;
            if (sym.compare(i, 2, "II") == 0) {
                i += 2;
                c.even = true;
                c.oddity = 0;
                assert(sym[i] == '^');
                i++;
                int d = read_int();
                c.dim = d < 0 ? -d : d;
                c.sign = d < 0 ? -1 : 1;
            } else {
                c.even = false;
                c.oddity = ((read_int() % 8) + 8) % 8;
                assert(sym[i] == '^');
                i++;
                int d = read_int();
                c.dim = d < 0 ? -d : d;
                c.sign = d < 0 ? -1 : 1;
            }
            c.comp = -1;
            row.cs.push_back(c);
        }
    }
    return row;
}

// determinant unit (mod 8) of a type I constituent from (sign, oddity)
int det_of(int dim, int sign, int oddity)
{
    if (dim == 1)
        return oddity;
    if (dim == 2) {
        if (sign == 1)
            return oddity == 0 ? 7 : 1;
        return oddity == 4 ? 3 : 5;
    }
    // dim 3
    if (sign == 1)
        return (oddity == 3 || oddity == 7) ? 1 : 7;
    return (oddity == 5 || oddity == 1) ? 3 : 5;
}

// canonical diagonal entries realizing (dim, sign, oddity)
std::vector<int> diag_of(int dim, int sign, int oddity)
{
    if (dim == 1)
        return {oddity};
    if (dim == 2) {
        static const std::map<std::pair<int, int>, std::vector<int>> tab = {
            {{1, 0}, {1, 7}}, {{1, 2}, {1, 1}}, {{1, 6}, {3, 3}},
            {{-1, 4}, {1, 3}}, {{-1, 2}, {3, 7}}, {{-1, 6}, {1, 5}},
        };
        auto it = tab.find({sign, oddity});
        assert(it != tab.end());
        return it->second;
    }
    static const std::map<std::pair<int, int>, std::vector<int>> tab3 = {
        {{1, 3}, {1, 1, 1}}, {{1, 7}, {1, 3, 3}}, {{1, 1}, {1, 1, 7}}, {{1, 5}, {3, 3, 7}},
        {{-1, 5}, {1, 1, 3}}, {{-1, 1}, {3, 3, 3}}, {{-1, 7}, {1, 1, 5}}, {{-1, 3}, {1, 3, 7}},
    };
    auto it = tab3.find({sign, oddity});
    assert(it != tab3.end());
    return it->second;
}

// all (oddity, diag) options of a type I constituent with the given sign
std::vector<std::pair<int, std::vector<int>>> options_of(int dim, int sign)
{
    std::vector<std::pair<int, std::vector<int>>> os;
    std::vector<int> odds;
    if (dim == 1)
        odds = sign == 1 ? std::vector<int>{1, 7} : std::vector<int>{3, 5};
    else if (dim == 2)
        odds = sign == 1 ? std::vector<int>{0, 2, 6} : std::vector<int>{4, 2, 6};
    else
        odds = sign == 1 ? std::vector<int>{3, 7, 1, 5} : std::vector<int>{5, 1, 7, 3};
    for (int t : odds)
        os.push_back({t, diag_of(dim, sign, t)});
    return os;
}

TernaryForm assemble(const std::vector<std::pair<int, std::vector<int>>>& entries,
                     const std::vector<std::pair<int, int>>& vblocks)
{
    // entries: (scale, diagonal units); vblocks: (scale, kind)
    std::array<ZZ, 9> m;
    m.fill(ZZ(0));
    int k = 0;
    for (auto& [s, us] : entries)
        for (int u : us) {
            m[3 * k + k] = ZZ(u) << (unsigned)s;
            k++;
        }
    for (auto& [s, kind] : vblocks) {
        ZZ w = ZZ(1) << (unsigned)s;
        if (kind == 1) {
            m[3 * k + (k + 1)] = m[3 * (k + 1) + k] = w;
        } else {
            m[3 * k + k] = 2 * w;
            m[3 * (k + 1) + (k + 1)] = 2 * w;
            m[3 * k + (k + 1)] = m[3 * (k + 1) + k] = w;
        }
        k += 2;
    }
    assert(k == 3);
    return TernaryForm::from_gram(m);
}

// realize a parsed row as an integral representative of total unit class d0 = 1
TernaryForm realize(const ParsedRow& row)
{
    // isolated constituents are fixed; compartment members are searched
    std::vector<std::pair<int, std::vector<int>>> fixed;
    std::vector<std::pair<int, int>> vbs;
    int det_fixed = 1;
    std::vector<size_t> comp_idx;
    for (size_t i = 0; i < row.cs.size(); i++) {
        const Constituent& c = row.cs[i];
        if (c.comp >= 0) {
            comp_idx.push_back(i);
            continue;
        }
        if (c.even) {
            vbs.push_back({c.scale, c.sign == 1 ? 1 : 2});
            det_fixed = det_fixed * (c.sign == 1 ? 7 : 3) % 8;
        } else {
            fixed.push_back({c.scale, diag_of(c.dim, c.sign, c.oddity)});
            det_fixed = det_fixed * det_of(c.dim, c.sign, c.oddity) % 8;
        }
    }
    if (comp_idx.empty()) {
        std::sort(fixed.begin(), fixed.end(),
                  [](auto& a, auto& b) { return a.first < b.first; });
        return assemble(fixed, vbs);
    }
    // small search over compartment member realizations
    static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
    int need_det = inv8[det_fixed]; // compartment determinant requirement
    std::vector<std::vector<std::pair<int, std::vector<int>>>> opts;
    for (size_t i : comp_idx)
        opts.push_back(options_of(row.cs[i].dim, row.cs[i].sign));
    std::vector<size_t> pick(opts.size(), 0);
    for (;;) {
        int tot = 0, det = 1;
        for (size_t k = 0; k < opts.size(); k++) {
            const Constituent& c = row.cs[comp_idx[k]];
            tot = (tot + opts[k][pick[k]].first) % 8;
            det = det * det_of(c.dim, c.sign, opts[k][pick[k]].first) % 8;
        }
        if (tot == row.comp_total && det == need_det) {
            auto entries = fixed;
            for (size_t k = 0; k < opts.size(); k++)
                entries.push_back({row.cs[comp_idx[k]].scale, opts[k][pick[k]].second});
            std::sort(entries.begin(), entries.end(),
                      [](auto& a, auto& b) { return a.first < b.first; });
            return assemble(entries, vbs);
        }
        size_t k = 0;
        while (k < opts.size() && ++pick[k] == opts[k].size()) {
            pick[k] = 0;
            k++;
        }
        if (k == opts.size())
            throw std::logic_error("realize: no unit assignment for symbol");
    }
}

QQ parse_mass(const char* s)
{
    std::string t(s);
    auto pos = t.find('/');
    if (pos == std::string::npos)
        return QQ(ZZ(t));
    return QQ(ZZ(t.substr(0, pos))) / QQ(ZZ(t.substr(pos + 1)));
}

std::string scale_token(int e, int u, int v)
{
    if (e == u && u >= 3)
        return "q";
    if (e == u + v && (u >= 3 || u + v >= 5))
        return "r";
    return std::to_string(1L << e);
}

// subscript рrint convention of the tables: residues in -3..4
int pretty_odd(int t)
{
    int x = ((t % 8) + 8) % 8;
    return x > 4 ? x - 8 : x;
}

std::string render_generated(int u, int v, int a, int b, int c)
{
    std::ostringstream os;
    os << "1_" << pretty_odd(a) << "^" << (a == 1 || a == 7 ? 1 : -1) << ' '
       << scale_token(u, u, v) << "_" << pretty_odd(b) << "^" << (b == 1 || b == 7 ? 1 : -1) << ' '
       << scale_token(u + v, u, v) << "_" << pretty_odd(c) << "^" << (c == 1 || c == 7 ? 1 : -1);
    return os.str();
}

// derived symbol for a d0-scaled class: re-normalize the scaled representative
std::string render_scaled(const std::string& base, int d0)
{
    return base + " *" + std::to_string(d0);
}

// ---- orbit canonicalization of Jordan block data ------------------------
//
// A ternary Jordan splitting is encoded as blocks (scale, dim, V-kind or
// (det mod 8, oddity mod 8)). Z_2-equivalence of such splittings is generated
// by: normalization inside a block; the completing-the-square move between
// diagonal entries a, b at scale gap g in {1, 2},
//   <a> + 2^g<b>  ~  <a + 2^g b> + 2^g<a b (a + 2^g b)^{-1}>,
// which is trivial mod 8 for g >= 3; and the V-block flip at gap 1, which
// trades V1 <-> V2 against scaling an odd neighbor entry by 5. Orbits are
// tiny, so classes are identified by the lexicographically least orbit
// element. Completeness of the move set is checked against the tabulated
// class counts when the database is built.

struct JBlock {
    int scale;
    int dim;
    int vkind;  // 0 = odd block, 1 = V1, 2 = V2
    int det8;   // unit determinant mod 8 (V blocks: 7 or 3)
    int odd8;   // oddity mod 8 (0 for V blocks)

    bool operator<(const JBlock& o) const
    {
        return std::tie(scale, dim, vkind, det8, odd8) < std::tie(o.scale, o.dim, o.vkind, o.det8, o.odd8);
    }
    bool operator==(const JBlock& o) const
    {
        return scale == o.scale && dim == o.dim && vkind == o.vkind && det8 == o.det8 && odd8 == o.odd8;
    }
};

typedef std::vector<JBlock> JState;

// all diagonal unit tuples realizing an odd block of the given dimension
std::vector<std::vector<int>> block_realizations(int dim, int det8, int odd8)
{
    std::vector<std::vector<int>> out;
    static const int units[4] = {1, 3, 5, 7};
    if (dim == 1) {
        out.push_back({odd8});
        return out;
    }
    if (dim == 2) {
        for (int a : units)
            for (int b : units)
                if (a * b % 8 == det8 && (a + b) % 8 == odd8)
                    out.push_back({a, b});
        return out;
    }
    for (int a : units)
        for (int b : units)
            for (int c : units)
                if (a * b % 8 * c % 8 == det8 && (a + b + c) % 8 == odd8)
                    out.push_back({a, b, c});
    return out;
}

JState normalize_state(std::vector<std::pair<int, std::vector<int>>> odd_groups,
                       std::vector<std::pair<int, int>> vblocks)
{
    // merge odd groups sharing a scale
    std::map<int, std::pair<int, std::pair<int, int>>> odd; // scale -> (dim, (det, odd))
    for (auto& [s, us] : odd_groups) {
        if (us.empty())
            continue;
        auto& [dim, dto] = odd[s];
        for (int u : us) {
            dim++;
            dto.first = (dto.first == 0 ? u : dto.first * u % 8);
            dto.second = (dto.second + u) % 8;
        }
    }
    // a V block at a scale carrying an odd entry is absorbed into the odd
    // group: <a> + V_1 = <a, a, -a> and <a> + V_2 = <a', b', c'> multiply the
    // group determinant by det(V) and leave the oddity unchanged
    JState st;
    for (auto& [s, k] : vblocks) {
        auto it = odd.find(s);
        if (it != odd.end()) {
            it->second.first += 2;
            auto& dto = it->second.second;
            dto.first = dto.first * (k == 1 ? 7 : 3) % 8;
            continue;
        }
        JBlock b;
        b.scale = s;
        b.dim = 2;
        b.vkind = k;
        b.det8 = k == 1 ? 7 : 3;
        b.odd8 = 0;
        st.push_back(b);
    }
    for (auto& [s, ddo] : odd) {
        JBlock b;
        b.scale = s;
        b.dim = ddo.first;
        b.vkind = 0;
        b.det8 = ddo.second.first;
        b.odd8 = ddo.second.second;
        st.push_back(b);
    }
    std::sort(st.begin(), st.end());
    return st;
}

std::vector<JState> state_neighbors(const JState& st)
{
    std::vector<JState> out;
    static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
    int n = (int)st.size();
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            if (i == j)
                continue;
            int g = st[j].scale - st[i].scale;
            if (g < 1 || g > 2)
                continue;
            if (st[i].vkind == 0 && st[j].vkind == 0) {
                // completing-the-square between a low entry a and high entry b
                auto ri = block_realizations(st[i].dim, st[i].det8, st[i].odd8);
                auto rj = block_realizations(st[j].dim, st[j].det8, st[j].odd8);
                for (auto& ui : ri)
                    for (auto& uj : rj) {
                        int a = ui.back(), b = uj.front();
                        int a2 = (a + (1 << g) * b) % 8;
                        int b2 = a * b % 8 * inv8[a2] % 8;
                        std::vector<std::pair<int, std::vector<int>>> groups;
                        std::vector<int> vi = ui, vj = uj;
                        vi.back() = a2;
                        vj.front() = b2;
                        for (int k = 0; k < n; k++) {
                            if (st[k].vkind)
                                continue;
                            if (k == i)
                                groups.push_back({st[k].scale, vi});
                            else if (k == j)
                                groups.push_back({st[k].scale, vj});
                            else {
                                auto r = block_realizations(st[k].dim, st[k].det8, st[k].odd8);
                                groups.push_back({st[k].scale, r.front()});
                            }
                        }
                        std::vector<std::pair<int, int>> vbs;
                        for (int k = 0; k < n; k++)
                            if (st[k].vkind)
                                vbs.push_back({st[k].scale, st[k].vkind});
                        out.push_back(normalize_state(groups, vbs));
                    }
            } else if (g == 1 && (st[i].vkind == 0) != (st[j].vkind == 0)) {
                // V flip against an odd neighbor entry scaled by 5
                int oi = st[i].vkind == 0 ? i : j;
                int vi = st[i].vkind == 0 ? j : i;
                auto ro = block_realizations(st[oi].dim, st[oi].det8, st[oi].odd8);
                for (auto& uo : ro) {
                    std::vector<int> w = uo;
                    // scale the entry nearest the V block
                    int pos = st[oi].scale < st[vi].scale ? (int)w.size() - 1 : 0;
                    w[pos] = w[pos] * 5 % 8;
                    std::vector<std::pair<int, std::vector<int>>> groups;
                    std::vector<std::pair<int, int>> vbs;
                    for (int k = 0; k < n; k++) {
                        if (k == vi) {
                            vbs.push_back({st[k].scale, 3 - st[k].vkind});
                        } else if (k == oi) {
                            groups.push_back({st[k].scale, w});
                        } else if (st[k].vkind) {
                            vbs.push_back({st[k].scale, st[k].vkind});
                        } else {
                            auto r = block_realizations(st[k].dim, st[k].det8, st[k].odd8);
                            groups.push_back({st[k].scale, r.front()});
                        }
                    }
                    out.push_back(normalize_state(groups, vbs));
                }
            }
        }
    return out;
}

std::mutex canon_mutex;
std::map<JState, JState> canon_cache;

JState canonical_state(const JState& start)
{
    {
        std::lock_guard<std::mutex> lk(canon_mutex);
        auto it = canon_cache.find(start);
        if (it != canon_cache.end())
            return it->second;
    }
    std::set<JState> seen;
    std::vector<JState> queue = {start};
    seen.insert(start);
    for (size_t h = 0; h < queue.size(); h++) {
        for (JState& nb : state_neighbors(queue[h]))
            if (seen.insert(nb).second)
                queue.push_back(nb);
        if (seen.size() > 4096)
            throw std::logic_error("canonical_state: orbit too large");
    }
    JState best = *seen.begin();
    std::lock_guard<std::mutex> lk(canon_mutex);
    for (const JState& s : seen)
        canon_cache[s] = best;
    return best;
}

JState state_of_jordan(const Jordan2& j)
{
    std::vector<std::pair<int, std::vector<int>>> groups;
    std::vector<std::pair<int, int>> vbs;
    for (auto& b : j.blocks) {
        if (!b.units.empty())
            groups.push_back({b.scale, b.units});
        for (int k : b.vkinds)
            vbs.push_back({b.scale, k});
    }
    return normalize_state(groups, vbs);
}

std::mutex db_mutex;
std::map<std::tuple<int, int, int>, std::vector<Local2Class>> db;
std::map<JState, const Local2Class*> canon_index;

std::vector<Local2Class> build_cell(int u, int v, int d0, std::vector<JState>& canon_keys)
{
    std::vector<Local2Class> out;
    int ucat = ucategory(u), vcat = ucategory(v);
    // Isotropy is always recomputed from the Hasse invariant of the
    // representative. The tabulated flags are cross-checked as a multiset per
    // cell: in the cells whose symbols mix bracket signs the table prints the
    // Y/N flags against the opposite symbol of each equal-mass pair, so a
    // row-by-row comparison is not reliable there.
    auto push = [&](const TernaryForm& rep_final, const QQ& mass64, const std::string& sym,
                    bool derived) {
        Local2Class c;
        c.u = u;
        c.v = v;
        c.d0 = d0;
        c.rep = rep_final;
        // m_2 = 2^(u+v) * mass64 / 64
        c.mass = mass64 * QQ(ZZ(1) << (unsigned)(u + v)) / 64;
        c.hasse = hasse_invariant(c.rep, ZZ(2));
        c.iso = c.hasse == 1;
        c.sym = derived ? render_scaled(sym, d0) : sym;
        c.derived_symbol = derived;
        for (auto& b : jordan_split_2(c.rep).blocks)
            for (size_t i = 0; i < b.vkinds.size(); i++)
                c.ii_scales.push_back(b.scale);
        c.aut2 = automorphous2(c.rep);
        canon_keys.push_back(canonical_state(state_of_jordan(jordan_split_2(c.rep))));
        out.push_back(std::move(c));
    };

    if (ucat >= 3 && vcat >= 3) {
        // three isolated dim-1 constituents: all unit triples with abc = d0
        for (int a : {1, 3, 5, 7})
            for (int b : {1, 3, 5, 7}) {
                int ab = a * b % 8;
                static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
                int c = inv8[ab] * d0 % 8;
                TernaryForm rep = assemble({{0, {a}}, {u, {b}}, {u + v, {c}}}, {});
                push(rep, QQ(1), render_generated(u, v, a, b, c), false);
            }
        return out;
    }
    std::multiset<std::pair<std::string, bool>> stated, computed;
    for (const RawRow& rr : cell_rows(ucat, vcat)) {
        ParsedRow pr = parse_symbol(rr.sym, u, v);
        TernaryForm rep = realize(pr);
        if (d0 != 1)
            rep = rep.scaled(ZZ(d0));
        push(rep, parse_mass(rr.mass64), rr.sym, d0 != 1);
        stated.insert({rr.mass64, rr.iso == 'Y'});
        computed.insert({rr.mass64, out.back().iso});
    }
    if (stated != computed)
        throw std::logic_error("2-adic table: isotropy multiset mismatch in cell");
    return out;
}

} // namespace

const std::vector<Local2Class>& local2_cell(int u, int v, int d0)
{
    std::lock_guard<std::mutex> lk(db_mutex);
    auto key = std::make_tuple(u, v, d0);
    auto it = db.find(key);
    if (it != db.end())
        return it->second;
    std::vector<JState> keys;
    auto cell = build_cell(u, v, d0, keys);
    auto& stored = db.emplace(key, std::move(cell)).first->second;
    // completeness check: the move set must keep the tabulated classes apart
    for (size_t i = 0; i < stored.size(); i++) {
        auto [pos, fresh] = canon_index.emplace(keys[i], &stored[i]);
        if (!fresh)
            throw std::logic_error("2-adic classes: canonical collision between " + stored[i].sym +
                                   " and " + pos->second->sym);
    }
    return stored;
}

std::vector<const Local2Class*> local2_classes_of_det(int k, int d0)
{
    std::vector<const Local2Class*> out;
    for (int u = 0; 2 * u <= k; u++) {
        int v = k - 2 * u;
        for (const Local2Class& c : local2_cell(u, v, d0))
            out.push_back(&c);
    }
    return out;
}

long local2_count(int k, int d0)
{
    return (long)local2_classes_of_det(k, d0).size();
}

int Local2Class::rep_units_at(int t) const
{
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    while ((int)rep_units.size() <= t) {
        int tt = (int)rep_units.size();
        int mask = 0;
        for (int b = 0; b < 4; b++) {
            ZZ n = ZZ(2 * b + 1) << (unsigned)tt;
            if (represents_locally(rep, n, ZZ(2)))
                mask |= 1 << b;
        }
        rep_units.push_back(mask);
    }
    return rep_units[t];
}

namespace {

// largest 2-adic elementary divisor valuation of an integral matrix with
// rows >= cols rank; returns -1 if the rank over Q_2 is below `need`
long max_elementary_valuation(std::vector<std::vector<ZZ>> a, int need)
{
    int rows = (int)a.size(), cols = (int)a[0].size();
    long wmax = 0;
    for (int step = 0; step < need; step++) {
        long best = LONG_MAX;
        int bi = -1, bj = -1;
        for (int i = step; i < rows; i++)
            for (int j = step; j < cols; j++)
                if (a[i][j] != 0) {
                    long v = valuation(a[i][j], ZZ(2));
                    if (v < best) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
        if (bi < 0)
            return -1;
        std::swap(a[step], a[bi]);
        for (int i = step; i < rows; i++)
            std::swap(a[i][step], a[i][bj]);
        wmax = std::max(wmax, best);
        ZZ piv = a[step][step];
        ZZ pu = piv >> (unsigned long)best; // odd
        for (int i = step + 1; i < rows; i++) {
            if (a[i][step] == 0)
                continue;
            ZZ q = a[i][step] >> (unsigned long)best; // exact: val >= best
            for (int j = step; j < cols; j++)
                a[i][j] = a[i][j] * pu - a[step][j] * q;
        }
    }
    return wmax;
}

// derivative of U -> U^T F U at U, as a 6x9 integer matrix over the entries
// of V (rows: symmetric positions (i,j) i<=j; cols: V_{kl})
std::vector<std::vector<ZZ>> derivative_matrix(const std::array<ZZ, 9>& FU)
{
    std::vector<std::vector<ZZ>> A(6, std::vector<ZZ>(9, ZZ(0)));
    int r = 0;
    for (int i = 0; i < 3; i++)
        for (int j = i; j < 3; j++, r++) {
            for (int k = 0; k < 3; k++) {
                A[r][3 * k + i] += FU[3 * k + j];
                A[r][3 * k + j] += FU[3 * k + i];
            }
        }
    return A;
}

struct LiftCtx {
    const std::array<ZZ, 9>* F;
    const std::array<ZZ, 9>* G;
    long node_budget;
};

bool lift_dfs(LiftCtx& ctx, std::array<ZZ, 9>& U, int m, const ZZ& pm)
{
    if (ctx.node_budget-- <= 0)
        throw std::runtime_error("equivalent2: node budget exceeded");
    const auto& F = *ctx.F;
    const auto& G = *ctx.G;
    std::array<ZZ, 9> FU;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            ZZ s(0);
            for (int k = 0; k < 3; k++)
                s += F[3 * i + k] * U[3 * k + j];
            FU[3 * i + j] = s;
        }
    ZZ R[6];
    int r = 0;
    for (int i = 0; i < 3; i++)
        for (int j = i; j < 3; j++, r++) {
            ZZ s(0);
            for (int k = 0; k < 3; k++)
                s += U[3 * k + i] * FU[3 * k + j];
            R[r] = G[3 * i + j] - s;
        }
    // Hensel certificate: residual valuation beats twice the worst
    // elementary divisor of the derivative
    auto A = derivative_matrix(FU);
    long w = max_elementary_valuation(A, 6);
    if (w >= 0) {
        bool cert = true;
        for (int t = 0; t < 6 && cert; t++)
            if (R[t] != 0 && valuation(R[t], ZZ(2)) < 2 * w + 1)
                cert = false;
        if (cert)
            return true;
    }
    // solve A v == R / 2^m (mod 2) over F_2
    int arows = 6;
    uint16_t rowsb[6];
    int rhs[6];
    for (int t = 0; t < arows; t++) {
        uint16_t bits = 0;
        for (int c = 0; c < 9; c++)
            if (mod(A[t][c], ZZ(2)) != 0)
                bits |= (uint16_t)(1 << c);
        rowsb[t] = bits;
        rhs[t] = (int)to_long(mod(R[t] / pm, ZZ(2)));
    }
    // gaussian elimination
    int pivcol[6], nr = 0;
    for (int c = 0; c < 9 && nr < 6; c++) {
        int pr = -1;
        for (int t = nr; t < 6; t++)
            if (rowsb[t] & (1 << c)) {
                pr = t;
                break;
            }
        if (pr < 0)
            continue;
        std::swap(rowsb[nr], rowsb[pr]);
        std::swap(rhs[nr], rhs[pr]);
        for (int t = 0; t < 6; t++)
            if (t != nr && (rowsb[t] & (1 << c))) {
                rowsb[t] ^= rowsb[nr];
                rhs[t] ^= rhs[nr];
            }
        pivcol[nr++] = c;
    }
    for (int t = nr; t < 6; t++)
        if (rhs[t])
            return false; // inconsistent
    // particular solution + nullspace enumeration
    uint16_t part = 0;
    for (int t = 0; t < nr; t++)
        if (rhs[t])
            part |= (uint16_t)(1 << pivcol[t]);
    std::vector<uint16_t> null_basis;
    bool ispiv[9] = {};
    for (int t = 0; t < nr; t++)
        ispiv[pivcol[t]] = true;
    for (int c = 0; c < 9; c++) {
        if (ispiv[c])
            continue;
        uint16_t vec = (uint16_t)(1 << c);
        for (int t = 0; t < nr; t++)
            if (rowsb[t] & (1 << c))
                vec |= (uint16_t)(1 << pivcol[t]);
        null_basis.push_back(vec);
    }
    ZZ pm1 = pm * 2;
    size_t nn = null_basis.size();
    for (size_t mask = 0; mask < (size_t(1) << nn); mask++) {
        uint16_t sol = part;
        for (size_t b = 0; b < nn; b++)
            if (mask & (size_t(1) << b))
                sol ^= null_basis[b];
        std::array<ZZ, 9> W = U;
        for (int b = 0; b < 9; b++)
            if (sol & (1 << b))
                W[b] += pm;
        if (lift_dfs(ctx, W, m + 1, pm1))
            return true;
    }
    return false;
}

} // namespace

int equivalent2_budget(const TernaryForm& f, const TernaryForm& g, long node_budget)
{
    ZZ df = f.determinant(), dg = g.determinant();
    if (df == 0 || dg == 0)
        throw std::invalid_argument("equivalent2: singular form");
    long vf = valuation(df, ZZ(2));
    if (vf != valuation(dg, ZZ(2)))
        return 0;
    if (mod(unit_part(df, ZZ(2)), ZZ(8)) != mod(unit_part(dg, ZZ(2)), ZZ(8)))
        return 0;
    LiftCtx ctx{&f.g, &g.g, node_budget};
    for (int mask = 0; mask < 512; mask++) {
        std::array<ZZ, 9> U;
        for (int b = 0; b < 9; b++)
            U[b] = (mask >> b) & 1;
        ZZ det3 = U[0] * (U[4] * U[8] - U[5] * U[7]) - U[1] * (U[3] * U[8] - U[5] * U[6])
                + U[2] * (U[3] * U[7] - U[4] * U[6]);
        if (mod(det3, ZZ(2)) != 1)
            continue;
        bool ok = true;
        for (int i = 0; i < 3 && ok; i++)
            for (int j = i; j < 3 && ok; j++) {
                ZZ s(0);
                for (int k = 0; k < 3; k++)
                    for (int l = 0; l < 3; l++)
                        s += U[3 * k + i] * f.g[3 * k + l] * U[3 * l + j];
                if (mod(s - g.g[3 * i + j], ZZ(2)) != 0)
                    ok = false;
            }
        if (!ok)
            continue;
        bool found;
        try {
            found = lift_dfs(ctx, U, 1, ZZ(2));
        } catch (const std::runtime_error&) {
            return -1; // budget exceeded
        }
        if (found)
            return 1;
    }
    return 0;
}

bool equivalent2(const TernaryForm& f, const TernaryForm& g)
{
    int r = equivalent2_budget(f, g, 50000000L);
    if (r < 0)
        throw std::runtime_error("equivalent2: node budget exceeded");
    return r == 1;
}

namespace {

struct PVec {
    long x, y, z;
    bool operator<(const PVec& o) const
    {
        return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
    }
};

long inv2adic(long u, long mask)
{
    long t = u; // Newton iteration doubles precision each step
    for (int it = 0; it < 7; it++)
        t = (t * (2 - u * t)) & mask;
    return t & mask;
}

// canonical projective representative: scale by a unit so the first odd
// coordinate is 1 mod 2^m
PVec pnormalize(long x, long y, long z, long mask)
{
    long u;
    if (x & 1)
        u = inv2adic(x & mask, mask);
    else if (y & 1)
        u = inv2adic(y & mask, mask);
    else
        u = inv2adic(z & mask, mask);
    PVec p;
    p.x = (x * u) & mask;
    p.y = (y * u) & mask;
    p.z = (z * u) & mask;
    return p;
}

} // namespace

int sq2_code(const ZZ& n)
{
    long v = valuation(n, ZZ(2));
    long u = to_long(mod(unit_part(n, ZZ(2)), ZZ(8)));
    int ub = u == 1 ? 0 : u == 3 ? 1 : u == 7 ? 2 : 3;
    return ub | ((int)(v & 1) << 2);
}

int automorphous2(const TernaryForm& f)
{
    ZZ det = f.determinant();
    if (det == 0)
        throw std::invalid_argument("automorphous2: singular form");
    long vd = valuation(det, ZZ(2));
    long mmax = vd + 3;
    if (mmax > 28)
        throw std::invalid_argument("automorphous2: determinant too ramified");

    // reflection norm classes: f(v) with v_2(f(v)) <= 1 + v_2((v, L))
    int norms = 0; // bitmask of square-class codes
    std::set<PVec> states;
    for (long x = 0; x < 2; x++)
        for (long y = 0; y < 2; y++)
            for (long z = 0; z < 2; z++)
                if (x + y + z > 0)
                    states.insert(PVec{x, y, z});
    for (long m = 1; m <= mmax && !states.empty(); m++) {
        std::set<PVec> next;
        for (const PVec& v : states) {
            ZZ fx = f.evaluate(ZZ(v.x), ZZ(v.y), ZZ(v.z));
            ZZ mv[3];
            for (int i = 0; i < 3; i++)
                mv[i] = f.at(i, 0) * v.x + f.at(i, 1) * v.y + f.at(i, 2) * v.z;
            long w = LONG_MAX;
            for (int i = 0; i < 3; i++)
                if (mv[i] != 0)
                    w = std::min(w, valuation(mv[i], ZZ(2)));
            bool w_det = w < m;
            long t = fx == 0 ? LONG_MAX : valuation(fx, ZZ(2));
            bool t_det = t < m;
            if (t_det && t + 2 <= m) {
                // value class of this direction known mod squares
                if (!w_det || t <= 1 + w)
                    norms |= 1 << sq2_code(fx);
                continue;
            }
            if (m > vd + 2)
                continue; // t >= m - 1 > 1 + v_2(det) >= 1 + w: never a generator
            if (w_det && m - 2 > 1 + w)
                continue; // any children have t >= m - 2 > 1 + w: dead cone
            long step = 1L << m;
            for (long a = 0; a < 2; a++)
                for (long b = 0; b < 2; b++)
                    for (long c = 0; c < 2; c++)
                        next.insert(pnormalize(v.x + a * step, v.y + b * step, v.z + c * step,
                                               (step << 1) - 1));
        }
        states.swap(next);
    }
    // subgroup generated by pairwise products (spinor norms of rotations)
    int grp = 1; // identity class code 0
    std::vector<int> gens;
    for (int a = 0; a < 8; a++)
        if (norms & (1 << a))
            for (int b = 0; b < 8; b++)
                if (norms & (1 << b))
                    gens.push_back(a ^ b); // Sq*(Q_2) is elementary abelian
    for (int g : gens) {
        if (grp & (1 << g))
            continue;
        int ng = grp;
        for (int e = 0; e < 8; e++)
            if (grp & (1 << e))
                ng |= 1 << (e ^ g);
        grp = ng;
    }
    return grp;
}

const Local2Class& classify2(const TernaryForm& f)
{
    ZZ det = f.determinant();
    if (det == 0)
        throw std::invalid_argument("classify2: singular form");
    if (f.content() % 2 == 0)
        throw std::invalid_argument("classify2: form is 2-imprimitive");
    Jordan2 j = jordan_split_2(f);
    int d0 = (int)to_long(mod(unit_part(det, ZZ(2)), ZZ(8)));
    local2_cell(j.u, j.v, d0); // materialize the cell
    JState key = canonical_state(state_of_jordan(j));
    std::lock_guard<std::mutex> lk(db_mutex);
    auto it = canon_index.find(key);
    if (it == canon_index.end())
        throw std::logic_error("classify2: no matching class");
    return *it->second;
}

} // namespace tqf
