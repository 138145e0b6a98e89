#include "tqf/localodd.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <sstream>

namespace tqf {

namespace {

typedef std::array<QQ, 9> QMat;

long qval(const QQ& x, const ZZ& p)
{
    assert(x != 0);
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

// unit part of x as an exact rational with p-coprime numerator and denominator
QQ qunit(const QQ& x, const ZZ& p, long v)
{
    QQ u = x;
    if (v > 0)
        u /= QQ(pow_zz(p, v));
    else if (v < 0)
        u *= QQ(pow_zz(p, -v));
    return u;
}

int qlegendre(const QQ& x, const ZZ& p)
{
    return legendre(x.get_num(), p) * legendre(x.get_den(), p);
}

} // namespace

long OddLocalClass::vp() const
{
    long v = 0;
    for (auto& b : blocks)
        v += (long)b.scale * b.dim;
    return v;
}

int OddLocalClass::det_eta() const
{
    int e = 1;
    for (auto& b : blocks)
        e *= b.eta;
    return e;
}

TernaryForm OddLocalClass::representative() const
{
    ZZ d[3];
    int k = 0;
    ZZ r(least_nonresidue(p));
    for (auto& b : blocks) {
        ZZ s = pow_zz(ZZ(p), b.scale);
        for (int i = 0; i < b.dim - 1; i++)
            d[k++] = s;
        d[k++] = s * (b.eta == 1 ? ZZ(1) : r);
    }
    assert(k == 3);
    return TernaryForm::diag(d[0], d[1], d[2]);
}

int OddLocalClass::hasse() const
{
    return hasse_invariant(representative(), ZZ(p));
}

QQ OddLocalClass::mass() const
{
    QQ m(1);
    QQ pq(p);
    for (auto& b : blocks) {
        if (b.dim == 1) {
            m /= 2;
        } else if (b.dim == 2) {
            // split plane iff -det is a square
            int e = legendre(ZZ(-1), ZZ(p)) == 1 ? b.eta : -b.eta;
            m *= QQ(1) / (2 * (1 - QQ(e) / pq));
        } else {
            m *= QQ(1) / (2 * (1 - QQ(1) / (pq * pq)));
        }
    }
    long cross = 0;
    for (size_t i = 0; i < blocks.size(); i++)
        for (size_t j = i + 1; j < blocks.size(); j++)
            cross += (long)(blocks[j].scale - blocks[i].scale) * blocks[i].dim * blocks[j].dim;
    assert(cross % 2 == 0);
    m *= QQ(pow_zz(ZZ(p), cross / 2));
    return m;
}

std::string OddLocalClass::symbol() const
{
    std::ostringstream os;
    bool first = true;
    for (auto& b : blocks) {
        if (!first)
            os << ' ';
        first = false;
        os << p << '^' << b.scale << ':' << (b.eta == 1 ? '+' : '-') << b.dim;
    }
    return os.str();
}

OddLocalClass jordan_split_odd(const TernaryForm& f, long p)
{
    if (f.determinant() == 0)
        throw std::invalid_argument("jordan_split_odd: singular form");
    ZZ zp(p);
    QMat m;
    for (int i = 0; i < 9; i++)
        m[i] = QQ(f.g[i]);

    std::vector<std::pair<long, int>> diag; // (scale, legendre of unit)
    std::vector<int> idx = {0, 1, 2};
    while (!idx.empty()) {
        // minimal valuation among the active submatrix
        long best = LONG_MAX;
        int bi = -1, bj = -1;
        for (int i : idx)
            for (int j : idx) {
                const QQ& x = m[3 * i + j];
                if (x == 0)
                    continue;
                long v = qval(x, zp);
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        assert(bi >= 0);
        if (bi != bj) {
            // move the minimum onto the diagonal: x_i -> x_i + x_j or x_i - x_j
            for (int s : {1, -1}) {
                QQ nd = m[3 * bi + bi] + 2 * s * m[3 * bi + bj] + m[3 * bj + bj];
                if (nd != 0 && qval(nd, zp) == best) {
                    for (int k = 0; k < 3; k++) {
                        m[3 * bi + k] += s * m[3 * bj + k];
                    }
                    for (int k = 0; k < 3; k++)
                        m[3 * k + bi] += s * m[3 * k + bj];
                    break;
                }
            }
            bj = bi;
            assert(m[3 * bi + bi] != 0 && qval(m[3 * bi + bi], zp) == best);
        }
        // clear row/column bi
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
        diag.push_back({best, qlegendre(qunit(piv, zp, best), zp)});
        idx.erase(std::find(idx.begin(), idx.end(), bi));
    }

    std::sort(diag.begin(), diag.end());
    OddLocalClass c;
    c.p = p;
    for (size_t i = 0; i < diag.size();) {
        size_t j = i;
        int eta = 1;
        while (j < diag.size() && diag[j].first == diag[i].first) {
            eta *= diag[j].second;
            j++;
        }
        OddBlock b;
        b.scale = (int)diag[i].first;
        b.dim = (int)(j - i);
        b.eta = eta;
        c.blocks.push_back(b);
        i = j;
    }
    return c;
}

std::vector<OddLocalClass> enumerate_local_classes_odd(long p, int v, int d0_eta)
{
    std::vector<OddLocalClass> out;
    auto push = [&](std::vector<OddBlock> bs) {
        OddLocalClass c;
        c.p = p;
        c.blocks = std::move(bs);
        out.push_back(c);
    };
    if (v == 0) {
        push({OddBlock{0, 3, d0_eta}});
        return out;
    }
    // dim-2 block at scale 0, dim-1 at scale v
    for (int ea : {1, -1})
        push({OddBlock{0, 2, ea}, OddBlock{v, 1, d0_eta * ea}});
    // dim-1 at 0, dim-2 at scale v/2
    if (v % 2 == 0)
        for (int ea : {1, -1})
            push({OddBlock{0, 1, ea}, OddBlock{v / 2, 2, d0_eta * ea}});
    // three dim-1 blocks at 0 < t2 < t3
    for (int t2 = 1; 2 * t2 < v; t2++)
        for (int ea : {1, -1})
            for (int eb : {1, -1})
                push({OddBlock{0, 1, ea}, OddBlock{t2, 1, eb}, OddBlock{v - t2, 1, d0_eta * ea * eb}});
    return out;
}

} // namespace tqf
