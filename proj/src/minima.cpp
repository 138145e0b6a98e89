#include "tqf/minima.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <thread>

namespace tqf {

namespace {

LocalMinData local_min_impl(const std::vector<const LocalClass*>& locals, const ZZ& rH)
{
    LocalMinData md;
    bool all_iso = true;
    for (auto* c : locals)
        if (!c->isotropic())
            all_iso = false;
    ZZ cap = 2 * rH + 1;
    for (ZZ n(1); n <= cap; n++) {
        for (int s : {1, -1}) {
            ZZ t = s * n;
            bool ok = true;
            for (auto* c : locals)
                if (!c->represents(t)) {
                    ok = false;
                    break;
                }
            if (ok) {
                md.kstar = to_long(n);
                md.k = all_iso ? 0 : md.kstar;
                return md;
            }
        }
    }
    throw std::logic_error("local_min: K* exceeded 2 r(H)");
}

} // namespace

LocalMinData local_min(const Packet& h)
{
    std::vector<const LocalClass*> ls;
    for (auto& [p, c] : h.locals)
        ls.push_back(&c);
    ZZ r = factor_rs(h.determinant()).first;
    return local_min_impl(ls, r);
}

LocalMinData local_min(const GenusSymbol& g)
{
    std::vector<const LocalClass*> ls;
    for (auto& c : g.locals)
        ls.push_back(&c);
    ZZ r = factor_rs(g.d).first;
    return local_min_impl(ls, r);
}

bool jones_watson_applies(const ZZ& n, const ZZ& d)
{
    if (n == 0)
        throw std::invalid_argument("jones_watson_applies: n = 0");
    for (auto& [q, e] : factor(n))
        if (q != 2 && e == 1 && mod(d, q) != 0)
            return true;
    return false;
}

namespace {

// minimum of |F| over the box max|x_i| <= radius, x != 0; x1-slices in
// parallel with an early exit when the target lower bound is reached
struct BoxMin {
    ZZ best;
    std::array<ZZ, 3> witness;
    bool found = false;
};

BoxMin box_search(const TernaryForm& f, long radius, const ZZ& stop_at, int threads)
{
    long maxe = 0;
    for (const ZZ& e : f.g)
        maxe = std::max(maxe, to_long(abs(e)));
    bool fits = maxe < (1L << 40) / (6 * (radius + 1) * (radius + 1));

    std::vector<BoxMin> partial((size_t)std::max(threads, 1));
    std::atomic<long> next{0};
    std::atomic<bool> stop{false};
    auto work = [&](int tid) {
        BoxMin& bm = partial[tid];
        long a, b, c, d2, e2, f2;
        if (fits) {
            a = to_long(f.at(0, 0));
            b = to_long(f.at(1, 1));
            c = to_long(f.at(2, 2));
            d2 = to_long(f.at(0, 1));
            e2 = to_long(f.at(0, 2));
            f2 = to_long(f.at(1, 2));
        }
        for (;;) {
            long x = next.fetch_add(1);
            if (x > radius || stop.load(std::memory_order_relaxed))
                return;
            for (long y = (x == 0 ? 0 : -radius); y <= radius; y++)
                for (long z = ((x == 0 && y == 0) ? 1 : -radius); z <= radius; z++) {
                    ZZ v;
                    if (fits) {
                        long t = a * x * x + b * y * y + c * z * z + 2 * (d2 * x * y + e2 * x * z + f2 * y * z);
                        if (t == 0)
                            continue;
                        v = t < 0 ? -t : t;
                    } else {
                        v = f.evaluate(ZZ(x), ZZ(y), ZZ(z));
                        if (v == 0)
                            continue;
                        if (v < 0)
                            v = -v;
                    }
                    if (!bm.found || v < bm.best) {
                        bm.found = true;
                        bm.best = v;
                        bm.witness = {ZZ(x), ZZ(y), ZZ(z)};
                        if (v <= stop_at)
                            stop.store(true, std::memory_order_relaxed);
                    }
                }
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> ts;
        for (int t = 0; t < threads; t++)
            ts.emplace_back(work, t);
        for (auto& t : ts)
            t.join();
    }
    BoxMin best;
    for (auto& bm : partial)
        if (bm.found && (!best.found || bm.best < best.best ||
                         (bm.best == best.best && bm.witness < best.witness))) {
            best = bm;
        }
    return best;
}

// witness with |F(x)| = t inside the box, if any
std::optional<std::array<ZZ, 3>> box_find_value(const TernaryForm& f, long radius, const ZZ& t)
{
    for (long x = 0; x <= radius; x++)
        for (long y = (x == 0 ? 0 : -radius); y <= radius; y++)
            for (long z = ((x == 0 && y == 0) ? 1 : -radius); z <= radius; z++) {
                ZZ v = f.evaluate(ZZ(x), ZZ(y), ZZ(z));
                if (v == t || v == -t)
                    return std::array<ZZ, 3>{ZZ(x), ZZ(y), ZZ(z)};
            }
    return std::nullopt;
}

} // namespace

KappaResult kappa(const TernaryForm& f, long max_radius)
{
    ZZ det = f.determinant();
    if (det == 0)
        throw std::invalid_argument("kappa: singular form");
    if (!signature(f).indefinite_nonsingular())
        throw std::invalid_argument("kappa: definite form");
    if (f.content() != 1)
        throw std::invalid_argument("kappa: imprimitive form");

    KappaResult res;
    if (is_isotropic_global(f)) {
        res.value = 0;
        res.cert = KappaCert::Isotropic;
        return res;
    }

    // genus data of f
    TernaryForm fn = f;
    sign_normalize(fn);
    GenusSymbol g;
    g.d = fn.determinant();
    g.locals.push_back(canonical_local_class(fn, ZZ(2)));
    for (auto& [p, e] : factor(g.d))
        if (p != 2)
            g.locals.push_back(canonical_local_class(fn, p));
    LocalMinData lm = local_min(g);
    ZZ lower(lm.kstar);
    long h = class_count(g);

    int nthreads = (int)std::thread::hardware_concurrency();
    BoxMin bm;
    long radius = 4;
    for (;; radius *= 2) {
        if (radius > max_radius)
            radius = max_radius;
        bm = box_search(f, radius, lower, nthreads);
        res.radius = radius;
        if (bm.found && bm.best == lower)
            break;
        if (radius == max_radius)
            break;
    }
    assert(bm.found);
    res.value = bm.best;
    res.witness = bm.witness;

    if (bm.best == lower) {
        res.cert = KappaCert::LocalLowerBoundMet;
        return res;
    }
    // certify every lower to < m by local exclusion or forced representation
    for (ZZ t = lower; t < bm.best; t++) {
        bool rep_plus = true, rep_minus = true;
        for (auto& c : g.locals) {
            if (!c.represents(t))
                rep_plus = false;
            if (!c.represents(-t))
                rep_minus = false;
        }
        if (!rep_plus && !rep_minus)
            continue; // locally excluded
        if (h == 1 || jones_watson_applies(t, g.d)) {
            // the genus (hence f) represents +t or -t; the searched box missed
            // it, so extend the search before concluding
            if (res.radius < max_radius) {
                auto w = box_find_value(f, max_radius, t);
                if (w) {
                    res.value = t;
                    res.witness = w;
                    res.radius = max_radius;
                    res.cert = t == lower ? KappaCert::LocalLowerBoundMet
                                          : KappaCert::JonesWatsonExcluded;
                    return res;
                }
            }
            res.cert = KappaCert::UpperBoundOnly;
            return res;
        }
        res.cert = KappaCert::UpperBoundOnly;
        return res;
    }
    res.cert = KappaCert::JonesWatsonExcluded;
    return res;
}

long least_prime_cap(long q)
{
    long best = 0;
    for (long a = 1; a < q; a++) {
        if (std::gcd(a, q) != 1)
            continue;
        long p = 0;
        for (ZZ c(a);; c += q) {
            if (c >= 2 && is_prime(c)) {
                p = to_long(c);
                break;
            }
        }
        best = std::max(best, p);
    }
    return best;
}

ZZ watson_cap(const ZZ& d, const ZZ& hard_cap)
{
    ZZ r = factor_rs(abs(d)).first;
    ZZ P = P_d(d);
    ZZ cap = 2 * r * least_prime_cap(to_long(8 * P));
    return cap < hard_cap ? cap : hard_cap;
}

} // namespace tqf
