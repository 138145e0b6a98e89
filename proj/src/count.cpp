// Counting drivers.
//
// Genus cache shard layout (little-endian):
//   magic   "TQFG"            4 bytes
//   version u32 = 1
//   start   u64               first determinant of the shard
//   size    u32 = 1000        determinants per shard
//   count   u32               number of records
// records, one per determinant:
//   d       u64
//   ngen    u32
//   per genus: klen u32, key bytes, h u32
#include "tqf/count.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace tqf {

void CountReport::fit_xlogx()
{
    // least squares on counts ~ c1 X log X + c2 X
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    size_t n = grid.size();
    for (size_t i = 0; i < n; i++) {
        double u = grid[i] * std::log(grid[i]);
        double w = grid[i];
        a11 += u * u;
        a12 += u * w;
        a22 += w * w;
        b1 += u * counts[i];
        b2 += w * counts[i];
    }
    double det = a11 * a22 - a12 * a12;
    if (det == 0 || n < 3) {
        c1 = c2 = c1_stderr = 0;
        return;
    }
    c1 = (b1 * a22 - b2 * a12) / det;
    c2 = (a11 * b2 - a12 * b1) / det;
    double rss = 0;
    for (size_t i = 0; i < n; i++) {
        double u = grid[i] * std::log(grid[i]);
        double w = grid[i];
        double r = counts[i] - c1 * u - c2 * w;
        rss += r * r;
    }
    double sigma2 = rss / (double)(n > 2 ? n - 2 : 1);
    c1_stderr = std::sqrt(sigma2 * a22 / det);
}

std::string CountReport::to_csv() const
{
    std::ostringstream os;
    os << "X,count";
    if (!uncertainty.empty())
        os << ",uncertainty";
    if (!reference.empty())
        os << ",reference";
    os << "\n";
    for (size_t i = 0; i < grid.size(); i++) {
        os << (long long)grid[i] << ',' << counts[i];
        if (!uncertainty.empty())
            os << ',' << uncertainty[i];
        if (!reference.empty())
            os << ',' << reference[i];
        os << "\n";
    }
    return os.str();
}

std::string CountReport::to_json() const
{
    std::ostringstream os;
    os.precision(15);
    os << "{\"label\":\"" << label << "\",\"grid\":[";
    for (size_t i = 0; i < grid.size(); i++)
        os << (i ? "," : "") << grid[i];
    os << "],\"counts\":[";
    for (size_t i = 0; i < counts.size(); i++)
        os << (i ? "," : "") << counts[i];
    os << "]";
    if (!uncertainty.empty()) {
        os << ",\"uncertainty\":[";
        for (size_t i = 0; i < uncertainty.size(); i++)
            os << (i ? "," : "") << uncertainty[i];
        os << "]";
    }
    if (!reference.empty()) {
        os << ",\"reference\":[";
        for (size_t i = 0; i < reference.size(); i++)
            os << (i ? "," : "") << reference[i];
        os << "]";
    }
    os << ",\"fit\":{\"c1\":" << c1 << ",\"c2\":" << c2 << ",\"c1_stderr\":" << c1_stderr << "}}";
    return os.str();
}

namespace {

// deterministic parallel map over [1, X]: per-d values written to a flat array
template <typename F>
void parallel_over_d(long X, int threads, F&& fn)
{
    if (threads <= 1) {
        for (long d = 1; d <= X; d++)
            fn(d);
        return;
    }
    std::atomic<long> next{1};
    auto work = [&]() {
        for (;;) {
            long lo = next.fetch_add(256);
            if (lo > X)
                return;
            long hi = std::min(X, lo + 255);
            for (long d = lo; d <= hi; d++)
                fn(d);
        }
    };
    std::vector<std::thread> ts;
    for (int t = 0; t < threads; t++)
        ts.emplace_back(work);
    for (auto& t : ts)
        t.join();
}

std::vector<double> make_grid(long X, int n)
{
    std::vector<double> g;
    for (int i = 1; i <= n; i++)
        g.push_back((double)(X / n * i));
    return g;
}

} // namespace

CountReport sum_genera(long X, int grid_n, int threads, const std::string& cache_dir)
{
    std::vector<long> gs((size_t)X + 1, 0);
    if (!cache_dir.empty()) {
        GenusCache cache(cache_dir);
        for (long start = 1; start <= X; start += GenusCache::shard_size) {
            std::map<long, GenusCacheEntry> shard;
            if (cache.load_shard(start, shard)) {
                for (auto& [d, e] : shard)
                    if (d <= X)
                        gs[(size_t)d] = (long)e.genera.size();
            } else {
                long hi = std::min(X, start + GenusCache::shard_size - 1);
                parallel_over_d(hi - start + 1, threads,
                                [&](long i) { gs[(size_t)(start + i - 1)] = count_genera(ZZ(start + i - 1)); });
                std::map<long, GenusCacheEntry> out;
                for (long d = start; d <= hi; d++) {
                    GenusCacheEntry e;
                    for (auto& g : enumerate_genera(ZZ(d)))
                        e.genera.push_back({g.key(), class_count(g)});
                    out[d] = std::move(e);
                }
                cache.write_shard(start, out);
            }
        }
    } else {
        parallel_over_d(X, threads, [&](long d) { gs[(size_t)d] = count_genera(ZZ(d)); });
    }
    CountReport rep;
    rep.label = "sum_genera";
    rep.grid = make_grid(X, grid_n);
    double c = 0;
    size_t gi = 0;
    for (long d = 1; d <= X && gi < rep.grid.size(); d++) {
        c += (double)gs[(size_t)d];
        while (gi < rep.grid.size() && d == (long)rep.grid[gi]) {
            rep.counts.push_back(c);
            rep.reference.push_back(57.0 / (4 * M_PI * M_PI) * rep.grid[gi] * std::log(rep.grid[gi]));
            gi++;
        }
    }
    rep.fit_xlogx();
    return rep;
}

CountReport sum_classes(long X, int grid_n, int threads, const std::string& cache_dir)
{
    std::vector<long> hs((size_t)X + 1, 0);
    bool cached = false;
    if (!cache_dir.empty()) {
        GenusCache cache(cache_dir);
        cached = true;
        for (long start = 1; start <= X && cached; start += GenusCache::shard_size) {
            std::map<long, GenusCacheEntry> shard;
            if (!cache.load_shard(start, shard)) {
                cached = false;
                break;
            }
            for (auto& [d, e] : shard)
                if (d <= X)
                    for (auto& [k, h] : e.genera)
                        hs[(size_t)d] += h;
        }
    }
    if (!cached)
        parallel_over_d(X, threads, [&](long d) { hs[(size_t)d] = to_long(class_number(ZZ(d))); });
    CountReport rep;
    rep.label = "sum_classes";
    rep.grid = make_grid(X, grid_n);
    double c = 0;
    size_t gi = 0;
    for (long d = 1; d <= X && gi < rep.grid.size(); d++) {
        c += (double)hs[(size_t)d];
        while (gi < rep.grid.size() && d == (long)rep.grid[gi]) {
            rep.counts.push_back(c);
            rep.reference.push_back(57.0 / (4 * M_PI * M_PI) * rep.grid[gi] * std::log(rep.grid[gi]));
            gi++;
        }
    }
    rep.fit_xlogx();
    return rep;
}

std::map<long, ZZ> lambda_of_d(const ZZ& d)
{
    std::map<long, ZZ> lam;
    for (auto& g : enumerate_genera(d)) {
        if (g.isotropic())
            continue; // K = 0 classes are not spectrum points
        LocalMinData md = local_min(g);
        lam[md.kstar] += class_count(g);
    }
    return lam;
}

CountReport mar_count(long X, int grid_n, int t_hard, int threads)
{
    // MAR(X) = sum_t S(t^3 X, t): a class with kappa = t counts once its
    // determinant is at most t^3 X. At genus level every class of an
    // anisotropic genus G has kappa >= K*(G), so for d <= K*(G)^3 X all h(G)
    // classes certainly qualify; in multi-class genera outside that window up
    // to h(G) - 1 classes might still qualify and are reported as
    // uncertainty. Genera with K* > t_hard are outside the examined domain.
    long Dmax = (long)t_hard * t_hard * t_hard * X;
    std::vector<std::vector<std::pair<int, long>>> data((size_t)Dmax + 1);
    parallel_over_d(Dmax, threads, [&](long d) {
        std::vector<std::pair<int, long>> v;
        for (auto& g : enumerate_genera(ZZ(d))) {
            if (g.isotropic())
                continue;
            LocalMinData md = local_min(g);
            if (md.kstar > t_hard)
                continue;
            v.push_back({(int)md.kstar, class_count(g)});
        }
        data[(size_t)d] = std::move(v);
    });
    CountReport rep;
    rep.label = "mar";
    rep.grid = make_grid(X, grid_n);
    for (double Xg : rep.grid) {
        double certain = 0, unc = 0;
        for (long d = 1; d <= Dmax; d++)
            for (auto& [t, h] : data[(size_t)d]) {
                if ((double)d <= (double)t * t * t * Xg)
                    certain += (double)h;
                else if (h > 1 && (double)d <= (double)t_hard * t_hard * t_hard * Xg)
                    unc += (double)(h - 1);
            }
        rep.counts.push_back(certain);
        rep.uncertainty.push_back(unc);
    }
    rep.fit_xlogx();
    return rep;
}

CountReport mar_squarefree(long X, int grid_n)
{
    // kappa in {1, 2} exactly on squarefree determinants:
    //   d odd:  lambda(d,1) = 2^omega - 1
    //   d even: lambda(d,1) = 2^{omega-1} - 1, lambda(d,2) = 2^{omega-2} - 1
    // MAR#(X) = S#(X,1) + S#(8X,2)
    long Dmax = 8 * X;
    std::vector<int32_t> spf = spf_table(Dmax);
    std::vector<int8_t> omega_v((size_t)Dmax + 1, 0);
    std::vector<bool> sqfree((size_t)Dmax + 1, true);
    for (long d = 2; d <= Dmax; d++) {
        long m = d;
        int om = 0;
        bool sf = true;
        while (m > 1) {
            long p = spf[(size_t)m];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                e++;
            }
            om++;
            if (e > 1)
                sf = false;
        }
        omega_v[(size_t)d] = (int8_t)om;
        sqfree[(size_t)d] = sf;
    }
    auto lam1 = [&](long d) -> double {
        if (d < 3 || !sqfree[(size_t)d])
            return 0;
        int om = omega_v[(size_t)d];
        if (d % 2 == 1)
            return std::pow(2.0, om) - 1;
        return std::pow(2.0, om - 1) - 1;
    };
    auto lam2 = [&](long d) -> double {
        if (d < 3 || !sqfree[(size_t)d] || d % 2 == 1)
            return 0;
        int om = omega_v[(size_t)d];
        return om >= 2 ? std::pow(2.0, om - 2) - 1 : 0;
    };
    std::vector<double> pre1((size_t)Dmax + 1, 0), pre2((size_t)Dmax + 1, 0);
    for (long d = 1; d <= Dmax; d++) {
        pre1[(size_t)d] = pre1[(size_t)d - 1] + lam1(d);
        pre2[(size_t)d] = pre2[(size_t)d - 1] + lam2(d);
    }
    CountReport rep;
    rep.label = "mar_squarefree";
    rep.grid = make_grid(X, grid_n);
    const double c_euler = 0.286747428434478; // prod (1+2/p)(1-1/p)^2
    for (double Xg : rep.grid) {
        long Xi = (long)Xg;
        rep.counts.push_back(pre1[(size_t)Xi] + pre2[(size_t)(8 * Xi)]);
        rep.reference.push_back(1.75 * c_euler * Xg * std::log(Xg));
    }
    rep.fit_xlogx();
    return rep;
}

std::optional<std::array<ZZ, 3>> isotropic_vector_search(const TernaryForm& f, long bound)
{
    // solve f(x, y, z) = 0 as a quadratic in z for each (x, y) in growing boxes
    const ZZ& a = f.at(2, 2);
    for (long B = 1; B <= bound; B = B * 2) {
        long lo = B / 2 + 1, hi = std::min(B, bound);
        for (long x = 0; x <= hi; x++)
            for (long y = -hi; y <= hi; y++) {
                if (std::max(std::abs(x), std::abs(y)) < lo && B > 1)
                    continue;
                if (x == 0 && y < 0)
                    continue;
                // f = a z^2 + b z + c with
                ZZ b = 2 * (f.at(0, 2) * x + f.at(1, 2) * y);
                ZZ c = f.at(0, 0) * x * x + f.at(1, 1) * y * y + 2 * f.at(0, 1) * x * y;
                if (a == 0) {
                    if (b == 0) {
                        if (c == 0 && (x != 0 || y != 0))
                            return std::array<ZZ, 3>{ZZ(x), ZZ(y), ZZ(0)};
                        continue;
                    }
                    if (mod(-c, b) == 0) {
                        ZZ z = -c / b;
                        if (abs(z) <= bound && (x != 0 || y != 0 || z != 0))
                            return std::array<ZZ, 3>{ZZ(x), ZZ(y), z};
                    }
                    continue;
                }
                ZZ disc = b * b - 4 * a * c;
                if (disc < 0)
                    continue;
                ZZ s;
                mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
                if (s * s != disc)
                    continue;
                for (int sg : {1, -1}) {
                    ZZ num = -b + sg * s;
                    if (mod(num, 2 * a) == 0) {
                        ZZ z = num / (2 * a);
                        if (abs(z) <= bound && (x != 0 || y != 0 || z != 0))
                            return std::array<ZZ, 3>{ZZ(x), ZZ(y), z};
                    }
                }
            }
        if (hi == bound)
            break;
    }
    return std::nullopt;
}

IsoBoxResult iso_box_count(long X, int threads, bool crosscheck, long zero_search_bound,
                           long aniso_check_radius)
{
    if (X > 12)
        throw std::invalid_argument("iso_box_count: X > 12 is not supported (box too large)");
    IsoBoxResult res;
    long side = 2 * X + 1;
    long long total = 1;
    for (int i = 0; i < 6; i++)
        total *= side;
    std::atomic<long long> forms{0}, iso{0};
    std::atomic<bool> contradiction{false};
    std::atomic<long long> next{0};
    auto work = [&]() {
        for (;;) {
            long long lo = next.fetch_add(4096);
            if (lo >= total)
                return;
            long long hi = std::min(total, lo + 4096);
            for (long long idx = lo; idx < hi; idx++) {
                long long t = idx;
                long e[6];
                for (int i = 0; i < 6; i++) {
                    e[i] = (long)(t % side) - X;
                    t /= side;
                }
                TernaryForm f{ZZ(e[0]), ZZ(e[1]), ZZ(e[2]), ZZ(e[3]), ZZ(e[4]), ZZ(e[5])};
                ZZ det = f.determinant();
                if (det == 0)
                    continue;
                long g = std::gcd(std::gcd(std::gcd(e[0], e[1]), std::gcd(e[2], e[3])),
                                  std::gcd(e[4], e[5]));
                if (std::abs(g) != 1)
                    continue;
                if (!signature(f).indefinite_nonsingular())
                    continue;
                forms++;
                bool isot = is_isotropic_global(f);
                if (isot)
                    iso++;
                if (crosscheck) {
                    auto z = isotropic_vector_search(f, isot ? zero_search_bound : aniso_check_radius);
                    if (isot != z.has_value() && (isot || z.has_value()))
                        contradiction = true;
                }
            }
        }
    };
    std::vector<std::thread> ts;
    for (int t = 0; t < std::max(1, threads); t++)
        ts.emplace_back(work);
    for (auto& t : ts)
        t.join();
    res.total_forms = forms.load();
    res.isotropic = iso.load();
    res.report.label = "iso_box";
    res.report.grid = {(double)X};
    res.report.counts = {(double)res.isotropic};
    res.report.reference = {(double)res.isotropic / std::pow((double)X, 6)};
    if (contradiction.load())
        throw std::runtime_error("iso_box_count: isotropy verdict contradicted by zero search");
    return res;
}

CountReport iso_mass_sum(long X, int grid_n, long varpi_pmax)
{
    CountReport rep;
    rep.label = "iso_mass_sum";
    rep.grid = make_grid(X, grid_n);
    Bounded vp = varpi(varpi_pmax);
    Real z2 = Real::zeta_ui(2), z3 = Real::zeta_ui(3);
    // nu^iso(1) = (3/4) zeta(2)
    Real nu1 = Real(3) / Real(4) * z2;
    Real acc(0);
    size_t gi = 0;
    for (long d = 1; d <= X && gi < rep.grid.size(); d++) {
        acc += Real((long)d) * Real(nu_iso_tilde(ZZ(d))) * nu1;
        while (gi < rep.grid.size() && d == (long)rep.grid[gi]) {
            rep.counts.push_back(acc.to_double());
            double Xg = rep.grid[gi];
            double ref = (z2 * z3).to_double() / 2 * vp.value.to_double() * Xg / std::sqrt(std::log(Xg));
            rep.reference.push_back(ref);
            gi++;
        }
    }
    return rep;
}

std::map<std::string, TernaryForm> genus_representatives(const ZZ& d, long height_limit)
{
    // cover every genus of determinant d by candidate families: diagonal
    // forms over divisor triples, and forms with one binary block whose minor
    // divides d (the block carries the 2-adic compartment and V-type data)
    auto genera = enumerate_genera(d);
    std::map<std::string, TernaryForm> out;
    if (genera.empty())
        return out;
    std::set<std::string> missing;
    for (auto& g : genera)
        missing.insert(g.key());

    auto try_form = [&](const TernaryForm& f0) {
        if (missing.empty())
            return;
        TernaryForm f = f0;
        ZZ det = f.determinant();
        if (det == 0 || abs(det) != d)
            return;
        if (!signature(f).indefinite_nonsingular())
            return;
        try {
            if (f.content() != 1)
                return;
        } catch (...) {
            return;
        }
        sign_normalize(f);
        GenusSymbol g;
        g.d = d;
        g.locals.push_back(canonical_local_class(f, ZZ(2)));
        for (auto& [p, e] : factor(d))
            if (p != 2)
                g.locals.push_back(canonical_local_class(f, p));
        std::string k = g.key();
        auto it = missing.find(k);
        if (it != missing.end()) {
            missing.erase(it);
            out.emplace(k, f0);
        }
    };

    // divisor triples
    std::vector<long> divs;
    long dl = to_long(d);
    for (long e = 1; e * e <= dl; e++)
        if (dl % e == 0) {
            divs.push_back(e);
            if (e * e != dl)
                divs.push_back(dl / e);
        }
    for (long e1 : divs)
        for (long e2 : divs) {
            if (dl % (e1 * e2) != 0)
                continue;
            long e3 = dl / (e1 * e2);
            for (int s1 : {1, -1})
                for (int s2 : {1, -1})
                    for (int s3 : {1, -1})
                        try_form(TernaryForm::diag(ZZ(s1 * e1), ZZ(s2 * e2), ZZ(s3 * e3)));
        }

    // binary block [[a, t], [t, b]] plus a complementary diagonal entry
    long H = std::min(height_limit, 24L);
    for (long a = -H; a <= H && !missing.empty(); a++)
        for (long b = -H; b <= H; b++)
            for (long t = 0; t <= H; t++) {
                long m = a * b - t * t;
                if (m == 0 || dl % std::abs(m) != 0)
                    continue;
                long c = dl / m; // det of the block-diagonal form = m c
                for (int sg : {1, -1}) {
                    try_form(TernaryForm(ZZ(a), ZZ(b), ZZ(sg * c), ZZ(t), ZZ(0), ZZ(0)));
                    try_form(TernaryForm(ZZ(sg * c), ZZ(a), ZZ(b), ZZ(0), ZZ(0), ZZ(t)));
                }
            }

    // last resort: small full sweep
    for (long H2 = 1; H2 <= std::min(height_limit, 8L) && !missing.empty(); H2++)
        for (long a = -H2; a <= H2; a++)
            for (long b = -H2; b <= H2; b++)
                for (long d12 = -H2; d12 <= H2; d12++)
                    for (long e13 = -H2; e13 <= H2; e13++)
                        for (long f23 = -H2; f23 <= H2; f23++) {
                            ZZ P = ZZ(a) * b - ZZ(d12) * d12;
                            if (P == 0)
                                continue;
                            ZZ Q = -ZZ(a) * f23 * f23 + 2 * ZZ(d12) * e13 * f23 - ZZ(b) * e13 * e13;
                            for (int sg : {1, -1}) {
                                ZZ num = sg * d - Q;
                                if (mod(num, P) != 0)
                                    continue;
                                try_form(TernaryForm(ZZ(a), ZZ(b), num / P, ZZ(d12), ZZ(e13), ZZ(f23)));
                            }
                        }

    if (!missing.empty()) {
        std::ostringstream os;
        os << "genus_representatives: " << missing.size() << " of " << genera.size()
           << " genera of d=" << d << " not covered (height limit " << height_limit << ")";
        throw std::runtime_error(os.str());
    }
    return out;
}

// ---- spectrum ------------------------------------------------------------

std::vector<SpectrumPoint> spectrum(int top_k, long bound, long max_radius, int threads)
{
    // enumerate candidate forms with a cheap upper bound for kappa, keep the
    // plausible mu range, then certify exactly and deduplicate by genus
    const double mu_floor = 0.04; // safely below 16/245
    long side = 2 * bound + 1;
    long long total = 1;
    for (int i = 0; i < 6; i++)
        total *= side;

    struct Cand {
        long e[6];
        long long det;
        long kub;
    };
    std::vector<std::vector<Cand>> partial((size_t)std::max(1, threads));
    std::atomic<long long> next{0};
    auto work = [&](int tid) {
        std::vector<Cand>& out = partial[(size_t)tid];
        const long probe[13][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, -1, 0},
                                   {1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}, {1, 1, 1},
                                   {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};
        for (;;) {
            long long lo = next.fetch_add(8192);
            if (lo >= total)
                return;
            long long hi = std::min(total, lo + 8192);
            for (long long idx = lo; idx < hi; idx++) {
                long long t = idx;
                long e[6];
                for (int i = 0; i < 6; i++) {
                    e[i] = (long)(t % side) - bound;
                    t /= side;
                }
                // Gram rows: [e0 e3 e4; e3 e1 e5; e4 e5 e2]
                long long a = e[0], b = e[1], c = e[2], d = e[3], f = e[4], g = e[5];
                long long det = a * (b * c - g * g) - d * (d * c - g * f) + f * (d * g - b * f);
                if (det == 0)
                    continue;
                long long ad = det < 0 ? -det : det;
                long kub = 0;
                bool any = false;
                for (auto& p : probe) {
                    long long v = a * p[0] * p[0] + b * p[1] * p[1] + c * p[2] * p[2] +
                                  2 * (d * p[0] * p[1] + f * p[0] * p[2] + g * p[1] * p[2]);
                    if (v == 0) {
                        any = false; // isotropic vector: not a spectrum point
                        break;
                    }
                    long long av = v < 0 ? -v : v;
                    if (!any || av < kub) {
                        kub = (long)av;
                        any = true;
                    }
                }
                if (!any)
                    continue;
                double mu_ub = (double)kub * kub * kub / (double)ad;
                if (mu_ub < mu_floor)
                    continue;
                Cand cd;
                for (int i = 0; i < 6; i++)
                    cd.e[i] = e[i];
                cd.det = det;
                cd.kub = kub;
                out.push_back(cd);
            }
        }
    };
    {
        std::vector<std::thread> ts;
        for (int t = 0; t < std::max(1, threads); t++)
            ts.emplace_back(work, t);
        for (auto& t : ts)
            t.join();
    }

    // dedup by genus, then certify
    std::map<std::string, SpectrumPoint> by_genus;
    for (auto& part : partial)
        for (auto& cd : part) {
            TernaryForm f(ZZ(cd.e[0]), ZZ(cd.e[1]), ZZ(cd.e[2]), ZZ(cd.e[3]), ZZ(cd.e[4]), ZZ(cd.e[5]));
            try {
                if (f.content() != 1)
                    continue;
            } catch (...) {
                continue;
            }
            if (!signature(f).indefinite_nonsingular())
                continue;
            if (is_isotropic_global(f))
                continue;
            TernaryForm fn = f;
            sign_normalize(fn);
            GenusSymbol g;
            g.d = fn.determinant();
            g.locals.push_back(canonical_local_class(fn, ZZ(2)));
            for (auto& [p, e] : factor(g.d))
                if (p != 2)
                    g.locals.push_back(canonical_local_class(fn, p));
            std::string key = g.key();
            auto it = by_genus.find(key);
            if (it != by_genus.end())
                continue;
            KappaResult kr = kappa(f, max_radius);
            SpectrumPoint sp;
            sp.kappa = kr.value;
            sp.d = abs(ZZ((long)cd.det));
            sp.mu = QQ(kr.value * kr.value * kr.value) / QQ(sp.d);
            sp.representative = f;
            sp.exact = kr.exact();
            sp.multiplicity = class_count(g);
            sp.genus_key = key;
            by_genus.emplace(key, std::move(sp));
        }

    std::vector<SpectrumPoint> rows;
    for (auto& [k, sp] : by_genus)
        rows.push_back(sp);
    std::sort(rows.begin(), rows.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.mu != b.mu)
            return a.mu > b.mu;
        return a.d < b.d;
    });
    if ((int)rows.size() > top_k)
        rows.resize((size_t)top_k);
    return rows;
}

// ---- genus cache ----------------------------------------------------------

std::string GenusCache::shard_path(long shard_start) const
{
    std::ostringstream os;
    os << dir_ << "/genus-" << shard_start << ".bin";
    return os.str();
}

bool GenusCache::load_shard(long shard_start, std::map<long, GenusCacheEntry>& out) const
{
    std::ifstream in(shard_path(shard_start), std::ios::binary);
    if (!in)
        return false;
    char magic[4];
    uint32_t version, size_, count;
    uint64_t start;
    in.read(magic, 4);
    in.read((char*)&version, 4);
    in.read((char*)&start, 8);
    in.read((char*)&size_, 4);
    in.read((char*)&count, 4);
    if (!in || std::memcmp(magic, "TQFG", 4) != 0 || version != 1 || (long)start != shard_start)
        return false;
    for (uint32_t i = 0; i < count; i++) {
        uint64_t d;
        uint32_t ng;
        in.read((char*)&d, 8);
        in.read((char*)&ng, 4);
        GenusCacheEntry e;
        for (uint32_t j = 0; j < ng; j++) {
            uint32_t klen, h;
            in.read((char*)&klen, 4);
            std::string key((size_t)klen, '\0');
            in.read(key.data(), klen);
            in.read((char*)&h, 4);
            e.genera.push_back({std::move(key), (long)h});
        }
        if (!in)
            return false;
        out[(long)d] = std::move(e);
    }
    return true;
}

void GenusCache::write_shard(long shard_start, const std::map<long, GenusCacheEntry>& entries) const
{
    std::filesystem::create_directories(dir_);
    std::string tmp = shard_path(shard_start) + ".tmp";
    {
        std::ofstream outf(tmp, std::ios::binary | std::ios::trunc);
        outf.write("TQFG", 4);
        uint32_t version = 1, size_ = (uint32_t)shard_size, count = (uint32_t)entries.size();
        uint64_t start = (uint64_t)shard_start;
        outf.write((char*)&version, 4);
        outf.write((char*)&start, 8);
        outf.write((char*)&size_, 4);
        outf.write((char*)&count, 4);
        for (auto& [d, e] : entries) {
            uint64_t du = (uint64_t)d;
            uint32_t ng = (uint32_t)e.genera.size();
            outf.write((char*)&du, 8);
            outf.write((char*)&ng, 4);
            for (auto& [k, h] : e.genera) {
                uint32_t klen = (uint32_t)k.size(), hu = (uint32_t)h;
                outf.write((char*)&klen, 4);
                outf.write(k.data(), (std::streamsize)k.size());
                outf.write((char*)&hu, 4);
            }
        }
    }
    std::filesystem::rename(tmp, shard_path(shard_start));
}

std::string GenusCache::export_csv(long dmax) const
{
    std::ostringstream os;
    os << "d,genus,h\n";
    for (long start = 1; start <= dmax; start += shard_size) {
        std::map<long, GenusCacheEntry> shard;
        if (!load_shard(start, shard))
            continue;
        for (auto& [d, e] : shard) {
            if (d > dmax)
                continue;
            for (auto& [k, h] : e.genera)
                os << d << ",\"" << k << "\"," << h << "\n";
        }
    }
    return os.str();
}

} // namespace tqf
