// Counting drivers: spectrum points, MAR counts, genus/class number sums,
// isotropic box counts and mass sums, genus representatives, and the on-disk
// genus cache.
#ifndef TQF_COUNT_HH
#define TQF_COUNT_HH

#include "tqf/euler.hpp"
#include "tqf/minima.hpp"

#include <functional>
#include <map>

namespace tqf {

struct CountReport {
    std::vector<double> grid;
    std::vector<double> counts;
    std::vector<double> uncertainty; // optional second column
    std::vector<double> reference;
    double c1 = 0, c2 = 0;   // fit counts ~ c1 X log X + c2 X
    double c1_stderr = 0;
    std::string label;

    void fit_xlogx();
    std::string to_csv() const;
    std::string to_json() const;
};

struct SpectrumPoint {
    QQ mu;                 // kappa^3 / d
    ZZ kappa;
    ZZ d;
    TernaryForm representative;
    long multiplicity = 1; // h(G)
    bool exact = true;
    std::string genus_key;
};

// top_k points of the Markoff spectrum from forms with |entries| <= bound,
// deduplicated by genus, sorted by decreasing mu
std::vector<SpectrumPoint> spectrum(int top_k, long bound, long max_radius, int threads);

// genus-level MAR(X) over the domain d <= t_hard^3 X; the uncertainty column
// collects classes of multi-class genera whose exact kappa is not pinned
CountReport mar_count(long X, int grid_n, int t_hard, int threads);

// squarefree-restricted MAR using the exact kappa in {1, 2} split
CountReport mar_squarefree(long X, int grid_n);

// lambda(d, t) by direct genus enumeration (certified part)
std::map<long, ZZ> lambda_of_d(const ZZ& d);

CountReport sum_genera(long X, int grid_n, int threads, const std::string& cache_dir = "");
CountReport sum_classes(long X, int grid_n, int threads, const std::string& cache_dir = "");

// primitive nonsingular indefinite isotropic forms with |entries| <= X
struct IsoBoxResult {
    long long total_forms = 0;
    long long isotropic = 0;
    CountReport report;
};
IsoBoxResult iso_box_count(long X, int threads, bool crosscheck, long zero_search_bound,
                           long aniso_check_radius);

CountReport iso_mass_sum(long X, int grid_n, long varpi_pmax);

// explicit zero of f with |x| bounded, if one exists within the bound
std::optional<std::array<ZZ, 3>> isotropic_vector_search(const TernaryForm& f, long bound);

// integral representatives for every genus of determinant d (diagnostic
// failure if the height sweep cannot cover all genera)
std::map<std::string, TernaryForm> genus_representatives(const ZZ& d, long height_limit = 40);

// ---- genus cache ---------------------------------------------------------
// One binary file per shard of 1000 determinants; see genus_cache.md in the
// header comment of count.cpp for the exact record layout.
struct GenusCacheEntry {
    std::vector<std::pair<std::string, long>> genera; // (key, h)
};
class GenusCache {
public:
    explicit GenusCache(std::string dir) : dir_(std::move(dir)) {}
    bool load_shard(long shard_start, std::map<long, GenusCacheEntry>& out) const;
    void write_shard(long shard_start, const std::map<long, GenusCacheEntry>& entries) const;
    std::string shard_path(long shard_start) const;
    std::string export_csv(long dmax) const;
    static constexpr long shard_size = 1000;

private:
    std::string dir_;
};

} // namespace tqf

#endif
