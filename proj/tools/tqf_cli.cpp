// Command-line driver for the ternary quadratic form toolkit.
//
// Forms are given as six integers "f11 f22 f33 f12 f13 f23" in the matrix
// (Gaussian) convention F(x) = f11 x1^2 + f22 x2^2 + f33 x3^2
// + 2 f12 x1 x2 + 2 f13 x1 x3 + 2 f23 x2 x3.
#include <CLI11.hpp>
#include <json.hpp>

#include "tqf/count.hpp"

#include <fstream>
#include <iostream>
#include <thread>

using namespace tqf;
using nlohmann::json;

namespace {

struct Global {
    int threads = (int)std::thread::hardware_concurrency();
    std::string cache_dir;
    long precision = 64;
    std::string out;
    std::string format = "json";
    bool strict = false;
};

void emit(const Global& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(g.out);
        f << text << "\n";
    }
}

void emit_report(const Global& g, const CountReport& rep)
{
    emit(g, g.format == "csv" ? rep.to_csv() : rep.to_json());
}

json kappa_json(const KappaResult& k)
{
    json j;
    j["value"] = k.value.get_str();
    if (k.witness) {
        j["witness"] = {(*k.witness)[0].get_str(), (*k.witness)[1].get_str(),
                        (*k.witness)[2].get_str()};
    }
    const char* certs[] = {"Isotropic", "LocalLowerBoundMet", "JonesWatsonExcluded",
                           "UpperBoundOnly"};
    j["certificate"] = certs[(int)k.cert];
    j["radius"] = k.radius;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ternary quadratic form toolkit"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--threads", g.threads, "worker threads");
    app.add_option("--cache-dir", g.cache_dir, "genus cache directory");
    app.add_option("--precision", g.precision, "working precision in decimal digits");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--strict", g.strict, "exit 2 when a result is not certified exact");

    // spectrum
    auto* sc_spec = app.add_subcommand("spectrum", "largest Markoff spectrum points");
    int top_k = 4;
    long bound = 12, max_radius = 4096;
    sc_spec->add_option("--top", top_k, "number of points");
    sc_spec->add_option("--bound", bound, "entry bound for the search");
    sc_spec->add_option("--max-radius", max_radius, "kappa certification radius");

    // mar / mar-sf
    auto* sc_mar = app.add_subcommand("mar", "MAR(X) at genus level");
    long mar_x = 1000;
    int mar_grid = 20, mar_t = 3;
    sc_mar->add_option("--xmax", mar_x, "X");
    sc_mar->add_option("--grid", mar_grid, "grid points");
    sc_mar->add_option("--t-hard", mar_t, "largest kappa window examined");
    auto* sc_marsf = app.add_subcommand("mar-sf", "MAR(X) over squarefree determinants");
    long marsf_x = 100000;
    int marsf_grid = 20;
    sc_marsf->add_option("--xmax", marsf_x, "X");
    sc_marsf->add_option("--grid", marsf_grid, "grid points");

    // sums
    auto* sc_sumg = app.add_subcommand("sum-g", "sum of g(d) for d <= X");
    auto* sc_sumh = app.add_subcommand("sum-h", "sum of h(d) for d <= X");
    long sum_x = 10000;
    int sum_grid = 20;
    for (auto* sc : {sc_sumg, sc_sumh}) {
        sc->add_option("--xmax", sum_x, "X");
        sc->add_option("--grid", sum_grid, "grid points");
    }

    // iso-box / iso-mass
    auto* sc_ibox = app.add_subcommand("iso-box", "primitive isotropic forms in a box");
    long ibox_x = 4;
    bool ibox_check = false;
    long zero_bound = 10000, aniso_radius = 32;
    sc_ibox->add_option("--x", ibox_x, "entry bound (<= 12)");
    sc_ibox->add_flag("--crosscheck", ibox_check, "verify against an integral zero search");
    sc_ibox->add_option("--zero-bound", zero_bound, "zero search bound for isotropic forms");
    sc_ibox->add_option("--aniso-radius", aniso_radius, "zero search bound for anisotropic forms");
    auto* sc_imass = app.add_subcommand("iso-mass", "sum of D(G) nu(G) over isotropic genera");
    long imass_x = 2000;
    int imass_grid = 20;
    long imass_pmax = 100000;
    sc_imass->add_option("--xmax", imass_x, "X");
    sc_imass->add_option("--grid", imass_grid, "grid points");
    sc_imass->add_option("--pmax", imass_pmax, "prime cutoff for the density constant");

    // constants
    auto* sc_const = app.add_subcommand("constants", "density constants and Euler products");
    long const_pmax = 100000;
    sc_const->add_option("--pmax", const_pmax, "prime cutoff");

    // local-table
    auto* sc_lt = app.add_subcommand("local-table", "local class table at p");
    long lt_p = 2;
    int lt_vmax = 6;
    sc_lt->add_option("--p", lt_p, "prime");
    sc_lt->add_option("--vmax", lt_vmax, "largest valuation of the determinant");

    // kappa
    auto* sc_kappa = app.add_subcommand("kappa", "minimum of |F| with certificate");
    std::string kf;
    long k_radius = 4096;
    sc_kappa->add_option("--form", kf, "six integers")->required();
    sc_kappa->add_option("--max-radius", k_radius, "search radius cap");

    // genera
    auto* sc_gen = app.add_subcommand("genera", "genera of determinant d");
    long gen_d = 1;
    sc_gen->add_option("--d", gen_d, "determinant")->required();

    // mass
    auto* sc_mass = app.add_subcommand("mass", "local masses and Siegel mass of a form");
    std::string mf;
    sc_mass->add_option("--form", mf, "six integers")->required();

    // cache-export
    auto* sc_ce = app.add_subcommand("cache-export", "export cached genus records as CSV");
    long ce_dmax = 1000;
    sc_ce->add_option("--dmax", ce_dmax, "largest determinant");

    CLI11_PARSE(app, argc, argv);
    Real::set_precision_digits(g.precision);
    int exit_code = 0;

    try {
        if (sc_spec->parsed()) {
            auto rows = spectrum(top_k, bound, max_radius, g.threads);
            json out = json::array();
            bool all_exact = true;
            for (auto& r : rows) {
                json j;
                j["mu"] = r.mu.get_str();
                j["mu_real"] = r.mu.get_d();
                j["kappa"] = r.kappa.get_str();
                j["d"] = r.d.get_str();
                j["form"] = r.representative.to_line();
                j["multiplicity"] = r.multiplicity;
                j["exact"] = r.exact;
                all_exact = all_exact && r.exact;
                out.push_back(j);
            }
            emit(g, out.dump(2));
            if (g.strict && !all_exact)
                exit_code = 2;
        } else if (sc_mar->parsed()) {
            CountReport rep = mar_count(mar_x, mar_grid, mar_t, g.threads);
            emit_report(g, rep);
            if (g.strict)
                for (double u : rep.uncertainty)
                    if (u > 0)
                        exit_code = 2;
        } else if (sc_marsf->parsed()) {
            emit_report(g, mar_squarefree(marsf_x, marsf_grid));
        } else if (sc_sumg->parsed()) {
            emit_report(g, sum_genera(sum_x, sum_grid, g.threads, g.cache_dir));
        } else if (sc_sumh->parsed()) {
            emit_report(g, sum_classes(sum_x, sum_grid, g.threads, g.cache_dir));
        } else if (sc_ibox->parsed()) {
            IsoBoxResult r = iso_box_count(ibox_x, g.threads, ibox_check, zero_bound, aniso_radius);
            json j;
            j["x"] = ibox_x;
            j["total_indefinite_primitive"] = r.total_forms;
            j["isotropic"] = r.isotropic;
            j["isotropic_per_x6"] = (double)r.isotropic / std::pow((double)ibox_x, 6);
            emit(g, j.dump(2));
        } else if (sc_imass->parsed()) {
            emit_report(g, iso_mass_sum(imass_x, imass_grid, imass_pmax));
        } else if (sc_const->parsed()) {
            Bounded vp = varpi(const_pmax);
            Bounded k1 = K_at_1(const_pmax);
            json j;
            j["varpi"] = {{"value", vp.value.str(30)}, {"error_bound", vp.error.str(4)}};
            j["K1"] = {{"value", k1.value.str(30)}, {"error_bound", k1.error.str(4)}};
            for (double s : {1.5, 2.0}) {
                Bounded I = dirichlet_I(Real(s), const_pmax);
                j["I"][std::to_string(s)] = {{"value", I.value.str(30)},
                                             {"error_bound", I.error.str(4)}};
            }
            emit(g, j.dump(2));
        } else if (sc_lt->parsed()) {
            std::ostringstream os;
            os << "u,v,mass_normalized,iso,symbol,count\n";
            if (lt_p == 2) {
                for (int k = 0; k <= lt_vmax; k++)
                    for (int u = 0; 2 * u <= k; u++) {
                        int v = k - 2 * u;
                        for (auto& c : local2_cell(u, v, 1)) {
                            QQ norm = 64 * c.mass / QQ(ZZ(1) << (unsigned)(u + v));
                            os << u << ',' << v << ',' << norm.get_str() << ','
                               << (c.iso ? 'Y' : 'N') << ',' << '"' << c.sym << '"' << ",1\n";
                        }
                    }
            } else {
                for (int v = 0; v <= lt_vmax; v++)
                    for (int eta : {1, -1})
                        for (auto& c : enumerate_local_classes(ZZ(lt_p), v, eta))
                            os << 0 << ',' << v << ',' << c.mass().get_str() << ','
                               << (c.isotropic() ? 'Y' : 'N') << ',' << '"' << c.symbol() << '"'
                               << ",1\n";
            }
            emit(g, os.str());
        } else if (sc_kappa->parsed()) {
            TernaryForm f = TernaryForm::parse_line(kf);
            KappaResult k = kappa(f, k_radius);
            emit(g, kappa_json(k).dump(2));
            if (g.strict && !k.exact())
                exit_code = 2;
        } else if (sc_gen->parsed()) {
            json out = json::array();
            for (auto& gs : enumerate_genera(ZZ(gen_d))) {
                json j;
                j["key"] = gs.key();
                j["isotropic"] = gs.isotropic();
                j["h"] = class_count(gs);
                j["K_star"] = local_min(gs).kstar;
                out.push_back(j);
            }
            emit(g, out.dump(2));
        } else if (sc_mass->parsed()) {
            TernaryForm f = TernaryForm::parse_line(mf);
            sign_normalize(f);
            GenusSymbol gs;
            gs.d = f.determinant();
            gs.locals.push_back(canonical_local_class(f, ZZ(2)));
            for (auto& [p, e] : factor(gs.d))
                if (p != 2)
                    gs.locals.push_back(canonical_local_class(f, p));
            json j;
            for (auto& c : gs.locals)
                j["local_masses"][c.p.get_str()] = c.mass().get_str();
            j["nu_finite_part"] = siegel_nu_finite(gs).get_str();
            j["note"] = "nu(G) = nu_finite_part * zeta(2)";
            emit(g, j.dump(2));
        } else if (sc_ce->parsed()) {
            if (g.cache_dir.empty())
                throw std::runtime_error("cache-export requires --cache-dir");
            GenusCache cache(g.cache_dir);
            emit(g, cache.export_csv(ce_dmax));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
