#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "pairgf/ldos.hpp"
#include "pairgf/pair_gf.hpp"
#include "selfcheck.hpp"

using json = nlohmann::ordered_json;
using namespace pairgf;

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Common {
    double ck = 1.0;
    bool expert = false;
    std::string format = "csv";
    std::string out;
    int threads = 0;
};

std::vector<double> make_grid(double lo, double hi, int n, bool log) {
    if (n < 1) throw ConfigError("--n must be at least 1");
    if (log && !(lo > 0.0)) throw ConfigError("--log needs a positive lower bound");
    if (n > 1 && !(hi > lo)) throw ConfigError("grid upper bound must exceed the lower bound");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : double(i) / (n - 1);
        g[std::size_t(i)] = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    if (n > 1) g.back() = hi;
    return g;
}

void check_increasing(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw ConfigError(std::string(what) + " grid is empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw ConfigError(std::string(what) + " grid must be strictly increasing");
    for (double x : g)
        if (!std::isfinite(x)) throw ConfigError(std::string(what) + " grid has a non-finite value");
}

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("PAIRGF_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// Rows land in input order whatever the thread count.
template <class F>
std::vector<std::vector<double>> parallel_rows(std::size_t n, int threads, F row) {
    std::vector<std::vector<double>> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex lock;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = row(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min<int>(threads, int(n)); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e", x == 0.0 ? 0.0 : x);
    return buf;
}

json header(const std::string& command, const std::string& units, const json& config) {
    json h;
    h["program"] = "pairgf";
    h["version"] = PAIRGF_VERSION;
    h["command"] = command;
    h["units"] = units;
    h["config"] = config;
    return h;
}

void emit(const Common& c, const json& head, const Table& t) {
    std::ostringstream os;
    if (c.format == "json") {
        json doc;
        doc["header"] = head;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json o;
            for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
            rows.push_back(o);
        }
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
    } else {
        os << "# " << head["program"].get<std::string>() << " " << head["version"].get<std::string>() << "\n";
        os << "# command: " << head["command"].get<std::string>() << "\n";
        os << "# units: " << head["units"].get<std::string>() << "\n";
        os << "# config: " << head["config"].dump() << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
            os << "\n";
        }
    }
    if (c.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + c.out);
        f << os.str();
    }
}

void add_common(CLI::App* app, Common& c) {
    auto* expert = app->add_flag("--expert", c.expert, "Allow overriding physical constants");
    app->add_option("--ck", c.ck, "Relative kinetic coefficient c_k (default 1; 0.5 for hydrogen-like)")
        ->needs(expert)
        ->check(CLI::PositiveNumber);
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", c.out, "Output file (default stdout)");
    app->add_option("--threads", c.threads, "Worker threads (default PAIRGF_THREADS or 1)")->check(CLI::NonNegativeNumber);
}

struct FigR0 {
    double emin = 0.01, emax = 100.0;
    int n = 60;
    bool log = false;
    std::vector<double> energy;
    std::optional<double> cutoff;
};

void run_fig_r0(const Common& c, const FigR0& f) {
    const std::vector<double> E = f.energy.empty() ? make_grid(f.emin, f.emax, f.n, f.log) : f.energy;
    check_increasing(E, "energy");
    if (f.cutoff && !(*f.cutoff > 0.0)) throw ConfigError("--cutoff must be positive");

    pair::DosOptions dopt;
    dopt.ck = c.ck;
    // free pair at the origin for general kinetic coefficients
    const double free_scale = 1.0 / (128.0 * pi * pi * pi * std::pow(dopt.cK * c.ck, 1.5));

    Table t;
    t.columns = {"E", "rho0", "rho_f0", "rho_c0", "rho_e0"};
    if (f.cutoff) t.columns.push_back("re_g0");
    t.rows = parallel_rows(E.size(), resolve_threads(c.threads), [&](std::size_t i) {
        const double e = E[i];
        std::vector<double> row{e, pair::g0_dos(e, dopt), e > 0 ? e * e * free_scale : 0.0, 0.0, 0.0};
        if (e > 0) {
            const auto s = ldos::rho_single_refs(e, c.ck);
            row[3] = s.rho_c0;
            row[4] = s.rho_e0;
        }
        if (f.cutoff) row.push_back(pair::g0_real(e, *f.cutoff, dopt));
        return row;
    });

    json cfg;
    cfg["energies"] = E;
    cfg["log"] = f.log;
    cfg["cutoff"] = f.cutoff ? json(*f.cutoff) : json(nullptr);
    cfg["cK"] = dopt.cK;
    cfg["ck"] = c.ck;
    emit(c, header("fig-r0", "E [Hartree]; rho0, rho_f0, re_g0 [r_B^-6]; rho_c0, rho_e0 [r_B^-3]", cfg), t);
}

struct LdosCmd {
    std::vector<double> energy, r;
    std::optional<double> rmin, emin, emax;
    double rmax = 8.0;
    int n = 80;
    bool log = false, split = false, pseudo = false;
};

void run_ldos(const Common& c, const LdosCmd& l) {
    std::vector<double> E, R;
    if (!l.r.empty()) {
        R = l.r;
        if (!l.energy.empty()) E = l.energy;
        else if (l.emin && l.emax) E = make_grid(*l.emin, *l.emax, l.n, l.log);
        else throw ConfigError("ldos needs --energy or --emin/--emax");
    } else {
        if (l.energy.empty()) throw ConfigError("ldos needs --energy (or --r with an energy grid)");
        E = l.energy;
        if (!(l.rmax > 0.0)) throw ConfigError("--rmax must be positive");
        R = l.rmin ? make_grid(*l.rmin, l.rmax, l.n, l.log) : make_grid(l.rmax / l.n, l.rmax, l.n, l.log);
    }
    check_increasing(E, "energy");
    check_increasing(R, "r");
    for (double r : R)
        if (!(r > 0.0)) throw ConfigError("r values must be positive");

    ldos::LdosOptions opt;
    opt.ck = c.ck;
    const int threads = resolve_threads(c.threads);
    const auto pts = ldos::rho_grid(R, E, opt, threads);

    Table t;
    if (l.pseudo) t.columns = {"r", "E", "rho_minus"};
    else t.columns = {"r", "E", "rho_plus", "rho_minus", "rho_total", "rho_spinless"};
    if (l.split && !l.pseudo) {
        t.columns.push_back("rho_even");
        t.columns.push_back("rho_odd");
    }
    for (const auto& p : pts) {
        if (l.pseudo) {
            t.rows.push_back({p.r, p.E, p.rho_minus});
            continue;
        }
        std::vector<double> row{p.r, p.E, p.rho_plus, p.rho_minus, p.rho_total, p.rho_spinless};
        if (l.split) {
            row.push_back(p.rho_even);
            row.push_back(p.rho_odd);
        }
        t.rows.push_back(row);
    }

    json cfg;
    cfg["energies"] = E;
    cfg["r"] = R;
    cfg["split"] = l.split;
    cfg["pseudo"] = l.pseudo;
    cfg["cK"] = opt.cK;
    cfg["ck"] = c.ck;
    cfg["rel_tol"] = opt.rel_tol;
    emit(c, header("ldos", "r [r_B]; E [Hartree]; rho_* [r_B^-6]", cfg), t);
}

int run_selfcheck(const Common& c, bool strict, bool fault) {
    special::reset_wronskian_warning_count();
    const auto checks = cli::run_selfcheck(strict, fault);
    bool all = true;
    json report;
    report["program"] = "pairgf";
    report["version"] = PAIRGF_VERSION;
    report["strict"] = strict;
    json arr = json::array();
    for (const auto& k : checks) {
        all = all && k.pass;
        json o;
        o["name"] = k.name;
        o["max_residual"] = k.max_residual;
        o["tolerance"] = k.tolerance;
        o["pass"] = k.pass;
        arr.push_back(o);
        if (k.name == "wronskian") report["wronskian_max_residual"] = k.max_residual;
    }
    report["checks"] = arr;
    report["all_pass"] = all;
    const std::string text = report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + c.out);
        f << text;
    }
    return all ? 0 : exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's function and LDOS of two repulsive Coulomb electrons"};
    app.set_version_flag("--version", std::string("pairgf ") + PAIRGF_VERSION);
    app.require_subcommand(1);

    Common common;
    FigR0 fig;
    auto* cfig = app.add_subcommand("fig-r0", "Spectral density at R = r = 0 with the reference curves");
    add_common(cfig, common);
    cfig->add_option("--emin", fig.emin, "Lowest energy [Hartree]");
    cfig->add_option("--emax", fig.emax, "Highest energy [Hartree]");
    cfig->add_option("--n", fig.n, "Number of energies");
    cfig->add_flag("--log", fig.log, "Logarithmic energy grid");
    cfig->add_option("--energy", fig.energy, "Explicit energies (overrides the grid)");
    cfig->add_option("--cutoff", fig.cutoff, "Band cutoff W [Hartree]; adds the real part re_g0");

    LdosCmd ld;
    auto* cld = app.add_subcommand("ldos", "LDOS against inter-electron distance at R = 0");
    add_common(cld, common);
    cld->add_option("--energy", ld.energy, "Energies [Hartree]");
    cld->add_option("--r", ld.r, "Explicit distances [r_B] (energy grid mode)");
    cld->add_option("--rmin", ld.rmin, "Smallest distance (default rmax / n)");
    cld->add_option("--rmax", ld.rmax, "Largest distance [r_B]");
    cld->add_option("--emin", ld.emin, "Lowest energy for an energy grid");
    cld->add_option("--emax", ld.emax, "Highest energy for an energy grid");
    cld->add_option("--n", ld.n, "Grid size");
    cld->add_flag("--log", ld.log, "Logarithmic grid");
    cld->add_flag("--split", ld.split, "Add the singlet (even) and triplet (odd) densities");
    cld->add_flag("--pseudo", ld.pseudo, "Emit only the pseudo-LDOS rho_minus");

    bool strict = false, fault = false;
    auto* csc = app.add_subcommand("selfcheck", "Run the built-in oracle suite");
    add_common(csc, common);
    csc->add_flag("--strict", strict, "Also run the coincidence extrapolation check");
    csc->add_flag("--inject-fault", fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*cfig) run_fig_r0(common, fig);
        else if (*cld) run_ldos(common, ld);
        else if (*csc) return run_selfcheck(common, strict, fault);
    } catch (const ConfigError& e) {
        std::cerr << "pairgf: " << e.what() << "\n";
        return exit_config;
    } catch (const DomainError& e) {
        std::cerr << "pairgf: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "pairgf: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return 0;
}
