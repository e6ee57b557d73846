// tasks.cpp: config -> computation -> CSV for each subcommand

#include "dicke/tasks.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "dicke/classical.hpp"
#include "dicke/criticality.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/errors.hpp"
#include "dicke/observables.hpp"
#include "dicke/parallel.hpp"
#include "dicke/spectra.hpp"
#include "dicke/thermo.hpp"

namespace dicke {

namespace fs = std::filesystem;

Eigen::MatrixXd wavefunction_grid(const QuantumState& state, const std::vector<double>& phi_grid,
                                  const std::vector<double>& x_grid) {
    const int two_j = state.basis->two_j();
    if (two_j % 2 != 0) throw UnsupportedError("wave-function grid needs integer j (even 2j)");
    const int j = two_j / 2;
    const Eigen::MatrixXd t = state.amplitude_table();  // (2j+1) x n_max
    const int n_max = state.basis->n_max();
    const auto nx = static_cast<Eigen::Index>(x_grid.size());
    // c_m(x) = sum_n alpha_mn h_n(x) with the stable three-term recurrence
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(two_j + 1, nx);
    const double h0 = std::pow(std::numbers::pi, -0.25);
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        const double x = x_grid[static_cast<std::size_t>(ix)];
        double prev = 0.0;
        double cur = h0 * std::exp(-0.5 * x * x);
        for (int n = 0; n < n_max; ++n) {
            for (int k = 0; k <= two_j; ++k) c(k, ix) += t(k, n) * cur;
            const double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(n / (n + 1.0)) * prev;
            prev = cur;
            cur = next;
        }
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(phi_grid.size()), nx);
    for (std::size_t ip = 0; ip < phi_grid.size(); ++ip) {
        std::vector<std::complex<double>> phase(two_j + 1);
        for (int k = 0; k <= two_j; ++k) phase[k] = std::polar(1.0, (k - j) * phi_grid[ip]);
        for (Eigen::Index ix = 0; ix < nx; ++ix) {
            std::complex<double> psi = 0.0;
            for (int k = 0; k <= two_j; ++k) psi += phase[k] * c(k, ix);
            out(static_cast<Eigen::Index>(ip), ix) = std::norm(psi) / (2.0 * std::numbers::pi);
        }
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Context {
    const RunConfig& cfg;
    std::string section;
    fs::path out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool plot_scripts = false;
    RunManifest* manifest = nullptr;

    fs::path file(const std::string& name) const { return out_dir / name; }

    void finish(CsvWriter& w, const std::vector<std::string>& plot_columns = {}) {
        w.close();
        manifest->add_file(w.path());
        if (plot_scripts && plot_columns.size() >= 2) {
            const fs::path gp = fs::path(w.path()).replace_extension(".gp");
            std::ofstream s(gp, std::ios::binary);
            s << "set datafile separator ','\n"
              << "set key autotitle columnhead\n"
              << "plot '" << w.path().filename().string() << "' using '" << plot_columns[0]
              << "':'" << plot_columns[1] << "' with points pointtype 7 pointsize 0.3\n";
            s.close();
            manifest->add_file(gp);
        }
    }
};

CsvCell opt(const std::optional<double>& v) { return v ? CsvCell{*v} : CsvCell{std::string()}; }

struct SpectralControls {
    std::size_t k_levels = 0;
    double tol = 1e-6;
    Parity parity = Parity::both;
    TruncationControl truncation;
};

SpectralControls spectral(const Context& c, Parity default_parity = Parity::both) {
    SpectralControls s;
    const auto k = c.cfg.get_int(c.section, "k_levels");
    if (k < 1) throw ConfigError("[" + c.section + "] k_levels must be >= 1");
    s.k_levels = static_cast<std::size_t>(k);
    s.tol = c.cfg.get_double(c.section, "tol", 1e-6);
    if (!(s.tol > 0.0)) throw ConfigError("[" + c.section + "] tol must be > 0");
    try {
        s.parity = parse_parity(c.cfg.get_string(c.section, "parity", std::string(to_string(default_parity))));
    } catch (const ParameterError& e) {
        throw ConfigError("[" + c.section + "] " + e.what());
    }
    s.truncation.n_max_start = static_cast<int>(c.cfg.get_int(c.section, "n_max_start", 64));
    s.truncation.n_max_ceiling = static_cast<int>(c.cfg.get_int(c.section, "n_max_ceiling", 16384));
    return s;
}

std::vector<double> lambdas(const Context& c, const ModelParams& p) {
    return c.cfg.get_grid(c.section, "lambda_grid", std::vector<double>{p.lambda});
}

std::vector<double> energies(const Context& c, const ModelParams& p) {
    auto grid = c.cfg.get_grid(c.section, "energy_grid");
    if (c.cfg.get_bool(c.section, "energy_scaled", false))
        for (double& e : grid) e *= p.omega0 * p.j();
    return grid;
}

std::string parity_name(Parity p) { return std::string(to_string(p)); }

EigenSystem solve(Context& c, const ModelParams& p, const SpectralControls& s, bool vectors) {
    auto ctl = s.truncation;
    ctl.want_vectors = vectors;
    const auto t0 = Clock::now();
    auto es = converged_spectrum(p, s.k_levels, s.tol, s.parity, ctl);
    c.manifest->add_timing("diagonalization", seconds_since(t0));
    std::ostringstream os;
    os << "lambda=" << format_double(p.lambda);
    c.manifest->add_n_max(os.str(), es.n_max_used);
    if (es.k_converged < es.size()) {
        std::ostringstream w;
        w << "only the lowest " << es.k_converged << " of " << es.size()
          << " levels met the per-level tolerance";
        c.manifest->add_warning(w.str());
    }
    return es;
}

// ---------------------------------------------------------------------------

void task_spectrum(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    const auto grid = lambdas(c, p);
    c.cfg.check_all_used();
    std::vector<EigenSystem> results(grid.size());
    auto ctl = s.truncation;
    ctl.want_vectors = false;
    const auto t0 = Clock::now();
    parallel_for(grid.size(), c.threads, [&](std::size_t i) {
        results[i] = converged_spectrum(p.with_lambda(grid[i]), s.k_levels, s.tol, s.parity, ctl);
    });
    c.manifest->add_timing("diagonalization", seconds_since(t0));
    CsvWriter w(c.file("spectrum.csv"), {"lambda", "level_index", "parity", "energy"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        c.manifest->add_n_max("lambda=" + format_double(grid[i]), results[i].n_max_used);
        for (std::size_t l = 0; l < results[i].size(); ++l)
            w.row({grid[i], static_cast<long long>(l), parity_name(results[i].level_parity[l]),
                   results[i].energies[l]});
    }
    c.finish(w, {"lambda", "energy"});
}

void task_level_flow(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    const auto grid = lambdas(c, p);
    c.cfg.check_all_used();
    const auto t0 = Clock::now();
    const auto flow = level_flow(p, grid, s.k_levels, s.tol, s.parity, s.truncation, c.threads);
    c.manifest->add_timing("level_flow", seconds_since(t0));
    CsvWriter w(c.file("level_flow.csv"), {"lambda", "level_index", "energy", "jz", "n"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        c.manifest->add_n_max("lambda=" + format_double(grid[i]), flow.n_max_used[i]);
        for (std::size_t l = 0; l < flow.energy[i].size(); ++l)
            w.row({grid[i], static_cast<long long>(l), flow.energy[i][l], flow.jz[i][l], flow.n[i][l]});
    }
    c.finish(w, {"lambda", "energy"});
}

void task_peres(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    const int window = static_cast<int>(c.cfg.get_int(c.section, "window", 20));
    c.cfg.check_all_used();
    const auto es = solve(c, p, s, true);
    const auto jz = peres_lattice(es, Observable::Jz);
    const auto n = peres_lattice(es, Observable::n);
    const auto hint = peres_lattice(es, Observable::Hint);
    CsvWriter w(c.file("peres.csv"), {"level_index", "parity", "energy", "jz", "n", "hint"});
    for (std::size_t l = 0; l < es.size(); ++l)
        w.row({static_cast<long long>(l), parity_name(es.level_parity[l]), es.energies[l],
               jz.value[l], n.value[l], hint.value[l]});
    c.finish(w, {"energy", "jz"});
    CsvWriter ws(c.file("peres_smoothed.csv"), {"observable", "energy", "value"});
    for (const auto* lat : {&jz, &n, &hint}) {
        const auto sm = smooth_lattice(*lat, window);
        if (sm.warning) c.manifest->add_warning("smoothing window exceeds the lattice size");
        for (std::size_t i = 0; i < sm.lattice.size(); ++i)
            ws.row({std::string(to_string(lat->observable)), sm.lattice.energy[i], sm.lattice.value[i]});
    }
    c.finish(ws);
}

void task_slopes(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    const int window = static_cast<int>(c.cfg.get_int(c.section, "window", 20));
    c.cfg.check_all_used();
    const auto es = solve(c, p, s, true);
    const auto slopes = level_slope(es);
    CsvWriter w(c.file("slopes.csv"),
                {"level_index", "parity", "energy", "hellmann_feynman", "energy_form"});
    PeresLattice lat;
    lat.params = p;
    lat.observable = Observable::Hint;
    for (std::size_t l = 0; l < es.size(); ++l) {
        w.row({static_cast<long long>(l), parity_name(es.level_parity[l]), es.energies[l],
               slopes[l].hellmann_feynman, slopes[l].energy_form});
        lat.energy.push_back(es.energies[l]);
        lat.value.push_back(slopes[l].hellmann_feynman);
    }
    c.finish(w, {"energy", "hellmann_feynman"});
    const auto sm = smooth_lattice(lat, window);
    if (sm.warning) c.manifest->add_warning("smoothing window exceeds the lattice size");
    CsvWriter ws(c.file("slopes_smoothed.csv"), {"energy", "slope"});
    for (std::size_t i = 0; i < sm.lattice.size(); ++i) ws.row({sm.lattice.energy[i], sm.lattice.value[i]});
    c.finish(ws, {"energy", "slope"});
}

void task_density(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    const auto sigmas = c.cfg.get_grid(c.section, "sigma");
    const auto grid = energies(c, p);
    c.cfg.check_all_used();
    for (double sg : sigmas)
        if (!(sg > 0.0)) throw ConfigError("[density] sigma must be > 0");
    const auto es = solve(c, p, s, false);
    CsvWriter w(c.file("density.csv"), {"sigma", "energy", "rho", "drho_de"});
    for (double sg : sigmas) {
        const auto d = smoothed_density(es.energies, sg, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) w.row({sg, grid[i], d.rho[i], d.drho_de[i]});
    }
    c.finish(w, {"energy", "drho_de"});
}

void task_semiclassical_density(Context& c) {
    const auto p = c.cfg.model();
    const auto grid = lambdas(c, p);
    const auto eg = energies(c, p);
    const int n_phi = static_cast<int>(c.cfg.get_int(c.section, "n_phi", 2048));
    c.cfg.check_all_used();
    if (eg.size() < 2) throw ConfigError("[semiclassical-density] energy_grid needs >= 2 points");
    std::vector<DensityCurve> curves(grid.size());
    parallel_for(grid.size(), c.threads, [&](std::size_t i) {
        curves[i] = semiclassical_density(p.with_lambda(grid[i]), eg, n_phi);
    });
    CsvWriter w(c.file("semiclassical_density.csv"), {"lambda", "energy", "rho", "drho_de"});
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t e = 0; e < eg.size(); ++e)
            w.row({grid[i], eg[e], curves[i].rho[e], curves[i].drho_de[e]});
    c.finish(w, {"energy", "drho_de"});
}

void task_single_m_density(Context& c) {
    const auto p = c.cfg.model();
    const int M = static_cast<int>(c.cfg.get_int(c.section, "M", p.two_j));
    const auto eg = energies(c, p);
    const int n_action = static_cast<int>(c.cfg.get_int(c.section, "n_action", 4096));
    const bool quantum = c.cfg.get_bool(c.section, "quantum_levels", true);
    c.cfg.check_all_used();
    if (eg.size() < 2) throw ConfigError("[single-m-density] energy_grid needs >= 2 points");
    if (p.delta != 0.0) throw ConfigError("[single-m-density] requires delta = 0");
    const auto d = single_m_density(p, M, eg, n_action);
    CsvWriter w(c.file("single_m_density.csv"), {"energy", "rho", "drho_de"});
    for (std::size_t i = 0; i < eg.size(); ++i) w.row({eg[i], d.rho[i], d.drho_de[i]});
    c.finish(w, {"energy", "rho"});
    if (!quantum) return;
    const auto h = build_single_m_hamiltonian(p, M);
    const auto ep = diagonalize(h, h.dim(), true);
    CsvWriter wl(c.file("single_m_levels.csv"), {"level_index", "energy", "wavefunction_entropy"});
    const double ln_d = std::log(p.two_j + 1.0);
    for (Eigen::Index l = 0; l < ep.energies.size(); ++l) {
        double sw = 0.0;
        for (Eigen::Index i = 0; i < ep.vectors.rows(); ++i) {
            const double w2 = ep.vectors(i, l) * ep.vectors(i, l);
            if (w2 > 0.0) sw -= w2 * std::log(w2);
        }
        wl.row({static_cast<long long>(l), ep.energies[l], p.two_j > 0 ? sw / ln_d : 0.0});
    }
    c.finish(wl, {"energy", "wavefunction_entropy"});
}

void task_freg_map(Context& c) {
    const auto p = c.cfg.model();
    const auto grid = lambdas(c, p);
    const auto eg = energies(c, p);
    const auto n_samples = static_cast<std::size_t>(c.cfg.get_int(c.section, "n_samples", 100));
    LyapunovControl lyap;
    lyap.total_time = c.cfg.get_double(c.section, "total_time", lyap.total_time);
    lyap.renorm_interval = c.cfg.get_double(c.section, "renorm_interval", lyap.renorm_interval);
    lyap.dt = c.cfg.get_double(c.section, "dt", lyap.dt);
    lyap.threshold = c.cfg.get_double(c.section, "threshold", lyap.threshold);
    SamplingControl sampling;
    sampling.shell_width = c.cfg.get_double(c.section, "shell_width", -1.0);
    c.cfg.check_all_used();
    CsvWriter w(c.file("freg.csv"), {"lambda", "energy", "f_reg", "stderr", "n_samples"});
    const auto t0 = Clock::now();
    for (double lam : grid) {
        const auto q = p.with_lambda(lam);
        const double e_min = ground_energy(q, lam);
        for (double e : eg) {
            if (e <= e_min) continue;
            const auto r = regular_fraction(q, e, n_samples, c.seed, lyap, sampling, c.threads);
            w.row({lam, e, r.f_reg, r.std_error, static_cast<long long>(r.n_samples)});
        }
    }
    c.manifest->add_timing("orbits", seconds_since(t0));
    c.finish(w, {"energy", "f_reg"});
}

void task_thermo_phase(Context& c) {
    const auto p = c.cfg.model();
    const auto grid = lambdas(c, p);
    const auto temps = c.cfg.get_grid(c.section, "T_grid");
    c.cfg.check_all_used();
    if (!(temps.front() > 0.0)) throw ConfigError("[thermo-phase] temperatures must be > 0");
    CsvWriter w(c.file("thermo_phase.csv"),
                {"lambda", "T", "phase", "landscape_phase", "n_minima", "n_saddles", "ring"});
    CsvWriter wc(c.file("thermo_critical.csv"), {"lambda", "T_c", "T_0"});
    for (double lam : grid) {
        if (lam > 0.0) {
            const auto ct = critical_temperatures(p, lam);
            wc.row({lam, opt(ct.t_c), opt(ct.t_0)});
        }
        for (double T : temps) {
            const auto pt = thermal_phase(p, lam, T);
            long long mins = 0, saddles = 0, ring = 0;
            for (const auto& eq : pt.equilibria) {
                mins += eq.type == StationaryType::minimum;
                saddles += eq.type == StationaryType::saddle;
                ring += eq.ring;
            }
            w.row({lam, T, std::string(to_string(pt.phase)),
                   std::string(to_string(classify_landscape(pt.equilibria))), mins, saddles, ring});
        }
    }
    c.finish(w, {"lambda", "T"});
    c.finish(wc, {"lambda", "T_c"});
}

void task_critical_lines(Context& c) {
    const auto p = c.cfg.model();
    const auto grid = lambdas(c, p);
    c.cfg.check_all_used();
    const auto cs = critical_couplings(p);
    CsvWriter wc(c.file("critical_couplings.csv"), {"lambda_c", "lambda_0", "lambda_prime_c"});
    wc.row({cs.lambda_c, cs.lambda_0, cs.lambda_prime_c});
    c.finish(wc);
    CsvWriter w(c.file("critical_lines.csv"), {"lambda", "E0", "Ec1", "Ec2", "Ec3"});
    for (double lam : grid) {
        const auto e = esqpt_energies(p, lam);
        w.row({lam, ground_energy(p, lam), opt(e.e_c1), opt(e.e_c2), e.e_c3});
    }
    c.finish(w, {"lambda", "E0"});
}

void task_entanglement(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c);
    c.cfg.check_all_used();
    const auto es = solve(c, p, s, true);
    std::vector<std::array<std::optional<double>, 4>> rows(es.size());
    parallel_for(es.size(), c.threads, [&](std::size_t l) {
        const auto& st = es.states[l];
        rows[l][0] = af_entropy(st);
        rows[l][1] = wavefunction_entropy(st);
        if (p.is_symmetric() && p.n_atoms >= 2) {
            const double cc = concurrence(st, p);
            rows[l][2] = cc;
            rows[l][3] = pair_entropy(std::min(cc, p.n_atoms - 1.0), p.n_atoms);
        }
    });
    CsvWriter w(c.file("entanglement.csv"), {"level_index", "parity", "energy", "S", "S_wf", "C", "s"});
    for (std::size_t l = 0; l < es.size(); ++l)
        w.row({static_cast<long long>(l), parity_name(es.level_parity[l]), es.energies[l],
               opt(rows[l][0]), opt(rows[l][1]), opt(rows[l][2]), opt(rows[l][3])});
    c.finish(w, {"energy", "S"});
}

void task_npc(Context& c) {
    const auto p = c.cfg.model();
    const auto s = spectral(c, Parity::even);
    c.cfg.check_all_used();
    const auto es = solve(c, p, s, true);
    const auto basis = build_basis(p, es.n_max_used, s.parity);
    const auto reference = zero_plus_basis(p, basis->size(), s.parity, es.n_max_used);
    const auto nu = npc(es.states, reference);
    CsvWriter w(c.file("npc.csv"), {"level_index", "parity", "energy", "npc"});
    for (std::size_t l = 0; l < es.size(); ++l)
        w.row({static_cast<long long>(l), parity_name(es.level_parity[l]), es.energies[l], nu[l]});
    c.finish(w, {"energy", "npc"});
}

void task_wavefunction(Context& c) {
    const auto p = c.cfg.model();
    const auto levels = c.cfg.get_int_list(c.section, "levels");
    SpectralControls s;
    s.tol = c.cfg.get_double(c.section, "tol", 1e-6);
    s.parity = parse_parity(c.cfg.get_string(c.section, "parity", "both"));
    long long top = 0;
    for (long long l : levels) {
        if (l < 0) throw ConfigError("[wavefunction] level indices must be >= 0");
        top = std::max(top, l);
    }
    s.k_levels = static_cast<std::size_t>(top + 1);
    const auto phi = c.cfg.get_grid(c.section, "phi_grid");
    const auto x = c.cfg.get_grid(c.section, "x_grid");
    c.cfg.check_all_used();
    if (p.two_j % 2 != 0) throw ConfigError("[wavefunction] needs integer j (even 2j)");
    const auto es = solve(c, p, s, true);
    for (long long l : levels) {
        const auto g = wavefunction_grid(es.states[static_cast<std::size_t>(l)], phi, x);
        CsvWriter w(c.file("wavefunction_" + std::to_string(l) + ".csv"), {"phi", "x", "psi2"});
        for (std::size_t a = 0; a < phi.size(); ++a)
            for (std::size_t b = 0; b < x.size(); ++b)
                w.row({phi[a], x[b], g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))});
        c.finish(w);
    }
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
    static const std::map<std::string, std::function<void(Context&)>> r = {
        {"spectrum", task_spectrum},
        {"level-flow", task_level_flow},
        {"peres", task_peres},
        {"slopes", task_slopes},
        {"density", task_density},
        {"semiclassical-density", task_semiclassical_density},
        {"single-m-density", task_single_m_density},
        {"freg-map", task_freg_map},
        {"thermo-phase", task_thermo_phase},
        {"critical-lines", task_critical_lines},
        {"entanglement", task_entanglement},
        {"npc", task_npc},
        {"wavefunction", task_wavefunction},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry()) n.push_back(k);
        return n;
    }();
    return names;
}

std::vector<ManifestFile> run_task(const std::string& task, const RunConfig& config,
                                   const TaskOptions& options) {
    const auto it = registry().find(task);
    if (it == registry().end()) throw ConfigError("unknown task '" + task + "'");
    if (options.threads < 1) throw ConfigError("threads must be >= 1");
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + options.out_dir.string());

    std::uint64_t seed = options.seed.value_or(0);
    if (!options.seed && config.has("run", "seed")) {
        const auto s = config.get_int("run", "seed");
        if (s < 0) throw ConfigError("[run] seed must be >= 0");
        seed = static_cast<std::uint64_t>(s);
    } else if (config.has("run", "seed")) {
        config.get_int("run", "seed");  // overridden on the command line
    }
    const bool plots = config.get_bool("output", "plot_scripts", false);

    RunManifest manifest(task, config, seed, options.threads);
    Context ctx{config, task, options.out_dir, seed, options.threads, plots, &manifest};
    it->second(ctx);
    manifest.write(options.out_dir / "manifest.json");
    return manifest.files();
}

}  // namespace dicke
