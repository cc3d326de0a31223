// Command-line front end: scenario orchestration over the kinetic and
// Hamiltonian-lab modules, deterministic CSV artifacts, and a manifest per
// run directory.  Exit codes: 0 success, 1 computation failure, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "iwt/config.hpp"
#include "iwt/csv.hpp"
#include "iwt/dispersion.hpp"
#include "iwt/gm.hpp"
#include "iwt/hamlab/integrate.hpp"
#include "iwt/kinetic.hpp"
#include "iwt/triads.hpp"
#include "iwt/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace iwt;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string output;
    int threads = -1;  // -1 = not given
    bool deterministic = false;
};

RunConfig load_config(const CliOverrides& cli) {
    RunConfig config = cli.config_path.empty() ? RunConfig{} : parse_config_file(cli.config_path);
    if (!cli.output.empty()) config.run.output = cli.output;
    if (const char* env = std::getenv("IWT_THREADS")) {
        try {
            config.run.threads = std::stoi(env);
        } catch (const std::exception&) {
            throw ConfigError("IWT_THREADS must be an integer");
        }
    }
    if (cli.threads >= 0) config.run.threads = cli.threads;
    if (cli.deterministic) config.run.deterministic = true;
    config.validate();
    return config;
}

void apply_threading(const RunConfig& config) {
#ifdef _OPENMP
    if (config.run.deterministic)
        omp_set_num_threads(1);
    else if (config.run.threads > 0)
        omp_set_num_threads(config.run.threads);
#endif
}

bool parallel_enabled(const RunConfig& config) { return !config.run.deterministic; }

fs::path scenario_dir(const RunConfig& config, const std::string& scenario) {
    fs::path dir = fs::path(config.run.output) / scenario;
    fs::create_directories(dir);
    return dir;
}

void write_manifest(const fs::path& dir, const RunConfig& config, const std::string& scenario) {
    std::ofstream out(dir / "manifest.txt");
    out << "# iwt " << version << "\n# scenario: " << scenario << "\n" << to_text(config);
}

std::unique_ptr<SpectrumEvaluator> make_law_evaluator(const RunConfig& config) {
    if (config.law.equipartition)
        return std::make_unique<EquipartitionEvaluator>(config.physical);
    return std::make_unique<PowerLawEvaluator>(
        PowerLawSpectrum{config.law.amplitude, config.law.x, config.law.y});
}

void write_spectrum_snapshot(const fs::path& path, const WaveactionSpectrum& s) {
    std::ofstream out(path);
    const SpectralGrid& g = s.grid();
    out << "# k_axis:";
    for (double k : g.k_axis()) out << ' ' << format_g17(k);
    out << "\n# m_axis:";
    for (double m : g.m_axis()) out << ' ' << format_g17(m);
    out << '\n';
    for (std::size_t ik = 0; ik < g.nk(); ++ik) {
        for (std::size_t im = 0; im < g.nm(); ++im)
            out << (im ? " " : "") << format_g17(s.value(ik, im));
        out << '\n';
    }
}

void write_field_snapshot(const fs::path& path, const hamlab::FieldState& state) {
    std::ofstream out(path);
    const hamlab::BoxGrid& g = state.grid;
    out << "# nx ny nr: " << g.nx << ' ' << g.ny << ' ' << g.nr << '\n';
    out << "# Lx Ly Lr: " << format_g17(g.Lx) << ' ' << format_g17(g.Ly) << ' '
        << format_g17(g.Lr) << '\n';
    for (const char* name : {"a", "b"}) {
        out << "# field: " << name << '\n';
        const hamlab::RealField& f = (name[0] == 'a') ? state.a : state.b;
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            for (std::size_t j = 0; j < g.ny * g.nr; ++j)
                out << (j ? " " : "") << format_g17(f[ix * g.ny * g.nr + j]);
            out << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// scenarios

void run_dispersion(const RunConfig& config, const fs::path& dir) {
    const SpectralGrid grid = config.grid.build();
    CsvWriter csv(dir / "dispersion.csv", {"k", "m", "omega"});
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) {
            const Wavevector p = grid.node(ik, im);
            csv.row({p.k, p.m, omega(p, config.physical)});
        }
}

void run_triads_dump(const RunConfig& config, const fs::path& dir) {
    std::mt19937 rng(config.run.seed);
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::bernoulli_distribution sign;
    const TriadOptions opts{config.triads.high_frequency, config.quad.k_prefactor_quarter};
    CsvWriter csv(dir / "triads.csv",
                  {"k1", "m1", "k2", "m2", "k3", "m3", "I", "J", "K_imag", "v_squared"});
    for (std::size_t i = 0; i < config.triads.count; ++i) {
        const double a2 = ang(rng), a3 = ang(rng), r2 = mag(rng), r3 = mag(rng);
        double m2 = mag(rng) * (sign(rng) ? 1.0 : -1.0);
        double m3 = mag(rng) * (sign(rng) ? 1.0 : -1.0);
        if (m2 + m3 == 0.0) m3 *= 1.5;
        const Triad t = Triad::from_vectors({r2 * std::cos(a2), r2 * std::sin(a2)},
                                            {r3 * std::cos(a3), r3 * std::sin(a3)}, m2, m3);
        csv.row({t.k1(), t.m1(), t.k2(), t.m2(), t.k3(), t.m3(),
                 I_term(t, config.physical, opts), J_term(t, config.physical, opts),
                 K_term_imag(t, config.physical, opts), v_squared(t, config.physical, opts)});
    }
}

void run_collision_scan(const RunConfig& config, const fs::path& dir) {
    const SpectralGrid grid = config.grid.build();
    const QuadratureSettings quad = config.quadrature();
    const auto n = make_law_evaluator(config);
    std::vector<Wavevector> nodes;
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) nodes.push_back(grid.node(ik, im));
    const auto results =
        collision_rates(*n, nodes, config.physical, quad, parallel_enabled(config));
    CsvWriter csv(dir / "collision.csv", {"k", "m", "rate", "gain", "loss1", "loss2"});
    for (const CollisionResult& r : results)
        csv.row({r.node.k, r.node.m, r.rate, r.branch_gain, r.branch_loss1, r.branch_loss2});
}

void run_exponent_scan(const RunConfig& config, const fs::path& dir) {
    const SpectralGrid grid = config.grid.build();
    const QuadratureSettings quad = config.quadrature();
    auto linspace = [](double lo, double hi, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        return v;
    };
    const auto probes = probe_nodes(grid, config.scan.probes_k, config.scan.probes_m);
    const ExponentScan scan = stationarity_scan(
        config.scan.amplitude, linspace(config.scan.x_min, config.scan.x_max, config.scan.nx),
        linspace(config.scan.y_min, config.scan.y_max, config.scan.ny), probes, config.physical,
        quad, parallel_enabled(config));
    CsvWriter csv(dir / "residuals.csv", {"x", "y", "residual_norm"});
    for (std::size_t ix = 0; ix < scan.xs.size(); ++ix)
        for (std::size_t iy = 0; iy < scan.ys.size(); ++iy)
            csv.row({scan.xs[ix], scan.ys[iy], scan.at(ix, iy)});
    std::cout << "residual minimum " << format_g17(scan.best_residual) << " at (x, y) = ("
              << scan.best_x << ", " << scan.best_y << ")\n";
}

void run_locality(const RunConfig& config, const fs::path& dir) {
    const SpectralGrid grid = config.grid.build();
    const QuadratureSettings quad = config.quadrature();
    const std::size_t ik =
        config.locality.node_ik < 0 ? grid.nk() / 2 : static_cast<std::size_t>(config.locality.node_ik);
    const std::size_t im =
        config.locality.node_im < 0 ? grid.nm() / 2 : static_cast<std::size_t>(config.locality.node_im);
    const auto n = make_law_evaluator(config);
    const LocalityTable table = locality_check(*n, grid.node(ik, im), config.physical, quad,
                                               config.locality.factors, config.locality.tolerance);
    CsvWriter csv(dir / "locality.csv", {"cutoff", "rate"});
    for (const LocalityEntry& e : table.entries) csv.row({e.factor, e.result.rate});
    std::cout << (table.converged ? "converged" : "not converged") << " at tolerance "
              << config.locality.tolerance << "\n";
}

void run_evolve(const RunConfig& config, const fs::path& dir) {
    const SpectralGrid grid = config.grid.build();
    const QuadratureSettings quad = config.quadrature();
    const auto n = make_law_evaluator(config);
    std::vector<double> values(grid.size());
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) {
            const Wavevector p = grid.node(ik, im);
            double v = (*n)(p.k, p.m);
            if (config.evolve.bump_amplitude > 0.0) {
                const double lk = std::log(p.k / config.evolve.bump_k);
                const double lm = std::log(p.m / config.evolve.bump_m);
                const double w2 = config.evolve.bump_width * config.evolve.bump_width;
                v *= 1.0 + config.evolve.bump_amplitude *
                               std::exp(-(lk * lk + lm * lm) / (2.0 * w2));
            }
            values[grid.flat_index(ik, im)] = v;
        }

    EvolveOptions opts;
    opts.dt = config.evolve.dt;
    opts.steps = config.evolve.steps;
    opts.rate_cap = config.evolve.rate_cap;
    opts.stiffness_cap = config.evolve.stiffness_cap;
    opts.snapshot_every = config.evolve.snapshot_every;
    opts.parallel = parallel_enabled(config);
    const Trajectory traj =
        evolve(WaveactionSpectrum(grid, std::move(values)), config.physical, quad, opts);

    CsvWriter csv(dir / "series.csv", {"t", "energy", "max_abs_rate", "clip_events"});
    for (const EvolveSample& s : traj.samples)
        csv.row({s.time, s.energy, s.max_abs_rate, static_cast<double>(s.clip_events)});
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "spectrum_%04zu.txt", i);
        write_spectrum_snapshot(dir / name, traj.snapshots[i].second);
    }
}

void run_gm_compare(const RunConfig& config, const fs::path& dir) {
    GMParams gm{config.gm.E, config.gm.m_star, config.physical};
    gm.validate();
    const SpectralGrid grid = config.grid.build();
    CsvWriter csv(dir / "gm_compare.csv", {"k", "m", "gm_density", "wt_density", "ratio"});
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) {
            const Wavevector p = grid.node(ik, im);
            const double a = gm_energy_density(p.k, p.m, gm);
            const double b = wt_energy_density(p.k, p.m, config.gm.wt_amplitude);
            csv.row({p.k, p.m, a, b, a / b});
        }

    const auto gm_fit = slope_fit_function(
        [&](double k, double m) { return gm_energy_density(k, m, gm); }, config.gm.fit_k_lo,
        config.gm.fit_k_hi, config.gm.fit_m_lo, config.gm.fit_m_hi, config.gm.fit_nk,
        config.gm.fit_nm);
    const auto wt_fit = slope_fit_function(
        [&](double k, double m) { return wt_energy_density(k, m, config.gm.wt_amplitude); },
        config.gm.fit_k_lo, config.gm.fit_k_hi, config.gm.fit_m_lo, config.gm.fit_m_hi,
        config.gm.fit_nk, config.gm.fit_nm);
    const double moored_slope = local_log_slope(
        [&](double w) { return gm_moored(w, gm); }, 30.0 * config.physical.f);

    std::ofstream slopes(dir / "slopes.txt");
    slopes << "gm_k_slope " << format_g17(gm_fit.x_slope) << "\n"
           << "gm_m_slope " << format_g17(gm_fit.y_slope) << "\n"
           << "gm_fit_rms " << format_g17(gm_fit.rms_residual) << "\n"
           << "wt_k_slope " << format_g17(wt_fit.x_slope) << "\n"
           << "wt_m_slope " << format_g17(wt_fit.y_slope) << "\n"
           << "moored_slope_at_30f " << format_g17(moored_slope) << "\n";
}

void run_hamlab(const RunConfig& config, const fs::path& dir) {
    hamlab::ModelConfig mc;
    mc.kind = hamlab::model_kind_from_string(config.hamlab.model);
    mc.params = config.physical;
    mc.q0 = config.hamlab.q0;
    const hamlab::BoxGrid box{config.hamlab.nx, config.hamlab.ny, config.hamlab.nr};
    const hamlab::Model model(mc, box);

    hamlab::IntegrateOptions opts;
    opts.dt = config.hamlab.dt;
    opts.steps = config.hamlab.steps;
    opts.scheme = hamlab::scheme_from_string(config.hamlab.scheme);
    opts.snapshot_every = config.hamlab.snapshot_every;

    const auto traj =
        integrate(model, model.eigenmode(config.hamlab.mode, config.hamlab.amplitude), opts);

    CsvWriter csv(dir / "energy.csv", {"step", "t", "H", "rel_drift"});
    const double h0 = traj.energies.front();
    const double href = std::max(std::fabs(h0), 1e-300);
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv.row({static_cast<double>(i), traj.times[i], traj.energies[i],
                 std::fabs(traj.energies[i] - h0) / href});
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "fields_%04zu.txt", i);
        write_field_snapshot(dir / name, traj.snapshots[i].second);
    }
    std::cout << "max relative H drift " << format_g17(traj.max_rel_drift) << "\n";
}

std::string default_config_text() {
    return to_text(RunConfig{});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iwt: long-internal-wave turbulence toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Configuration defaults (override any subset via --config):\n" +
               default_config_text());

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "configuration file");
    app.add_option("--output", cli.output, "output directory (overrides run.output)");
    app.add_option("--threads", cli.threads,
                   "worker threads; overrides the IWT_THREADS environment variable");
    app.add_flag("--deterministic", cli.deterministic,
                 "serial evaluation order for bit-identical outputs");

    std::string scenario;
    auto make = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->callback([&scenario, name] { scenario = name; });
        return sub;
    };
    make("dispersion", "dump omega(k, m) over the spectral grid");
    CLI::App* triads_cmd = app.add_subcommand("triads", "triad interaction coefficients");
    triads_cmd->require_subcommand(1);
    triads_cmd->add_subcommand("dump", "random resonant triads with I, J, K, |V|^2")
        ->callback([&scenario] { scenario = "triads-dump"; });
    CLI::App* collision_cmd = app.add_subcommand("collision", "collision-integral evaluations");
    collision_cmd->require_subcommand(1);
    collision_cmd->add_subcommand("scan", "dn/dt over every grid node")
        ->callback([&scenario] { scenario = "collision-scan"; });
    make("exponent-scan", "stationarity residual over a power-law exponent window");
    make("locality", "collision rate under expanding integration cutoffs");
    make("evolve", "explicit time evolution of the wave-action spectrum");
    CLI::App* gm_cmd = app.add_subcommand("gm", "Garrett-Munk comparisons");
    gm_cmd->require_subcommand(1);
    gm_cmd->add_subcommand("compare", "GM vs wave-turbulence densities and slopes")
        ->callback([&scenario] { scenario = "gm-compare"; });
    CLI::App* hamlab_cmd = app.add_subcommand("hamlab", "Hamiltonian pseudo-spectral lab");
    hamlab_cmd->require_subcommand(1);
    hamlab_cmd->add_subcommand("run", "integrate a model and log the Hamiltonian")
        ->callback([&scenario] { scenario = "hamlab-run"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig config;
    try {
        config = load_config(cli);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    apply_threading(config);

    const fs::path dir = scenario_dir(config, scenario);
    try {
        write_manifest(dir, config, scenario);
        if (scenario == "dispersion") run_dispersion(config, dir);
        else if (scenario == "triads-dump") run_triads_dump(config, dir);
        else if (scenario == "collision-scan") run_collision_scan(config, dir);
        else if (scenario == "exponent-scan") run_exponent_scan(config, dir);
        else if (scenario == "locality") run_locality(config, dir);
        else if (scenario == "evolve") run_evolve(config, dir);
        else if (scenario == "gm-compare") run_gm_compare(config, dir);
        else if (scenario == "hamlab-run") run_hamlab(config, dir);
        else {
            std::cerr << "unknown scenario\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::ofstream diag(dir / "error.txt");
        diag << e.what() << "\n";
        return 1;
    }
    return 0;
}
