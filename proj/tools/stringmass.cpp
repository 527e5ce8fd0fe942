// Command-line front end. Every subcommand reads one configuration file and
// writes CSV files into the output directory.
//
// Exit codes: 0 success, 2 configuration or invocation error, 3 numerical
// failure, 4 acceptance failure (verify only).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "stringmass/acceptance.hpp"
#include "stringmass/config_io.hpp"
#include "stringmass/control.hpp"
#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/gap_analysis.hpp"
#include "stringmass/modes.hpp"
#include "stringmass/observability.hpp"
#include "stringmass/simulator.hpp"
#include "stringmass/spectrum.hpp"

namespace fs = std::filesystem;
using namespace stringmass;

namespace {

struct Manifest {
    std::string subcommand;
    std::string config = "configs/default.json";
    std::string out = "out";
    std::optional<int> n_modes;
    std::optional<double> T;
    std::uint64_t seed = AcceptanceSettings{}.seed;
    std::optional<double> dx;
    std::optional<double> dt;
    std::optional<int> trials;

    std::string path(const std::string& name) const { return (fs::path(out) / name).string(); }
    int modes_or(int fallback) const { return n_modes.value_or(fallback); }
};

void prepare_output(const Manifest& m)
{
    std::error_code ec;
    fs::create_directories(m.out, ec);
    if (ec || !fs::is_directory(m.out)) throw ConfigError("cannot create output directory '" + m.out + "'");
}

void write_manifest(const Manifest& m)
{
    nlohmann::ordered_json j;
    j["subcommand"] = m.subcommand;
    j["config"] = m.config;
    j["out"] = m.out;
    j["seed"] = m.seed;
    if (m.n_modes) j["n_modes"] = *m.n_modes;
    if (m.T) j["T"] = *m.T;
    if (m.dx) j["dx"] = *m.dx;
    if (m.dt) j["dt"] = *m.dt;
    if (m.trials) j["trials"] = *m.trials;
    std::ofstream(m.path("manifest.json")) << j.dump(2) << '\n';
}

double default_horizon(const SpectrumTable& t) { return 2.0 * (t.gamma1 + t.gamma2) + 0.5; }

int run_spectrum(const Manifest& m, const SystemConfig& cfg)
{
    const SpectrumTable t = build_spectrum_table(m.modes_or(40), cfg);
    write_spectrum_csv(t, m.path("spectrum.csv"));
    std::cout << "wrote " << t.count << " eigenvalues to " << m.path("spectrum.csv") << '\n';
    return 0;
}

int run_gaps(const Manifest& m, const SystemConfig& cfg)
{
    const SpectrumTable t = build_spectrum_table(m.modes_or(40), cfg);
    const GapClassification cls = classify_indices(t);
    const GapReport rep = verify_gap_asymptotics(t, cls);
    write_gap_csv(t, cls, rep, m.path("gaps.csv"));
    std::cout << "delta_prime=" << format_double(cls.delta_prime) << " clusters=" << cls.A.size()
              << " max_n_delta_A=" << format_double(rep.max_n_delta_A)
              << " median_n_delta_A=" << format_double(rep.median_n_delta_A)
              << " min_two_step_gap=" << format_double(rep.min_two_step_gap) << '\n';
    return 0;
}

int run_modes(const Manifest& m, const SystemConfig& cfg)
{
    const int n = m.modes_or(12);
    const Shooter shooter(cfg);
    const SpectrumTable t = build_spectrum_table(n + 1, shooter);
    const auto modes = assemble_modes(n, t, shooter);
    fs::create_directories(fs::path(m.out) / "modes");
    for (const auto& mode : modes) {
        char name[32];
        std::snprintf(name, sizeof name, "modes/mode_%03d.csv", mode.n);
        write_mode_csv(mode, m.path(name));
    }
    write_mode_summary_csv(modes, m.path("mode_summary.csv"));
    std::cout << "wrote " << modes.size() << " modes to " << m.path("modes") << '\n';
    return 0;
}

int run_observe(const Manifest& m, const SystemConfig& cfg)
{
    const int n = m.modes_or(30);
    const Shooter shooter(cfg);
    const SpectrumTable t = build_spectrum_table(n + 1, shooter);
    std::vector<double> slopes;
    for (int k = 1; k <= n + 1; ++k) slopes.push_back(boundary_slope(k, t, shooter));
    const double T = m.T.value_or(default_horizon(t));
    const auto ec = empirical_constants(t, slopes, T, n, m.trials.value_or(100), m.seed);
    write_observability_csv(ec, m.path("observability.csv"));
    std::cout << "T=" << format_double(T) << " c_min=" << format_double(ec.c_min) << " c_max=" << format_double(ec.c_max)
              << " horizon_ok=" << (ec.horizon_ok ? "yes" : "no") << '\n';
    return 0;
}

int run_control(const Manifest& m, const SystemConfig& cfg)
{
    const int n = m.modes_or(kDefaultControlModes);
    const Shooter shooter(cfg);
    const SpectrumTable t = build_spectrum_table(n + 1, shooter);
    const auto modes = assemble_modes(n, t, shooter);
    const double T = m.T.value_or(default_horizon(t));
    const ModalData data = random_modal_data(n, m.seed, 1);
    const InitialData init = synthesize_initial_data(data, modes);
    const MomentProblem mp = modal_reduction(data, modes, t, cfg, T, n);
    const ControlSolution sol = solve_min_norm(mp);
    SimulationOptions o;
    o.dx = m.dx.value_or(1.0 / 1024);
    o.dt = m.dt.value_or(0.0);
    o.snapshots = 0;
    const ControlReport rep = verify_control(sol, mp, init, modes, cfg, o);
    write_signal_csv(sol.signal, m.path("control_signal.csv"));
    write_control_report_csv(rep, m.path("control_report.csv"));
    std::cout << "T=" << format_double(T) << " l2_norm=" << format_double(sol.l2_norm)
              << " gram_condition=" << format_double(sol.condition)
              << " duhamel_residual=" << format_double(rep.duhamel_residual)
              << " simulator_residual=" << format_double(rep.simulator_residual)
              << " mass_residual=" << format_double(rep.mass_residual) << '\n';
    return 0;
}

int run_simulate(const Manifest& m, const SystemConfig& cfg)
{
    const int n = m.modes_or(20);
    const Shooter shooter(cfg);
    const SpectrumTable t = build_spectrum_table(n + 1, shooter);
    const auto modes = assemble_modes(n, t, shooter);
    const InitialData init = synthesize_initial_data(random_modal_data(n, m.seed, 0), modes);
    SimulationOptions o;
    o.T = m.T.value_or(2.0 * (t.gamma1 + t.gamma2));
    o.dx = m.dx.value_or(1.0 / 512);
    o.dt = m.dt.value_or(0.0);
    const Trajectory tr = simulate(cfg, init, o);
    write_snapshot_csv(tr, m.path("snapshots.csv"));
    write_trace_csv(tr, m.path("trace.csv"));
    write_energy_csv(tr, m.path("energy.csv"));
    const double e0 = tr.energy.front();
    double drift = 0.0;
    for (double e : tr.energy) drift = std::max(drift, std::abs(e - e0) / e0);
    std::cout << "steps=" << tr.steps << " dt=" << format_double(tr.dt) << " energy_drift=" << format_double(drift)
              << " trace_integral=" << format_double(tr.trace_integral()) << '\n';
    return 0;
}

int run_verify(const Manifest& m, const SystemConfig& cfg)
{
    AcceptanceSettings s;
    s.seed = m.seed;
    if (m.trials) s.trials = *m.trials;
    const AcceptanceReport rep = run_acceptance(cfg, s);
    const std::string text = rep.format();
    std::ofstream(m.path("acceptance_report.txt")) << text;
    std::cout << text;
    return rep.all_passed() ? 0 : 4;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral analysis and boundary control of two strings coupled by a point mass"};
    app.require_subcommand(1);
    Manifest m;

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const Manifest&, const SystemConfig&);
    };
    const Entry entries[] = {
        {"spectrum", "eigenvalue table", run_spectrum},
        {"gaps", "gap classification and asymptotics", run_gaps},
        {"modes", "eigenfunctions and summary", run_modes},
        {"observe", "empirical observability constants", run_observe},
        {"control", "null control synthesis and verification", run_control},
        {"simulate", "finite-difference trajectory", run_simulate},
        {"verify", "acceptance suite", run_verify},
    };
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", m.config, "configuration file (JSON)")->capture_default_str();
        sub->add_option("--out", m.out, "output directory")->capture_default_str();
        sub->add_option("--n-modes", m.n_modes, "number of modes or eigenvalues");
        sub->add_option("--T", m.T, "time horizon");
        sub->add_option("--seed", m.seed, "random seed")->capture_default_str();
        sub->add_option("--dx", m.dx, "grid spacing (1/integer)");
        sub->add_option("--dt", m.dt, "time step (default: CFL limit)");
        sub->add_option("--trials", m.trials, "Monte-Carlo trials");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Entry* chosen = nullptr;
    for (const auto& e : entries)
        if (app.got_subcommand(e.name)) chosen = &e;
    m.subcommand = chosen->name;

    try {
        const SystemConfig cfg = load_config(m.config);
        prepare_output(m);
        write_manifest(m);
        return chosen->run(m, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
