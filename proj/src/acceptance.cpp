#include "stringmass/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "stringmass/control.hpp"
#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/gap_analysis.hpp"
#include "stringmass/modes.hpp"
#include "stringmass/numerics.hpp"
#include "stringmass/observability.hpp"
#include "stringmass/simulator.hpp"
#include "stringmass/spectrum.hpp"

namespace stringmass {

namespace {

using std::numbers::pi;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

/// Root of 2 cos s - s sin s in (k pi, (k + 1) pi) by bisection.
double cot_root(int k)
{
    double lo = k * pi + 1e-12, hi = (k + 1) * pi - 1e-12;
    auto f = [](double s) { return 2.0 * std::cos(s) - s * std::sin(s); };
    const double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) > 0) == (flo > 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double median_of(std::vector<double> v) { return median(std::move(v)); }

struct Modal {
    Shooter shooter;
    SpectrumTable table;
    std::vector<ModeShape> modes;
    std::vector<double> slopes;

    Modal(const SystemConfig& cfg, int count, int n_modes)
        : shooter(cfg), table(build_spectrum_table(count, shooter)), modes(assemble_modes(n_modes, table, shooter))
    {
        for (const auto& m : modes) slopes.push_back(m.slope1);
    }
};

CriterionResult closed_form_spectrum()
{
    CriterionResult r{1, "closed_form_spectrum", false, {}};
    const int N = 20;
    const SpectrumTable t = build_spectrum_table(N + 1, SystemConfig::unit(1.0));
    double err = 0.0, err_prime = 0.0;
    for (int n = 1; n <= N; ++n) {
        const int k = n / 2;
        const double expect = n % 2 == 1 ? std::pow(cot_root(k), 2) : std::pow(k * pi, 2);
        const double expect_prime = n % 2 == 1 ? std::pow((2 * ((n + 1) / 2) - 1) * pi / 2, 2) : std::pow(k * pi, 2);
        err = std::max(err, std::abs(t.lam(n) - expect) / expect);
        err_prime = std::max(err_prime, std::abs(t.lambda_prime[n - 1] - expect_prime) / expect_prime);
    }
    r.add("max_rel_err_lambda", err);
    r.add("max_rel_err_lambda_prime", err_prime);
    r.add("tol", tol::kClosedFormRel);
    r.passed = err <= tol::kClosedFormRel && err_prime <= tol::kClosedFormRel;
    return r;
}

int chain_violations(const SpectrumTable& t, int range)
{
    int bad = 0;
    if (!(t.lam(1) < t.lambda_prime[0] && t.lambda_prime[0] < t.mu_at(1))) ++bad;
    for (int n = 1; n <= range; ++n) {
        const double mu = t.mu_at(n), mu1 = t.mu_at(n + 1);
        const double lam = t.lam(n + 1), lamp = t.lambda_prime[n];
        const double eps = kFusionTolerance * (1.0 + mu);
        if (std::abs(mu1 - mu) <= eps) {
            if (std::abs(lam - mu) > eps || std::abs(lamp - mu) > eps) ++bad;
        } else if (!(mu < lam && lam < lamp && lamp < mu1)) {
            ++bad;
        }
    }
    return bad;
}

CriterionResult interlacing(std::uint64_t seed)
{
    CriterionResult r{2, "interlacing_random_configs", false, {}};
    int total = 0;
    std::vector<int> per(tol::kInterlacingConfigs, 0);
    for (int i = 0; i < tol::kInterlacingConfigs; ++i) {
        try {
            const SpectrumTable t = build_spectrum_table(tol::kInterlacingRange + 2, random_smooth_config(seed + i));
            per[i] = chain_violations(t, tol::kInterlacingRange);
        } catch (const NumericError& e) {
            per[i] = -1;
            r.add("config" + std::to_string(i) + "_error", std::string(to_string(e.code())));
        }
        total += per[i] < 0 ? 1 : per[i];
    }
    r.add("configs", static_cast<double>(tol::kInterlacingConfigs));
    r.add("n_range", "1.." + std::to_string(tol::kInterlacingRange));
    r.add("violations", static_cast<double>(total));
    r.passed = total == 0;
    return r;
}

CriterionResult gap_trends(const SystemConfig& config, std::uint64_t seed)
{
    CriterionResult r{3, "gap_trends", false, {}};
    const SpectrumTable t = build_spectrum_table(42, config);
    const GapClassification cls = classify_indices(t);
    const GapReport g = verify_gap_asymptotics(t, cls);
    const double spread = g.median_n_delta_A > 0.0 ? g.max_n_delta_A / g.median_n_delta_A : 0.0;
    const double floor = tol::kTwoStepGapFactor * pi / (t.gamma1 + t.gamma2);
    r.add("clusters", static_cast<double>(g.a_indices.size()));
    r.add("max_over_median_n_delta", spread);
    r.add("tol_spread", tol::kClusterSpreadMax);
    r.add("min_two_step_gap", g.min_two_step_gap);
    r.add("two_step_floor", floor);
    r.passed = !g.a_indices.empty() && spread <= tol::kClusterSpreadMax && g.min_two_step_gap > floor;
    // Reported only: the same spread on a generic incommensurate configuration.
    try {
        const SpectrumTable tr = build_spectrum_table(42, random_smooth_config(seed));
        const GapReport gr = verify_gap_asymptotics(tr, classify_indices(tr));
        r.add("random_config_spread_reported", gr.median_n_delta_A > 0.0 ? gr.max_n_delta_A / gr.median_n_delta_A : 0.0);
    } catch (const NumericError& e) {
        r.add("random_config_spread_reported", std::string(to_string(e.code())));
    }
    return r;
}

CriterionResult weyl(const SystemConfig& config)
{
    CriterionResult r{4, "weyl_asymptotics", false, {}};
    double worst = 0.0;
    const std::pair<const char*, SystemConfig> cases[] = {{"reference", config},
                                                         {"symmetric_smooth", symmetric_smooth_config()}};
    for (const auto& [name, cfg] : cases) {
        const SpectrumTable t = build_spectrum_table(40, cfg);
        double dev = 0.0;
        for (int n = 30; n <= 40; ++n)
            dev = std::max(dev, std::abs(t.omega(n) * (t.gamma1 + t.gamma2) / (n * pi) - 1.0));
        r.add(std::string("max_rel_dev_") + name, dev);
        worst = std::max(worst, dev);
    }
    r.add("tol", tol::kWeylRel);
    r.passed = worst <= tol::kWeylRel;
    return r;
}

CriterionResult structure(const SystemConfig& config)
{
    CriterionResult r{5, "eigenfunction_structure", false, {}};
    const Modal m(config, 41, 40);
    const GapClassification cls = classify_indices(m.table);
    double jump = 0.0;
    for (int n = 0; n < tol::kStructureModes; ++n) jump = std::max(jump, m.modes[n].jump_residual);
    const std::vector<ModeShape> head(m.modes.begin(), m.modes.begin() + tol::kStructureModes);
    const double off = max_normalized_offdiagonal(orthogonality_matrix(head, config));
    r.add("max_jump_residual", jump);
    r.add("max_gram_offdiag", off);
    bool ok = jump <= tol::kJumpRel && off <= tol::kGramOffdiag;

    auto exponent = [&](const char* key, const std::vector<double>& ns, const std::vector<double>& vs, double target) {
        if (ns.size() < 4) {
            r.add(key, "n/a");
            return;
        }
        const double p = log_log_slope(ns, vs);
        r.add(key, p);
        ok = ok && std::abs(p - target) <= tol::kExponentTol;
    };
    std::vector<double> na, wa, sa, nb, sb, nm, sm;
    for (int n : cls.A) {
        if (n < 10) continue;
        if (!cls.in_lambda_star(n)) {
            na.push_back(n);
            wa.push_back(m.modes[n - 1].normW);
            sa.push_back(std::abs(m.slopes[n - 1]));
        }
        if (n + 1 <= 40) {
            nb.push_back(n + 1);
            sb.push_back(std::abs(m.slopes[n]));
        }
    }
    for (int n : cls.Bminus) {
        if (n < 10 || n > 40) continue;
        nm.push_back(n);
        sm.push_back(std::abs(m.slopes[n - 1]));
    }
    exponent("exp_normW_A_not_fused", na, wa, -2.0);
    exponent("exp_slope_A_not_fused", na, sa, -1.0);
    exponent("exp_slope_A_plus_1", nb, sb, -1.0);
    exponent("exp_slope_B_minus", nm, sm, -1.0);

    const Modal u(SystemConfig::unit(1.0), 41, 40);
    std::vector<double> nl, sl;
    for (int n = 10; n <= 40; ++n) {
        if (!u.table.in_lambda(n)) continue;
        nl.push_back(n);
        sl.push_back(std::abs(u.slopes[n - 1]));
    }
    exponent("exp_slope_fused_unit", nl, sl, 0.0);
    r.add("tol_exponent", tol::kExponentTol);
    r.passed = ok;
    return r;
}

CriterionResult simulator_fidelity(const SystemConfig& config, const AcceptanceSettings& s)
{
    CriterionResult r{6, "simulator_fidelity", false, {}};
    const Modal m(config, s.trace_modes + 1, s.trace_modes);
    const double horizon = 2.0 * (m.table.gamma1 + m.table.gamma2);
    double freq_err = 0.0, drift = 0.0;
    for (int n : {1, 2, 5}) {
        std::vector<double> e(m.modes.size(), 0.0), f(m.modes.size(), 0.0);
        e[n - 1] = 1.0;
        SimulationOptions o;
        o.dx = s.simulator_dx;
        o.snapshots = 0;
        o.T = std::max(horizon, 3.0 * pi / m.table.omega(n) + 0.1);
        const Trajectory tr = simulate(config, synthesize_initial_data(ModalData::from_real(e, f), m.modes), o);
        std::vector<double> cross;
        for (std::size_t k = 0; k + 1 < tr.z.size(); ++k) {
            if ((tr.z[k] > 0) != (tr.z[k + 1] > 0)) {
                const double a = tr.z[k] / (tr.z[k] - tr.z[k + 1]);
                cross.push_back(tr.t[k] + a * (tr.t[k + 1] - tr.t[k]));
            }
        }
        if (cross.size() < 3) throw NumericError(ErrorCode::InvalidArgument, "too few junction zero crossings");
        const double w = pi * static_cast<double>(cross.size() - 1) / (cross.back() - cross.front());
        freq_err = std::max(freq_err, std::abs(w / m.table.omega(n) - 1.0));
        const double e0 = tr.energy.front();
        for (double en : tr.energy) drift = std::max(drift, std::abs(en - e0) / e0);
    }

    const ModalData data = random_modal_data(s.trace_modes, s.seed, 0);
    SimulationOptions o;
    o.dx = s.simulator_dx;
    o.snapshots = 0;
    o.T = horizon + 0.5;
    const Trajectory tr = simulate(config, synthesize_initial_data(data, m.modes), o);
    const ExponentialSum series =
        boundary_trace(data, m.slopes, m.table, o.T, ExponentialSum::required_samples(o.T, m.table.omega(s.trace_modes)));
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        std::complex<double> v = 0.0;
        for (std::size_t j = 0; j < series.omega.size(); ++j) v += series.amp[j] * std::polar(1.0, series.omega[j] * tr.t[k]);
        const double wgt = (k == 0 || k + 1 == tr.t.size()) ? 0.5 : 1.0;
        diff += wgt * std::pow(tr.trace[k] - v.real(), 2);
        norm += wgt * std::pow(v.real(), 2);
    }
    const double rel = std::sqrt(diff / norm);
    r.add("dx", s.simulator_dx);
    r.add("max_rel_freq_err", freq_err);
    r.add("tol_freq", tol::kFrequencyRel);
    r.add("max_rel_energy_drift", drift);
    r.add("tol_drift", tol::kEnergyDrift);
    r.add("trace_rel_l2_diff", rel);
    r.add("tol_trace", tol::kTraceRelL2);
    r.passed = freq_err <= tol::kFrequencyRel && drift <= tol::kEnergyDrift && rel <= tol::kTraceRelL2;
    return r;
}

CriterionResult observability(const SystemConfig& config, const AcceptanceSettings& s)
{
    CriterionResult r{7, "observability_constants", false, {}};
    const int N = s.observability_modes;
    const Shooter shooter(config);
    const SpectrumTable table = build_spectrum_table(N + 1, shooter);
    std::vector<double> slopes;
    for (int n = 1; n <= N + 1; ++n) slopes.push_back(boundary_slope(n, table, shooter));
    const double T = 2.0 * (table.gamma1 + table.gamma2) + 0.5;
    const EmpiricalConstants ec = empirical_constants(table, slopes, T, N, s.trials, s.seed);
    const double T_short = table.gamma1;
    const EmpiricalConstants sh = empirical_constants(table, slopes, T_short, N, s.trials, s.seed);
    const double spread = ec.c_max / ec.c_min;
    r.add("T", T);
    r.add("trials", static_cast<double>(s.trials));
    r.add("c_min", ec.c_min);
    r.add("c_max", ec.c_max);
    r.add("c_max_over_c_min", spread);
    r.add("tol_spread", tol::kObservabilitySpread);
    r.add("short_T_reported", T_short);
    r.add("short_T_c_min_reported", sh.c_min);
    r.add("c_min_drop_reported", ec.c_min / sh.c_min);
    r.add("drop_at_least_10_reported", yes_no(ec.c_min / sh.c_min >= tol::kShortHorizonDrop));
    r.passed = ec.c_min > 0.0 && spread <= tol::kObservabilitySpread;
    return r;
}

CriterionResult control_to_rest(const SystemConfig& config, const AcceptanceSettings& s)
{
    CriterionResult r{8, "control_to_rest", false, {}};
    const int N = s.control_modes;
    const Modal m(config, N + 1, N);
    const double T = 2.0 * (m.table.gamma1 + m.table.gamma2) + 0.5;
    const ModalData data = random_modal_data(N, s.seed, 1);
    const InitialData init = synthesize_initial_data(data, m.modes);
    const MomentProblem mp = modal_reduction(data, m.modes, m.table, config, T, N);
    const ControlSolution sol = solve_min_norm(mp);
    SimulationOptions o;
    o.dx = s.control_dx;
    o.snapshots = 0;
    const ControlReport rep = verify_control(sol, mp, init, m.modes, config, o);
    const double reduction = rep.simulator_residual > 0.0 ? 1.0 / rep.simulator_residual : INFINITY;
    r.add("N", static_cast<double>(N));
    r.add("T", T);
    r.add("gram_condition", sol.condition);
    r.add("control_l2", sol.l2_norm);
    r.add("duhamel_residual", rep.duhamel_residual);
    r.add("tol_duhamel", tol::kDuhamelResidual);
    r.add("simulator_energy_reduction", reduction);
    r.add("tol_reduction", tol::kSimulatorReduction);
    r.add("mass_residual_reported", rep.mass_residual);
    r.passed = rep.duhamel_residual <= tol::kDuhamelResidual && reduction >= tol::kSimulatorReduction;
    return r;
}

CriterionResult cluster_cost()
{
    CriterionResult r{9, "cluster_cost_signature", false, {}};
    const SpectrumTable t = build_spectrum_table(32, SystemConfig::unit(1.0));
    const GapClassification cls = classify_indices(t);
    const double T = 2.0 * (t.gamma1 + t.gamma2) + 0.5;
    std::vector<double> scaled;
    double dmin = INFINITY, dmax = 0.0;
    for (int n = 10; n <= 30; ++n) {
        if (!cls.in_A(n)) continue;
        MomentProblem mp;
        mp.T = T;
        const double w0 = t.omega(n), w1 = t.omega(n + 1);
        mp.omega = {w0, w1, -w0, -w1};
        mp.target = {1.0, -1.0, 1.0, -1.0};
        mp.gain.assign(4, 1.0);
        mp.index = {n, n + 1, -n, -(n + 1)};
        const ControlSolution sol = solve_min_norm(mp);
        scaled.push_back(sol.l2_norm * t.gap(n));
        dmin = std::min(dmin, t.gap(n));
        dmax = std::max(dmax, t.gap(n));
    }
    const double spread = scaled.empty() ? INFINITY
                                         : *std::max_element(scaled.begin(), scaled.end())
                                               / *std::min_element(scaled.begin(), scaled.end());
    r.add("pairs", static_cast<double>(scaled.size()));
    r.add("delta_min", dmin);
    r.add("delta_max", dmax);
    r.add("median_norm_times_delta", scaled.empty() ? 0.0 : median_of(scaled));
    r.add("spread_norm_times_delta", spread);
    r.add("tol_spread", tol::kClusterCostSpread);
    r.passed = scaled.size() >= 3 && spread <= tol::kClusterCostSpread;
    return r;
}

template <class F>
CriterionResult guarded(int id, const char* name, F&& f)
{
    try {
        return f();
    } catch (const NumericError& e) {
        CriterionResult r{id, name, false, {}};
        r.add("error", std::string(to_string(e.code())));
        return r;
    }
}

std::vector<CriterionResult> core(const SystemConfig& config, const AcceptanceSettings& s)
{
    std::vector<CriterionResult> out;
    out.push_back(guarded(1, "closed_form_spectrum", [] { return closed_form_spectrum(); }));
    out.push_back(guarded(2, "interlacing_random_configs", [&] { return interlacing(s.seed); }));
    out.push_back(guarded(3, "gap_trends", [&] { return gap_trends(config, s.seed); }));
    out.push_back(guarded(4, "weyl_asymptotics", [&] { return weyl(config); }));
    out.push_back(guarded(5, "eigenfunction_structure", [&] { return structure(config); }));
    out.push_back(guarded(6, "simulator_fidelity", [&] { return simulator_fidelity(config, s); }));
    out.push_back(guarded(7, "observability_constants", [&] { return observability(config, s); }));
    out.push_back(guarded(8, "control_to_rest", [&] { return control_to_rest(config, s); }));
    out.push_back(guarded(9, "cluster_cost_signature", [] { return cluster_cost(); }));
    return out;
}

} // namespace

void CriterionResult::add(const std::string& key, double v) { values.emplace_back(key, format_double(v)); }

void CriterionResult::add(const std::string& key, const std::string& v) { values.emplace_back(key, v); }

bool AcceptanceReport::all_passed() const { return failed().empty(); }

std::vector<int> AcceptanceReport::failed() const
{
    std::vector<int> out;
    for (const auto& c : criteria)
        if (!c.passed) out.push_back(c.id);
    return out;
}

std::string AcceptanceReport::format() const
{
    std::ostringstream out;
    for (const auto& c : criteria) {
        out << "criterion " << c.id << ' ' << (c.passed ? "PASS" : "FAIL") << ' ' << c.name;
        for (const auto& [k, v] : c.values) out << ' ' << k << '=' << v;
        out << '\n';
    }
    const auto bad = failed();
    out << "summary passed=" << criteria.size() - bad.size() << " total=" << criteria.size() << " failed=";
    for (std::size_t i = 0; i < bad.size(); ++i) out << (i ? "," : "") << bad[i];
    if (bad.empty()) out << "none";
    out << '\n';
    return out.str();
}

SystemConfig random_smooth_config(std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> base(0.8, 1.6), tilt(-0.25, 0.25), pot(0.0, 1.0), mass(0.3, 3.0);
    auto poly = [&] {
        const double c0 = base(gen), c1 = tilt(gen), c2 = tilt(gen);
        return ProfileSpec::polynomial({c0, c1, c2});
    };
    auto side = [&](Side s) {
        const ProfileSpec rho = poly(), sigma = poly(), q = ProfileSpec::constant(pot(gen));
        return build_side(s, rho, sigma, q);
    };
    SideCoefficients left = side(Side::Left);
    SideCoefficients right = side(Side::Right);
    return SystemConfig(std::move(left), std::move(right), mass(gen));
}

SystemConfig symmetric_smooth_config(double mass)
{
    const auto rho = ProfileSpec::polynomial({1.0, 0.0, 0.2});
    const auto sigma = ProfileSpec::polynomial({1.0, 0.0, 0.1});
    const auto q = ProfileSpec::constant(0.3);
    return SystemConfig(build_side(Side::Left, rho, sigma, q), build_side(Side::Right, rho, sigma, q), mass);
}

AcceptanceReport run_acceptance(const SystemConfig& config, const AcceptanceSettings& settings)
{
    AcceptanceReport rep;
    rep.criteria = core(config, settings);
    CriterionResult r{10, "reproducibility", false, {}};
    if (settings.repeat_check) {
        AcceptanceReport again;
        again.criteria = core(config, settings);
        const bool same = again.format() == AcceptanceReport{rep.criteria}.format();
        r.add("rerun_identical", yes_no(same));
        r.passed = same;
    } else {
        r.add("rerun_identical", "skipped");
    }
    rep.criteria.push_back(r);
    return rep;
}

} // namespace stringmass
