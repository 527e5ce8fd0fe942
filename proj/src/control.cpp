#include "stringmass/control.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/observability.hpp"
#include "stringmass/parallel.hpp"

namespace stringmass {

namespace {

void check_horizon(const SpectrumTable& table, double T)
{
    const double h = 2.0 * (table.gamma1 + table.gamma2);
    if (!(T > h)) {
        std::ostringstream msg;
        msg << "T = " << T << " does not exceed 2 (gamma1 + gamma2) = " << h;
        throw NumericError(ErrorCode::TimeHorizonTooShort, msg.str());
    }
}

} // namespace

MomentProblem modal_reduction(const ModalData& data, const std::vector<ModeShape>& modes, const SpectrumTable& table,
                              const SystemConfig& config, double T, int N)
{
    check_horizon(table, T);
    if (N < 1 || static_cast<int>(modes.size()) < N || table.count < N)
        throw NumericError(ErrorCode::InvalidArgument, "truncation needs N assembled modes");
    MomentProblem mp;
    mp.T = T;
    mp.modes = N;
    mp.data = ModalData::zeros(N);
    const double sigma2 = config.right().sigma.value(1.0);
    auto coef = [&](int n) { return std::abs(n) <= data.count() ? data.a(n) : std::complex<double>{}; };
    for (int n = 1; n <= N; ++n) {
        const ModeShape& m = modes[n - 1];
        mp.data.set(n, coef(n));
        mp.data.set(-n, coef(-n));
        mp.lambda.push_back(table.lam(n));
        mp.norm_h0.push_back(m.normH0);
    }
    for (int sign : {1, -1}) {
        for (int n = 1; n <= N; ++n) {
            const ModeShape& m = modes[n - 1];
            const double g = -sigma2 * m.slope1 / m.normH0;
            const double w = table.omega(sign * n);
            mp.index.push_back(sign * n);
            mp.omega.push_back(w);
            mp.gain.push_back(g);
            mp.target.push_back(std::complex<double>(0.0, -2.0 * w) * coef(sign * n) / g);
        }
    }
    return mp;
}

MomentProblem modal_reduction(const InitialData& initial, const std::vector<ModeShape>& modes,
                              const SpectrumTable& table, const SystemConfig& config, double T, int N)
{
    check_horizon(table, T);
    if (N < 1 || static_cast<int>(modes.size()) < N)
        throw NumericError(ErrorCode::InvalidArgument, "truncation needs N assembled modes");
    const std::vector<ModeShape> head(modes.begin(), modes.begin() + N);
    const ModalData data = fourier_coefficients(initial, head, config);
    MomentProblem mp = modal_reduction(data, modes, table, config, T, N);

    const double u0 = h0_norm_sq(initial.u0, initial.v0, initial.z0, modes[0], config);
    const double u1 = h0_norm_sq(initial.u1, initial.v1, initial.z1, modes[0], config);
    double cap0 = 0.0, cap1 = 0.0, cap1_weak = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double nh = mp.norm_h0[n - 1];
        const double lam = mp.lambda[n - 1];
        cap0 += data.e[n - 1] * data.e[n - 1] * nh;
        cap1 += lam * data.f[n - 1] * data.f[n - 1] * nh;
        cap1_weak += data.f[n - 1] * data.f[n - 1] * nh;
    }
    const double lam_tail = table.count > N ? table.lam(N + 1) : table.lam(N);
    const double tail = std::max(0.0, u0 - cap0) + std::max(0.0, u1 - cap1) / lam_tail;
    const double total = cap0 + cap1_weak + tail;
    mp.truncation_loss = total > 0.0 ? tail / total : 0.0;
    mp.truncation_too_aggressive = mp.truncation_loss > kTruncationLossLimit;
    return mp;
}

std::complex<double> gram_entry(double omega_n, double omega_k, double T)
{
    const double d = omega_k - omega_n;
    if (std::abs(d * T) < 1e-8) return {T * (1.0 - d * d * T * T / 6.0), 0.5 * d * T * T};
    return (std::polar(1.0, d * T) - 1.0) / std::complex<double>(0.0, d);
}

double default_regularization(const MomentProblem& problem)
{
    // Every diagonal entry of G is T, so trace(G) / (2N) = T.
    return problem.size() == 0 ? 0.0 : 1e-10 * problem.T;
}

ControlSolution solve_min_norm(const MomentProblem& problem, double epsilon, int samples)
{
    const int k = problem.size();
    if (k == 0) throw NumericError(ErrorCode::InvalidArgument, "empty moment problem");
    for (double g : problem.gain)
        if (g == 0.0 || !std::isfinite(g)) throw NumericError(ErrorCode::InvalidArgument, "zero forcing gain");
    ControlSolution sol;
    sol.epsilon = epsilon < 0.0 ? default_regularization(problem) : epsilon;

    Eigen::MatrixXcd G(k, k);
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t i) {
        for (int j = 0; j < k; ++j) G(i, j) = gram_entry(problem.omega[i], problem.omega[j], problem.T);
    });
    Eigen::MatrixXcd A = G;
    A.diagonal().array() += sol.epsilon;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    sol.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(sol.condition <= kIllConditionedLimit)) {
        std::ostringstream msg;
        msg << "Gram condition estimate " << sol.condition << " exceeds " << kIllConditionedLimit
            << " at epsilon = " << sol.epsilon;
        throw NumericError(ErrorCode::IllConditioned, msg.str());
    }
    Eigen::VectorXcd m(k);
    for (int i = 0; i < k; ++i) m(i) = problem.target[i];
    const Eigen::VectorXcd c = eig.eigenvectors() * (eig.eigenvalues().cwiseInverse().asDiagonal()
                                                     * (eig.eigenvectors().adjoint() * m));
    const Eigen::VectorXcd achieved = G * c;
    sol.coeff.assign(c.data(), c.data() + k);
    sol.achieved.assign(achieved.data(), achieved.data() + k);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < k; ++i) {
        err = std::max(err, std::abs(achieved(i) - m(i)));
        scale = std::max(scale, std::abs(m(i)));
    }
    sol.moment_residual = scale > 0.0 ? err / scale : err;
    sol.l2_norm = std::sqrt(std::max(0.0, c.dot(G * c).real()));

    double omega_max = 0.0;
    for (double w : problem.omega) omega_max = std::max(omega_max, std::abs(w));
    const int n = samples > 0 ? samples : 4 * ExponentialSum::required_samples(problem.T, omega_max);
    sol.signal = ControlSignal::zero(problem.T, std::max(n, 4));
    for (std::size_t s = 0; s < sol.signal.t.size(); ++s) {
        std::complex<double> v = 0.0;
        for (int i = 0; i < k; ++i) v += sol.coeff[i] * std::polar(1.0, problem.omega[i] * sol.signal.t[s]);
        sol.signal.p[s] = v.real();
        sol.signal.max_imag = std::max(sol.signal.max_imag, std::abs(v.imag()));
    }
    return sol;
}

double modal_energy_ratio(const MomentProblem& problem, const ModalData& final_data)
{
    double before = 0.0, after = 0.0;
    for (int n = 1; n <= problem.modes; ++n) {
        const double w = problem.lambda[n - 1] * problem.norm_h0[n - 1];
        before += 4.0 * std::norm(problem.data.a(n)) * w;
        after += 4.0 * std::norm(final_data.a(n)) * w;
    }
    return before > 0.0 ? after / before : after;
}

ControlReport verify_control(const ControlSolution& solution, const MomentProblem& problem,
                             const InitialData& initial, const std::vector<ModeShape>& modes,
                             const SystemConfig& config, SimulationOptions options)
{
    ControlReport r;
    r.l2_norm = solution.l2_norm;
    r.condition = solution.condition;
    const int N = problem.modes;
    // eta_n(T) = exp(i omega T) (2 a_n - i g_n / omega_n * moment_n).
    ModalData after = ModalData::zeros(N);
    for (int i = 0; i < problem.size(); ++i) {
        const int n = problem.index[i];
        const double w = problem.omega[i];
        const auto eta = std::polar(1.0, w * problem.T)
                         * (2.0 * problem.data.a(n)
                            - std::complex<double>(0.0, problem.gain[i] / w) * solution.achieved[i]);
        after.set(n, 0.5 * eta);
        r.rows.push_back({n, problem.target[i], solution.achieved[i], std::abs(solution.achieved[i] - problem.target[i])});
    }
    r.duhamel_residual = modal_energy_ratio(problem, after);

    if (options.dx > 0.0) {
        options.T = problem.T;
        options.control = solution.signal;
        const Trajectory tr = simulate(config, initial, options);
        const std::vector<ModeShape> head(modes.begin(), modes.begin() + N);
        r.simulator_residual = modal_energy_ratio(problem, fourier_coefficients(final_state(tr), head, config));
        double scale = std::abs(initial.z0) + std::abs(initial.z1);
        if (!(scale > 1e-12))
            for (double z : tr.z) scale = std::max(scale, std::abs(z));
        const double fin = std::abs(tr.z_final()) + std::abs(tr.zt_final());
        r.mass_residual = scale > 0.0 ? fin / scale : fin;
        r.simulated = true;
    }
    return r;
}

void write_control_report_csv(const ControlReport& report, const std::string& path)
{
    CsvWriter w(path);
    w.comment("duhamel_residual=" + format_double(report.duhamel_residual) + " simulator_residual="
              + (report.simulated ? format_double(report.simulator_residual) : std::string("skipped"))
              + " mass_residual=" + (report.simulated ? format_double(report.mass_residual) : std::string("skipped"))
              + " l2_norm=" + format_double(report.l2_norm) + " gram_condition=" + format_double(report.condition));
    w.header({"n", "target_re", "target_im", "achieved_re", "achieved_im", "residual"});
    for (const auto& row : report.rows)
        w.field(row.n)
            .field(row.target.real())
            .field(row.target.imag())
            .field(row.achieved.real())
            .field(row.achieved.imag())
            .field(row.residual)
            .end_row();
}

} // namespace stringmass
