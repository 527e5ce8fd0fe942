#include "stringmass/observability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/parallel.hpp"

namespace stringmass {

int ExponentialSum::required_samples(double T, double omega_max)
{
    if (omega_max <= 0.0) return 2;
    return static_cast<int>(std::ceil(kSamplesPerPeriod * T * omega_max / (2.0 * std::numbers::pi))) + 1;
}

ExponentialSum boundary_trace(const ModalData& data, const std::vector<double>& slopes, const SpectrumTable& table,
                              double T, int samples)
{
    if (!(T > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "observation time must be positive");
    ExponentialSum s;
    s.T = T;
    const int k = data.count();
    double omega_max = 0.0;
    for (int n = -k; n <= k; ++n) {
        if (n == 0) continue;
        const auto c = scaled_coefficient(data, slopes, n);
        if (c == std::complex<double>{}) continue;
        s.index.push_back(n);
        s.omega.push_back(table.omega(n));
        s.amp.push_back(c);
        omega_max = std::max(omega_max, std::abs(s.omega.back()));
    }
    const int needed = ExponentialSum::required_samples(T, omega_max);
    if (samples < needed) {
        std::ostringstream msg;
        msg << samples << " samples on [0, " << T << "] resolve fewer than " << kSamplesPerPeriod
            << " points per period at omega = " << omega_max << " (need " << needed << ")";
        throw NumericError(ErrorCode::UnderResolvedTrace, msg.str());
    }
    s.t.resize(samples);
    s.samples.assign(samples, {});
    const double h = T / (samples - 1);
    for (int j = 0; j < samples; ++j) s.t[j] = j == samples - 1 ? T : j * h;
    // Rotate each phasor step by step; refresh exactly every 64 steps to bound drift.
    for (std::size_t m = 0; m < s.omega.size(); ++m) {
        const std::complex<double> step = std::polar(1.0, s.omega[m] * h);
        std::complex<double> z = s.amp[m];
        for (int j = 0; j < samples; ++j) {
            if (j % 64 == 0) z = s.amp[m] * std::polar(1.0, s.omega[m] * s.t[j]);
            s.samples[j] += z;
            z *= step;
        }
    }
    for (int j = 0; j < samples; ++j) {
        const double w = (j == 0 || j == samples - 1) ? 0.5 * h : h;
        s.integral += w * std::norm(s.samples[j]);
        s.max_imag = std::max(s.max_imag, std::abs(s.samples[j].imag()));
    }
    return s;
}

double closed_form_integral(const ExponentialSum& sum)
{
    std::complex<double> total = 0.0;
    for (std::size_t m = 0; m < sum.omega.size(); ++m) {
        for (std::size_t n = 0; n < sum.omega.size(); ++n) {
            const double d = sum.omega[m] - sum.omega[n];
            // int_0^T exp(i d t) dt
            const std::complex<double> g = std::abs(d * sum.T) < 1e-12
                                               ? std::complex<double>(sum.T, 0.5 * d * sum.T * sum.T)
                                               : (std::polar(1.0, d * sum.T) - 1.0) / std::complex<double>(0.0, d);
            total += sum.amp[m] * std::conj(sum.amp[n]) * g;
        }
    }
    return total.real();
}

SandwichReport ingham_sandwich(const ExponentialSum& sum, const ModalData& data, const std::vector<double>& slopes,
                               const GapClassification& cls, const SpectrumTable& table, double d_plus)
{
    const double horizon = 2.0 * std::numbers::pi * d_plus;
    if (!(sum.T > horizon)) {
        std::ostringstream msg;
        msg << "T = " << sum.T << " does not exceed 2 pi D+ = " << horizon;
        throw NumericError(ErrorCode::TimeHorizonTooShort, msg.str());
    }
    SandwichReport r;
    r.T = sum.T;
    r.lower = r.upper = asymmetric_norm_sq(data, cls, table, slopes);
    r.integral = sum.integral;
    r.integral_over_lower = r.lower > 0.0 ? r.integral / r.lower : 0.0;
    r.upper_over_integral = r.integral > 0.0 ? r.upper / r.integral : 0.0;
    return r;
}

ModalData random_modal_data(int n_modes, std::uint64_t seed, int trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> a(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double re = g(gen);
        const double im = g(gen);
        a[n - 1] = std::complex<double>(re, im) / static_cast<double>(n);
    }
    return ModalData::conjugate_symmetric(std::move(a));
}

double density_estimate(const SpectrumTable& table)
{
    return counting_density(table, table.omega(table.count) - table.omega(1)).d_plus;
}

EmpiricalConstants empirical_constants(const SpectrumTable& table, const std::vector<double>& slopes, double T,
                                       int n_modes, int trials, std::uint64_t seed)
{
    if (trials < 1) throw NumericError(ErrorCode::InvalidArgument, "need at least one trial");
    if (table.count < n_modes + 1 || static_cast<int>(slopes.size()) < n_modes)
        throw NumericError(ErrorCode::InvalidArgument, "table must hold n_modes + 1 eigenvalues");
    const GapClassification cls = classify_indices(table);
    EmpiricalConstants ec;
    ec.T = T;
    ec.n_modes = n_modes;
    ec.seed = seed;
    ec.delta_prime = cls.delta_prime;
    ec.d_plus = density_estimate(table);
    ec.horizon_ok = T > 2.0 * (table.gamma1 + table.gamma2);
    ec.trials.resize(trials);
    const int samples = ExponentialSum::required_samples(T, table.omega(n_modes)) + 8;
    parallel_for(trials, [&](std::size_t k) {
        const ModalData data = random_modal_data(n_modes, seed, static_cast<int>(k));
        const ExponentialSum s = boundary_trace(data, slopes, table, T, samples);
        ObservabilityTrial tr;
        tr.trial = static_cast<int>(k);
        tr.integral = s.integral;
        tr.y_norm = asymmetric_norm_sq(data, cls, table, slopes);
        tr.ratio = tr.integral / tr.y_norm;
        ec.trials[k] = tr;
    });
    ec.c_min = ec.c_max = ec.trials[0].ratio;
    for (const auto& tr : ec.trials) {
        ec.c_min = std::min(ec.c_min, tr.ratio);
        ec.c_max = std::max(ec.c_max, tr.ratio);
    }
    return ec;
}

EmpiricalConstants empirical_constants(const SystemConfig& config, double T, int n_modes, int trials,
                                       std::uint64_t seed)
{
    const Shooter shooter(config);
    const SpectrumTable table = build_spectrum_table(n_modes + 1, shooter);
    std::vector<double> slopes(n_modes + 1);
    parallel_for(n_modes + 1, [&](std::size_t i) {
        slopes[i] = boundary_slope(static_cast<int>(i) + 1, table, shooter);
    });
    return empirical_constants(table, slopes, T, n_modes, trials, seed);
}

void write_observability_csv(const EmpiricalConstants& ec, const std::string& path)
{
    CsvWriter w(path);
    w.comment("T=" + format_double(ec.T) + " N_modes=" + std::to_string(ec.n_modes)
              + " seed=" + std::to_string(ec.seed) + " delta_prime=" + format_double(ec.delta_prime)
              + " D_plus_estimate=" + format_double(ec.d_plus));
    w.comment("generator: a_n = (g1 + i g2)/n, g ~ N(0,1) from mt19937_64(seed_seq{seed_lo, seed_hi, trial}), "
              "a_-n = conj(a_n)");
    w.comment("c_min=" + format_double(ec.c_min) + " c_max=" + format_double(ec.c_max)
              + " horizon_ok=" + (ec.horizon_ok ? std::string("1") : std::string("0")));
    w.header({"trial", "integral", "y_norm", "ratio"});
    for (const auto& t : ec.trials) w.field(t.trial).field(t.integral).field(t.y_norm).field(t.ratio).end_row();
}

} // namespace stringmass
