#include "stringmass/modes.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/numerics.hpp"
#include "stringmass/parallel.hpp"

namespace stringmass {

namespace {

constexpr double kFusedRatioMax = 1e-4;
constexpr double kGenericRatioMin = 1e-10;
constexpr double kJumpTolerance = 1e-6;
constexpr double kContinuityTolerance = 1e-8;
constexpr double kCompatibilityTolerance = 1e-8;

// |y(0)| relative to the local amplitude of the oscillation.
double junction_ratio(double y, double yx, double lambda)
{
    const double s = std::sqrt(std::max(lambda, 1.0));
    const double amp = std::hypot(y, yx / s);
    return amp > 0.0 ? std::abs(y) / amp : 0.0;
}

double hermite(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& ds,
               double x, bool derivative)
{
    const std::size_t n = xs.size() - 1;
    const double h = (xs.back() - xs.front()) / static_cast<double>(n);
    std::size_t i = static_cast<std::size_t>(std::clamp((x - xs.front()) / h, 0.0, static_cast<double>(n)));
    i = std::min(i, n - 1);
    const double t = (x - xs[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    if (!derivative)
        return (2 * t3 - 3 * t2 + 1) * ys[i] + (t3 - 2 * t2 + t) * h * ds[i] + (-2 * t3 + 3 * t2) * ys[i + 1]
             + (t3 - t2) * h * ds[i + 1];
    return ((6 * t2 - 6 * t) * ys[i] + (-6 * t2 + 6 * t) * ys[i + 1]) / h + (3 * t2 - 4 * t + 1) * ds[i]
         + (3 * t2 - 2 * t) * ds[i + 1];
}

struct SideWeights {
    std::vector<double> w;
    std::vector<double> rho, sigma, q;
};

SideWeights side_weights(const std::vector<double>& x, const SideCoefficients& c)
{
    SideWeights s;
    const int n = static_cast<int>(x.size()) - 1;
    s.w = simpson_weights(n, (x.back() - x.front()) / n);
    s.rho.resize(x.size());
    s.sigma.resize(x.size());
    s.q.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        s.rho[i] = c.rho.value(x[i]);
        s.sigma[i] = c.sigma.value(x[i]);
        s.q[i] = c.q.value(x[i]);
    }
    return s;
}

std::complex<double> slot(const std::vector<std::complex<double>>& v, int k)
{
    return k >= 1 && k <= static_cast<int>(v.size()) ? v[k - 1] : std::complex<double>{};
}

} // namespace

std::string_view to_string(Branch b) { return b == Branch::Fused ? "fused" : "generic"; }

double ModeShape::value(double x) const
{
    return x <= 0.0 ? hermite(x_left, phi_left, dphi_left, x, false) : hermite(x_right, phi_right, dphi_right, x, false);
}

double ModeShape::derivative(double x) const
{
    return x < 0.0 ? hermite(x_left, phi_left, dphi_left, x, true) : hermite(x_right, phi_right, dphi_right, x, true);
}

ModeShape assemble_mode(int n, const SpectrumTable& table, const Shooter& shooter)
{
    if (n < 1 || n > table.count) throw NumericError(ErrorCode::InvalidArgument, "mode index outside the table");
    const SystemConfig& cfg = shooter.config();
    const double lambda = table.lam(n);
    const SideSolution u = shooter.solve(Side::Left, lambda);
    const SideSolution v = shooter.solve(Side::Right, lambda);
    const double s1 = cfg.left().sigma.value(0.0);
    const double s2 = cfg.right().sigma.value(0.0);
    const double root = std::sqrt(lambda);

    const bool fused = table.in_lambda(n);
    const double ru = junction_ratio(u.y0, u.yx0, lambda);
    const double rv = junction_ratio(v.y0, v.yx0, lambda);
    if (fused && (ru > kFusedRatioMax || rv > kFusedRatioMax)) {
        std::ostringstream msg;
        msg << "mode " << n << " is tagged fused but |u(0)|, |v(0)| ratios are " << ru << ", " << rv;
        throw NumericError(ErrorCode::BranchAmbiguity, msg.str());
    }
    if (!fused && ru < kGenericRatioMin && rv < kGenericRatioMin) {
        std::ostringstream msg;
        msg << "mode " << n << " is tagged generic but both junction values vanish (" << ru << ", " << rv << ")";
        throw NumericError(ErrorCode::BranchAmbiguity, msg.str());
    }

    const double cl = fused ? s2 * v.yx0 : root * v.y0;
    const double cr = fused ? s1 * u.yx0 : root * u.y0;

    ModeShape m;
    m.n = n;
    m.lambda = lambda;
    m.branch = fused ? Branch::Fused : Branch::Generic;
    m.x_left = u.x;
    m.x_right = v.x;
    m.phi_left.resize(u.y.size());
    m.dphi_left.resize(u.y.size());
    m.phi_right.resize(v.y.size());
    m.dphi_right.resize(v.y.size());
    for (std::size_t i = 0; i < u.y.size(); ++i) {
        m.phi_left[i] = cl * u.y[i];
        m.dphi_left[i] = cl * u.yx[i];
    }
    for (std::size_t i = 0; i < v.y.size(); ++i) {
        m.phi_right[i] = cr * v.y[i];
        m.dphi_right[i] = cr * v.yx[i];
    }
    m.phi_left.front() = 0.0;
    m.phi_right.back() = 0.0;

    const EnergyNorms e = energy_norms(m, cfg);
    m.normW = e.normW;
    m.normH0 = e.normH0;
    m.energy_form = e.energy_form;
    const double scale = std::sqrt(m.normH0);

    const double left0 = m.phi_left.back(), right0 = m.phi_right.front();
    if (std::abs(left0 - right0) > kContinuityTolerance * scale) {
        std::ostringstream msg;
        msg << "mode " << n << ": junction traces differ (" << left0 << " vs " << right0 << ")";
        throw NumericError(ErrorCode::JumpConditionViolation, msg.str());
    }
    m.phi0 = 0.5 * (left0 + right0);

    const double fl = s1 * m.dphi_left.back(), fr = s2 * m.dphi_right.front();
    const double inertia = lambda * cfg.mass() * m.phi0;
    m.jump_residual = std::abs(fl - fr - inertia) / std::max({std::abs(fl), std::abs(fr), std::abs(inertia), 1e-300});
    if (m.jump_residual > kJumpTolerance) {
        std::ostringstream msg;
        msg << "mode " << n << ": relative jump residual " << m.jump_residual;
        throw NumericError(ErrorCode::JumpConditionViolation, msg.str());
    }

    m.slope1 = m.dphi_right.back();
    if (!(std::abs(m.slope1) > 1e-300)) {
        std::ostringstream msg;
        msg << "mode " << n << ": boundary slope phi'(1) vanishes";
        throw NumericError(ErrorCode::JumpConditionViolation, msg.str());
    }
    return m;
}

ModeShape assemble_mode(int n, const SpectrumTable& table, const SystemConfig& config)
{
    return assemble_mode(n, table, Shooter(config));
}

std::vector<ModeShape> assemble_modes(int count, const SpectrumTable& table, const Shooter& shooter)
{
    if (count > table.count) throw NumericError(ErrorCode::InvalidArgument, "more modes requested than the table holds");
    std::vector<ModeShape> modes(count);
    parallel_for(count, [&](std::size_t i) { modes[i] = assemble_mode(static_cast<int>(i) + 1, table, shooter); });
    return modes;
}

double boundary_slope(int n, const SpectrumTable& table, const Shooter& shooter)
{
    const double lambda = table.lam(n);
    const JunctionState u = shooter.junction(Side::Left, lambda);
    if (table.in_lambda(n)) return -shooter.config().left().sigma.value(0.0) * u.yx;
    return -std::sqrt(lambda) * u.y;
}

EnergyNorms energy_norms(const ModeShape& mode, const SystemConfig& config)
{
    EnergyNorms e;
    auto side = [&](const std::vector<double>& x, const std::vector<double>& phi, const std::vector<double>& dphi,
                    const SideCoefficients& c) {
        const SideWeights s = side_weights(x, c);
        for (std::size_t i = 0; i < x.size(); ++i) {
            e.normW += s.w[i] * dphi[i] * dphi[i];
            e.normH0 += s.w[i] * s.rho[i] * phi[i] * phi[i];
            e.energy_form += s.w[i] * (s.sigma[i] * dphi[i] * dphi[i] + s.q[i] * phi[i] * phi[i]);
        }
    };
    side(mode.x_left, mode.phi_left, mode.dphi_left, config.left());
    side(mode.x_right, mode.phi_right, mode.dphi_right, config.right());
    const double z = mode.phi_left.back();
    e.normH0 += config.mass() * z * z;
    return e;
}

double h0_inner(const ModeShape& a, const ModeShape& b, const SystemConfig& config)
{
    if (a.x_left.size() != b.x_left.size() || a.x_right.size() != b.x_right.size())
        throw NumericError(ErrorCode::InvalidArgument, "modes sampled on different grids");
    double sum = config.mass() * a.phi_left.back() * b.phi_left.back();
    const SideWeights l = side_weights(a.x_left, config.left());
    for (std::size_t i = 0; i < a.x_left.size(); ++i) sum += l.w[i] * l.rho[i] * a.phi_left[i] * b.phi_left[i];
    const SideWeights r = side_weights(a.x_right, config.right());
    for (std::size_t i = 0; i < a.x_right.size(); ++i) sum += r.w[i] * r.rho[i] * a.phi_right[i] * b.phi_right[i];
    return sum;
}

double h0_norm_sq(const std::function<double(double)>& left, const std::function<double(double)>& right, double z,
                  const ModeShape& grid, const SystemConfig& config)
{
    double sum = config.mass() * z * z;
    const SideWeights l = side_weights(grid.x_left, config.left());
    for (std::size_t i = 0; i < grid.x_left.size(); ++i) sum += l.w[i] * l.rho[i] * std::pow(left(grid.x_left[i]), 2);
    const SideWeights r = side_weights(grid.x_right, config.right());
    for (std::size_t i = 0; i < grid.x_right.size(); ++i)
        sum += r.w[i] * r.rho[i] * std::pow(right(grid.x_right[i]), 2);
    return sum;
}

Eigen::MatrixXd orthogonality_matrix(const std::vector<ModeShape>& modes, const SystemConfig& config)
{
    const int k = static_cast<int>(modes.size());
    if (k < 1) throw NumericError(ErrorCode::InvalidArgument, "orthogonality matrix needs at least one mode");
    const SideWeights l = side_weights(modes[0].x_left, config.left());
    const SideWeights r = side_weights(modes[0].x_right, config.right());
    Eigen::MatrixXd g(k, k);
    parallel_for(k, [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        for (int j = 0; j <= i; ++j) {
            const ModeShape& a = modes[i];
            const ModeShape& b = modes[j];
            double sum = config.mass() * a.phi_left.back() * b.phi_left.back();
            for (std::size_t p = 0; p < a.x_left.size(); ++p) sum += l.w[p] * l.rho[p] * a.phi_left[p] * b.phi_left[p];
            for (std::size_t p = 0; p < a.x_right.size(); ++p)
                sum += r.w[p] * r.rho[p] * a.phi_right[p] * b.phi_right[p];
            g(i, j) = sum;
        }
    });
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) g(i, j) = g(j, i);
    return g;
}

double max_normalized_offdiagonal(const Eigen::MatrixXd& gram)
{
    double worst = 0.0;
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j)
            if (i != j) worst = std::max(worst, std::abs(gram(i, j)) / std::sqrt(gram(i, i) * gram(j, j)));
    return worst;
}

std::complex<double> ModalData::a(int n) const
{
    if (n == 0 || std::abs(n) > count()) throw NumericError(ErrorCode::InvalidArgument, "modal index out of range");
    return n > 0 ? pos[n - 1] : neg[-n - 1];
}

void ModalData::set(int n, std::complex<double> value)
{
    if (n == 0 || std::abs(n) > count()) throw NumericError(ErrorCode::InvalidArgument, "modal index out of range");
    (n > 0 ? pos[n - 1] : neg[-n - 1]) = value;
}

ModalData ModalData::from_real(std::vector<double> e, std::vector<double> f)
{
    if (e.size() != f.size()) throw NumericError(ErrorCode::InvalidArgument, "e and f must have equal length");
    ModalData d;
    d.pos.resize(e.size());
    d.neg.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        d.pos[i] = {0.5 * e[i], -0.5 * f[i]};
        d.neg[i] = std::conj(d.pos[i]);
    }
    d.e = std::move(e);
    d.f = std::move(f);
    return d;
}

ModalData ModalData::conjugate_symmetric(std::vector<std::complex<double>> positive)
{
    ModalData d;
    d.neg.resize(positive.size());
    d.e.resize(positive.size());
    d.f.resize(positive.size());
    for (std::size_t i = 0; i < positive.size(); ++i) {
        d.neg[i] = std::conj(positive[i]);
        d.e[i] = 2.0 * positive[i].real();
        d.f[i] = -2.0 * positive[i].imag();
    }
    d.pos = std::move(positive);
    return d;
}

ModalData ModalData::zeros(int count) { return from_real(std::vector<double>(count), std::vector<double>(count)); }

InitialData InitialData::zero()
{
    auto z = [](double) { return 0.0; };
    return {z, z, z, z, 0.0, 0.0};
}

void check_compatibility(const InitialData& data)
{
    const double ul = data.u0(0.0), vr = data.v0(0.0);
    const double scale = std::max({1.0, std::abs(ul), std::abs(vr), std::abs(data.z0)});
    if (std::abs(ul - data.z0) > kCompatibilityTolerance * scale
        || std::abs(vr - data.z0) > kCompatibilityTolerance * scale) {
        std::ostringstream msg;
        msg << "junction values disagree: u0(0) = " << ul << ", v0(0) = " << vr << ", z0 = " << data.z0;
        throw NumericError(ErrorCode::CompatibilityViolation, msg.str());
    }
}

ModalData fourier_coefficients(const InitialData& data, const std::vector<ModeShape>& modes,
                               const SystemConfig& config)
{
    check_compatibility(data);
    const int k = static_cast<int>(modes.size());
    if (k == 0) return ModalData::zeros(0);
    const ModeShape& ref = modes[0];
    const SideWeights l = side_weights(ref.x_left, config.left());
    const SideWeights r = side_weights(ref.x_right, config.right());
    // Density-weighted samples of the data, shared across modes.
    std::vector<double> du0(ref.x_left.size()), du1(ref.x_left.size()), dv0(ref.x_right.size()),
        dv1(ref.x_right.size());
    for (std::size_t i = 0; i < ref.x_left.size(); ++i) {
        du0[i] = l.w[i] * l.rho[i] * data.u0(ref.x_left[i]);
        du1[i] = l.w[i] * l.rho[i] * data.u1(ref.x_left[i]);
    }
    for (std::size_t i = 0; i < ref.x_right.size(); ++i) {
        dv0[i] = r.w[i] * r.rho[i] * data.v0(ref.x_right[i]);
        dv1[i] = r.w[i] * r.rho[i] * data.v1(ref.x_right[i]);
    }
    std::vector<double> e(k), f(k);
    parallel_for(k, [&](std::size_t j) {
        const ModeShape& m = modes[j];
        double p0 = config.mass() * data.z0 * m.phi0, p1 = config.mass() * data.z1 * m.phi0;
        for (std::size_t i = 0; i < m.x_left.size(); ++i) {
            p0 += du0[i] * m.phi_left[i];
            p1 += du1[i] * m.phi_left[i];
        }
        for (std::size_t i = 0; i < m.x_right.size(); ++i) {
            p0 += dv0[i] * m.phi_right[i];
            p1 += dv1[i] * m.phi_right[i];
        }
        e[j] = p0 / m.normH0;
        f[j] = p1 / (std::sqrt(m.lambda) * m.normH0);
    });
    return ModalData::from_real(std::move(e), std::move(f));
}

InitialData synthesize_initial_data(const ModalData& data, const std::vector<ModeShape>& modes)
{
    if (data.count() > static_cast<int>(modes.size()))
        throw NumericError(ErrorCode::InvalidArgument, "modal data has more entries than assembled modes");
    auto shared = std::make_shared<std::vector<ModeShape>>(modes.begin(), modes.begin() + data.count());
    std::vector<double> e(data.count()), g(data.count());
    for (int n = 1; n <= data.count(); ++n) {
        // e~ = a_n + a_{-n}, f~ = i (a_n - a_{-n}).
        e[n - 1] = (data.a(n) + data.a(-n)).real();
        g[n - 1] = std::sqrt(modes[n - 1].lambda) * (std::complex<double>(0, 1) * (data.a(n) - data.a(-n))).real();
    }
    auto sum = [shared](std::vector<double> c) {
        return [shared, c = std::move(c)](double x) {
            double s = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0.0) s += c[i] * (*shared)[i].value(x);
            return s;
        };
    };
    InitialData d;
    d.u0 = sum(e);
    d.v0 = sum(e);
    d.u1 = sum(g);
    d.v1 = sum(g);
    d.z0 = d.u0(0.0);
    d.z1 = d.u1(0.0);
    return d;
}

std::complex<double> scaled_coefficient(const ModalData& data, const std::vector<double>& slopes, int n)
{
    return slopes.at(std::abs(n) - 1) * data.a(n);
}

double asymmetric_norm_sq(const ModalData& data, const GapClassification& cls, const SpectrumTable& table,
                          const std::vector<double>& slopes)
{
    double total = 0.0;
    const int k = data.count();
    for (int sign : {1, -1}) {
        std::vector<std::complex<double>> t(k);
        for (int n = 1; n <= k; ++n) t[n - 1] = scaled_coefficient(data, slopes, sign * n);
        for (int n = 1; n <= k; ++n) {
            const SetLabel lab = cls.label(n);
            if (lab == SetLabel::A) {
                const double d = table.gap(n);
                const auto an = slot(t, n), an1 = slot(t, n + 1);
                total += d * d * (std::norm(an) + std::norm(an1)) + std::norm(an + an1);
            } else if (lab == SetLabel::BPlus || lab == SetLabel::BMinus) {
                total += std::norm(t[n - 1]);
            }
        }
    }
    return total;
}

double riesz_coordinate_norm_sq(const ModalData& data, const GapClassification& cls, const SpectrumTable& table,
                                const std::vector<double>& slopes)
{
    double total = 0.0;
    const int k = data.count();
    for (int sign : {1, -1}) {
        std::vector<std::complex<double>> t(k);
        for (int n = 1; n <= k; ++n) t[n - 1] = scaled_coefficient(data, slopes, sign * n);
        for (int n = 1; n <= k; ++n) {
            const SetLabel lab = cls.label(n);
            if (lab == SetLabel::A) {
                const auto an = slot(t, n), an1 = slot(t, n + 1);
                total += std::norm(an + an1) + std::norm(table.gap(n) * (an1 - an));
            } else if (lab == SetLabel::BPlus || lab == SetLabel::BMinus) {
                total += std::norm(t[n - 1]);
            }
        }
    }
    return total;
}

std::pair<std::complex<double>, std::complex<double>> RieszPair::coordinates(std::complex<double> an,
                                                                             std::complex<double> an1) const
{
    // a~ = phi'(1) a, recovered from the stencils: q[0] = 1 / (2 phi_n'(1)).
    const std::complex<double> tn = an / (2.0 * q[0]);
    const std::complex<double> tn1 = an1 / (2.0 * q[1]);
    return {tn + tn1, delta * (tn1 - tn)};
}

RieszPair riesz_vectors(int n, const GapClassification& cls, const SpectrumTable& table,
                        const std::vector<double>& slopes)
{
    if (!cls.in_A(n)) throw NumericError(ErrorCode::InvalidArgument, "Riesz pairs are defined for cluster indices");
    RieszPair r;
    r.n = n;
    r.delta = table.gap(n);
    const double sn = slopes.at(n - 1), sn1 = slopes.at(n);
    r.q = {0.5 / sn, 0.5 / sn1};
    r.p = {-0.5 / (r.delta * sn), 0.5 / (r.delta * sn1)};
    return r;
}

std::vector<AsymptoticFit> verify_mode_asymptotics(const std::vector<ModeShape>& modes, const SystemConfig& config)
{
    if (modes.empty()) return {};
    const ModeShape& ref = modes[0];
    const auto& L = config.left();
    const auto& R = config.right();
    const double a1 = std::pow(L.rho.value(-1.0), -0.25) * std::pow(L.sigma.value(-1.0), 0.75);
    const double a2 = std::pow(R.rho.value(1.0), -0.25) * std::pow(R.sigma.value(1.0), 0.75);
    const double p1 = L.rho.value(0.0) * L.sigma.value(0.0);
    const double p2 = R.rho.value(0.0) * R.sigma.value(0.0);

    // Travel time from the outer ends, and the WKB amplitude on the grid.
    auto travel = [](const std::vector<double>& x, const SideCoefficients& c, std::vector<double>& amp) {
        std::vector<double> f(x.size()), df(x.size());
        amp.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double rho = c.rho.value(x[i]), sig = c.sigma.value(x[i]);
            f[i] = std::sqrt(rho / sig);
            df[i] = (c.rho.derivative(x[i]) * sig - rho * c.sigma.derivative(x[i])) / (2.0 * sig * sig * f[i]);
            amp[i] = std::pow(rho * sig, -0.25);
        }
        return cumulative_integral(f, df, x[1] - x[0]);
    };
    std::vector<double> amp_l, amp_r;
    const std::vector<double> theta1 = travel(ref.x_left, L, amp_l);
    std::vector<double> theta2 = travel(ref.x_right, R, amp_r);
    const double g1 = theta1.back(), g2 = theta2.back();
    for (double& t : theta2) t = g2 - t;

    std::vector<AsymptoticFit> out(modes.size());
    parallel_for(modes.size(), [&](std::size_t k) {
        const ModeShape& m = modes[k];
        const double s = std::sqrt(m.lambda);
        auto fit = [&](Branch b) {
            double cl, cr;
            if (b == Branch::Fused) {
                cl = -a1 * a2 * std::pow(p2, 0.25) * std::cos(s * g2) / s;
                cr = a1 * a2 * std::pow(p1, 0.25) * std::cos(s * g1) / s;
            } else {
                cl = a1 * a2 * std::pow(p2, -0.25) * std::sin(s * g2) / s;
                cr = a1 * a2 * std::pow(p1, -0.25) * std::sin(s * g1) / s;
            }
            std::vector<double> psi_l(m.x_left.size()), psi_r(m.x_right.size());
            double num = 0.0, den = 0.0, peak = 0.0;
            for (std::size_t i = 0; i < psi_l.size(); ++i) {
                psi_l[i] = cl * amp_l[i] * std::sin(s * theta1[i]);
                num += psi_l[i] * m.phi_left[i];
                den += psi_l[i] * psi_l[i];
                peak = std::max(peak, std::abs(m.phi_left[i]));
            }
            for (std::size_t i = 0; i < psi_r.size(); ++i) {
                psi_r[i] = cr * amp_r[i] * std::sin(s * theta2[i]);
                num += psi_r[i] * m.phi_right[i];
                den += psi_r[i] * psi_r[i];
                peak = std::max(peak, std::abs(m.phi_right[i]));
            }
            const double c = den > 0.0 ? num / den : 0.0;
            double err = 0.0;
            for (std::size_t i = 0; i < psi_l.size(); ++i) err = std::max(err, std::abs(m.phi_left[i] - c * psi_l[i]));
            for (std::size_t i = 0; i < psi_r.size(); ++i) err = std::max(err, std::abs(m.phi_right[i] - c * psi_r[i]));
            return err / peak;
        };
        AsymptoticFit f;
        f.n = m.n;
        f.branch = m.branch;
        f.error = fit(m.branch);
        f.other_error = fit(m.branch == Branch::Fused ? Branch::Generic : Branch::Fused);
        f.branch_mismatch = f.other_error < f.error;
        out[k] = f;
    });
    return out;
}

void write_mode_csv(const ModeShape& mode, const std::string& path)
{
    CsvWriter w(path);
    w.header({"x", "phi", "phi_prime"});
    for (std::size_t i = 0; i < mode.x_left.size(); ++i)
        w.field(mode.x_left[i]).field(mode.phi_left[i]).field(mode.dphi_left[i]).end_row();
    for (std::size_t i = 0; i < mode.x_right.size(); ++i)
        w.field(mode.x_right[i]).field(mode.phi_right[i]).field(mode.dphi_right[i]).end_row();
}

void write_mode_summary_csv(const std::vector<ModeShape>& modes, const std::string& path)
{
    CsvWriter w(path);
    w.header({"n", "lambda", "phi0", "slope1", "normW", "normH0", "branch"});
    for (const auto& m : modes)
        w.field(m.n).field(m.lambda).field(m.phi0).field(m.slope1).field(m.normW).field(m.normH0).field(
            to_string(m.branch)).end_row();
}

} // namespace stringmass
