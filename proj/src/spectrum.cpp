#include "stringmass/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/parallel.hpp"

namespace stringmass {

namespace {

constexpr double kPoleGuard = 1e-30;
constexpr double kNegativeStart = -1e3;
constexpr double kBracketShrink = 1e-6;
constexpr int kScanRefinements = 6;

// Bracketed root of f on [lo, hi]; f(lo), f(hi) must have opposite signs.
template <class F>
double polish_root(F&& f, double lo, double hi, double flo, double fhi)
{
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t iters = 200;
    boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 3);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

double scaled_junction(double y, double yx, double lambda)
{
    const double scale = std::hypot(y, yx / std::sqrt(1.0 + std::abs(lambda)));
    return scale > 0.0 ? y / scale : 0.0;
}

bool fused_pair(const std::vector<TaggedMu>& mu, int first0)
{
    // Slots first0 and first0+1 (0-based) carry the same fused value.
    return mu[first0].tag == MuTag::Both && mu[first0 + 1].tag == MuTag::Both
        && mu[first0].value == mu[first0 + 1].value;
}

// Shared slot-wise root finder for F(lambda) = mass * lambda.
std::vector<double> slot_roots(const std::vector<TaggedMu>& mu, const Shooter& shooter, double mass)
{
    const SystemConfig& cfg = shooter.config();
    const double s1 = cfg.left().sigma.value(0.0);
    const double s2 = cfg.right().sigma.value(0.0);
    const int count = static_cast<int>(mu.size());
    std::vector<double> roots(count);

    auto cleared = [&](double lambda) {
        const JunctionState u = shooter.junction(Side::Left, lambda);
        const JunctionState v = shooter.junction(Side::Right, lambda);
        return s1 * v.y * u.yx - s2 * u.y * v.yx - mass * lambda * u.y * v.y;
    };

    parallel_for(count, [&](std::size_t i) {
        const int n = static_cast<int>(i) + 1;
        if (n >= 2 && fused_pair(mu, n - 2)) {
            roots[i] = mu[n - 2].value;
            return;
        }
        double lo, hi;
        if (n == 1) {
            lo = kNegativeStart;
            hi = mu[0].value - kBracketShrink * mu[0].value;
        } else {
            const double a = mu[n - 2].value, b = mu[n - 1].value;
            const double guard = kBracketShrink * (b - a);
            lo = a + guard;
            hi = b - guard;
        }
        const CharacteristicValue clo = eval_characteristic(lo, shooter);
        const CharacteristicValue chi = eval_characteristic(hi, shooter);
        const double glo = clo.F - mass * lo, ghi = chi.F - mass * hi;
        if (!(glo > 0.0 && ghi < 0.0)) {
            std::ostringstream msg;
            msg << "slot " << n << ": F - M lambda is " << glo << " at " << lo << " and " << ghi << " at " << hi
                << " (expected +, -)";
            throw NumericError(ErrorCode::BracketFailure, msg.str());
        }
        roots[i] = polish_root(cleared, lo, hi, cleared(lo), cleared(hi));
    });
    return roots;
}

} // namespace

std::string_view to_string(MuTag tag)
{
    switch (tag) {
    case MuTag::Left: return "left";
    case MuTag::Right: return "right";
    case MuTag::Both: return "both";
    }
    return "?";
}

CharacteristicValue eval_characteristic(double lambda, const Shooter& shooter)
{
    const SystemConfig& cfg = shooter.config();
    const JunctionState u = shooter.junction(Side::Left, lambda);
    const JunctionState v = shooter.junction(Side::Right, lambda);
    const double su = scaled_junction(u.y, u.yx, lambda);
    const double sv = scaled_junction(v.y, v.yx, lambda);
    if (std::abs(su * sv) <= kPoleGuard) {
        std::ostringstream msg;
        msg << "lambda = " << lambda << " sits on a pole of F (u(0) = " << u.y << ", v(0) = " << v.y << ")";
        throw NumericError(ErrorCode::PoleProximity, msg.str());
    }
    CharacteristicValue c;
    c.lambda = lambda;
    c.u0 = u.y;
    c.ux0 = u.yx;
    c.v0 = v.y;
    c.vx0 = v.yx;
    const double s1 = cfg.left().sigma.value(0.0);
    const double s2 = cfg.right().sigma.value(0.0);
    c.F = (s1 * v.y * u.yx - s2 * u.y * v.yx) / (u.y * v.y);
    c.F1 = s1 * u.yx / u.y;
    c.F2 = s2 * v.yx / v.y;
    return c;
}

CharacteristicValue eval_characteristic(double lambda, const SystemConfig& config)
{
    return eval_characteristic(lambda, Shooter(config));
}

std::vector<double> dirichlet_eigenvalues(Side side, int count, const Shooter& shooter)
{
    if (count < 1) throw NumericError(ErrorCode::InvalidArgument, "Dirichlet eigenvalue count must be >= 1");
    const SystemConfig& cfg = shooter.config();
    const double gamma = side == Side::Left ? cfg.gamma1() : cfg.gamma2();
    const double s_max = (count + 2) * std::numbers::pi / gamma;
    const double lambda_max = s_max * s_max;
    const int expected = shooter.interior_zeros(side, lambda_max);
    if (expected < count) {
        std::ostringstream msg;
        msg << to_string(side) << " side: only " << expected << " Dirichlet eigenvalues below " << lambda_max
            << ", " << count << " requested";
        throw NumericError(ErrorCode::RootCountShortfall, msg.str());
    }
    auto g = [&](double lambda) { return shooter.junction(side, lambda).y; };

    double ds = std::numbers::pi / (8.0 * gamma);
    int found = 0;
    for (int attempt = 0; attempt <= kScanRefinements; ++attempt, ds *= 0.5) {
        std::vector<double> roots;
        double s_prev = 0.0, g_prev = g(0.0);
        const int steps = static_cast<int>(std::ceil(s_max / ds));
        for (int k = 1; k <= steps; ++k) {
            const double s = k == steps ? s_max : k * ds;
            const double gs = g(s * s);
            if (g_prev == 0.0) {
                // Exact hit on the previous grid point, already recorded.
            } else if (gs == 0.0 || (gs > 0.0) != (g_prev > 0.0)) {
                roots.push_back(polish_root(g, s_prev * s_prev, s * s, g_prev, gs));
            }
            s_prev = s;
            g_prev = gs;
        }
        found = static_cast<int>(roots.size());
        if (found == expected) {
            roots.resize(count);
            return roots;
        }
    }
    std::ostringstream msg;
    msg << to_string(side) << " side: scan isolated " << found << " of " << expected
        << " Dirichlet eigenvalues below " << lambda_max;
    throw NumericError(ErrorCode::RootCountShortfall, msg.str());
}

std::vector<double> dirichlet_eigenvalues(Side side, int count, const SystemConfig& config)
{
    return dirichlet_eigenvalues(side, count, Shooter(config));
}

std::vector<TaggedMu> merge_spectra(const std::vector<double>& left, const std::vector<double>& right, double tol)
{
    std::vector<TaggedMu> out;
    out.reserve(left.size() + right.size());
    std::size_t i = 0, j = 0;
    while (i < left.size() || j < right.size()) {
        if (j == right.size()) {
            out.push_back({left[i++], MuTag::Left});
        } else if (i == left.size()) {
            out.push_back({right[j++], MuTag::Right});
        } else {
            const double a = left[i], b = right[j];
            if (std::abs(a - b) <= tol * (1.0 + std::min(a, b))) {
                const double fused = 0.5 * (a + b);
                out.push_back({fused, MuTag::Both});
                out.push_back({fused, MuTag::Both});
                ++i;
                ++j;
            } else if (a < b) {
                out.push_back({a, MuTag::Left});
                ++i;
            } else {
                out.push_back({b, MuTag::Right});
                ++j;
            }
        }
    }
    return out;
}

std::vector<double> regular_eigenvalues(const std::vector<TaggedMu>& mu, const Shooter& shooter)
{
    return slot_roots(mu, shooter, 0.0);
}

std::vector<double> mass_eigenvalues(const std::vector<TaggedMu>& mu, const Shooter& shooter)
{
    return slot_roots(mu, shooter, shooter.config().mass());
}

double SpectrumTable::omega(int n) const
{
    if (n == 0) throw NumericError(ErrorCode::InvalidArgument, "index 0 is not a mode index");
    return n > 0 ? std::sqrt(lambda.at(n - 1)) : -std::sqrt(lambda.at(-n - 1));
}

double SpectrumTable::gap(int n) const
{
    if (n < 1 || n >= count) return std::numeric_limits<double>::infinity();
    return delta[n - 1];
}

bool SpectrumTable::in_lambda(int n) const
{
    return n >= 2 && n <= count && fused_pair(mu, n - 2);
}

SpectrumTable build_spectrum_table(int count, const Shooter& shooter, double fusion_tol)
{
    if (count < 2) throw NumericError(ErrorCode::InvalidArgument, "spectrum table needs count >= 2");
    const SystemConfig& cfg = shooter.config();

    std::vector<double> left, right;
    parallel_for(2, [&](std::size_t k) {
        if (k == 0)
            left = dirichlet_eigenvalues(Side::Left, count, shooter);
        else
            right = dirichlet_eigenvalues(Side::Right, count, shooter);
    });
    auto merged = merge_spectra(left, right, fusion_tol);
    merged.resize(count);

    SpectrumTable t;
    t.count = count;
    t.mu = std::move(merged);
    t.mass = cfg.mass();
    t.gamma1 = cfg.gamma1();
    t.gamma2 = cfg.gamma2();
    t.lambda_prime = regular_eigenvalues(t.mu, shooter);
    t.lambda = mass_eigenvalues(t.mu, shooter);

    auto violation = [](const std::string& what) { throw NumericError(ErrorCode::InterlacingViolation, what); };
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)); };

    if (!(t.lambda[0] > 0.0 && t.lambda[0] < t.lambda_prime[0] && t.lambda_prime[0] < t.mu[0].value))
        violation("lambda_1 < lambda'_1 < mu_1 fails");
    for (int n = 1; n < count; ++n) {
        const double a = t.mu[n - 1].value, b = t.mu[n].value;
        const double l = t.lambda[n], lp = t.lambda_prime[n];
        bool ok;
        if (fused_pair(t.mu, n - 1))
            ok = close(l, a) && close(lp, a);
        else
            ok = a < l && l < lp && lp < b;
        if (!ok) {
            std::ostringstream msg;
            msg << "chain at n = " << n << ": mu_n = " << a << ", lambda_{n+1} = " << l
                << ", lambda'_{n+1} = " << lp << ", mu_{n+1} = " << b;
            violation(msg.str());
        }
        if (!(t.lambda[n] - t.lambda[n - 1] >= 1e-6 * t.lambda[n - 1])) {
            std::ostringstream msg;
            msg << "lambda_" << n << " and lambda_" << n + 1 << " are not separated";
            violation(msg.str());
        }
    }
    t.delta.resize(count - 1);
    for (int n = 1; n < count; ++n)
        t.delta[n - 1] = std::sqrt(t.lambda[n]) - std::sqrt(t.lambda[n - 1]);
    return t;
}

SpectrumTable build_spectrum_table(int count, const SystemConfig& config, const SpectrumOptions& opts)
{
    return build_spectrum_table(count, Shooter(config, opts.n_steps), opts.fusion_tol);
}

SpectrumTable mass_free_view(const SpectrumTable& table)
{
    SpectrumTable t = table;
    t.lambda = table.lambda_prime;
    t.mass = 0.0;
    for (int n = 1; n < t.count; ++n)
        t.delta[n - 1] = std::sqrt(t.lambda[n]) - std::sqrt(t.lambda[n - 1]);
    return t;
}

void write_spectrum_csv(const SpectrumTable& table, const std::string& path)
{
    CsvWriter w(path);
    w.header({"n", "mu", "mu_tag", "lambda_prime", "lambda", "sqrt_lambda", "delta_n"});
    for (int n = 1; n <= table.count; ++n) {
        w.field(n).field(table.mu_at(n)).field(to_string(table.tag(n)));
        w.field(table.lambda_prime[n - 1]).field(table.lam(n)).field(std::sqrt(table.lam(n)));
        if (n < table.count)
            w.field(table.gap(n));
        else
            w.field(std::string_view(""));
        w.end_row();
    }
}

} // namespace stringmass
