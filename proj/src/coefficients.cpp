#include "stringmass/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "stringmass/error.hpp"

namespace stringmass {

namespace {

constexpr int kValidationPoints = 10000;
constexpr double kDomainSlack = 1e-12;

double horner(const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

double horner_derivative(const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;)
        acc = acc * x + static_cast<double>(k) * c[k];
    return acc;
}

// Three-point second-order slope estimates on a nonuniform grid.
std::vector<double> hermite_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    std::vector<double> m(n);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return m;
    }
    auto three_point = [&](std::size_t i0, double at) {
        // derivative at `at` of the parabola through nodes i0, i0+1, i0+2
        const double x0 = x[i0], x1 = x[i0 + 1], x2 = x[i0 + 2];
        const double l0 = ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2));
        const double l1 = ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2));
        const double l2 = ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
        return l0 * y[i0] + l1 * y[i0 + 1] + l2 * y[i0 + 2];
    };
    m[0] = three_point(0, x[0]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        m[i] = three_point(i - 1, x[i]);
    m[n - 1] = three_point(n - 3, x[n - 1]);
    return m;
}

// Adaptive Simpson with a global node budget.
struct Simpson {
    const std::function<double(double)>& f;
    long budget;
    long used = 0;

    double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        used += 2;
        if (used > budget)
            throw NumericError(ErrorCode::QuadratureFailure, "adaptive Simpson exceeded node budget");
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
             + step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol)
{
    // Seed on a uniform partition so that piecewise data is resolved from the start.
    constexpr int kPanels = 64;
    const double h = (b - a) / kPanels;
    double rough = 0.0;
    for (int i = 0; i <= kPanels; ++i)
        rough += (i == 0 || i == kPanels ? 0.5 : 1.0) * std::abs(f(a + i * h));
    rough *= h;
    const double abs_tol = rel_tol * std::max(rough, 1e-300) / kPanels;

    Simpson s{f, 2'000'000};
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + i * h, hi = lo + h, mid = 0.5 * (lo + hi);
        const double flo = f(lo), fmid = f(mid), fhi = f(hi);
        const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
        total += s.step(lo, hi, flo, fmid, fhi, whole, abs_tol, 40);
    }
    return total;
}

} // namespace

std::string_view to_string(Side side) { return side == Side::Left ? "left" : "right"; }

Interval side_interval(Side side)
{
    return side == Side::Left ? Interval{-1.0, 0.0} : Interval{0.0, 1.0};
}

ProfileSpec ProfileSpec::constant(double v)
{
    ProfileSpec s;
    s.kind = ProfileKind::Constant;
    s.value = v;
    return s;
}

ProfileSpec ProfileSpec::polynomial(std::vector<double> ascending)
{
    ProfileSpec s;
    s.kind = ProfileKind::Polynomial;
    s.coeffs = std::move(ascending);
    return s;
}

ProfileSpec ProfileSpec::samples(std::vector<double> x, std::vector<double> y)
{
    ProfileSpec s;
    s.kind = ProfileKind::Samples;
    s.xs = std::move(x);
    s.ys = std::move(y);
    return s;
}

double CoefficientProfile::value(double x) const
{
    switch (spec_.kind) {
    case ProfileKind::Constant:
        return spec_.value;
    case ProfileKind::Polynomial:
        return horner(spec_.coeffs, x);
    case ProfileKind::Samples: {
        const auto& xs = spec_.xs;
        const auto& ys = spec_.ys;
        const double xc = std::clamp(x, xs.front(), xs.back());
        auto it = std::upper_bound(xs.begin(), xs.end(), xc);
        std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin(), 1) - 1, xs.size() - 2);
        const double h = xs[i + 1] - xs[i];
        const double t = (xc - xs[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * ys[i] + (t3 - 2 * t2 + t) * h * slopes_[i]
             + (-2 * t3 + 3 * t2) * ys[i + 1] + (t3 - t2) * h * slopes_[i + 1];
    }
    }
    return 0.0;
}

double CoefficientProfile::derivative(double x) const
{
    switch (spec_.kind) {
    case ProfileKind::Constant:
        return 0.0;
    case ProfileKind::Polynomial:
        return horner_derivative(spec_.coeffs, x);
    case ProfileKind::Samples: {
        const auto& xs = spec_.xs;
        const auto& ys = spec_.ys;
        const double xc = std::clamp(x, xs.front(), xs.back());
        auto it = std::upper_bound(xs.begin(), xs.end(), xc);
        std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin(), 1) - 1, xs.size() - 2);
        const double h = xs[i + 1] - xs[i];
        const double t = (xc - xs[i]) / h;
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) * ys[i] + (-6 * t2 + 6 * t) * ys[i + 1]) / h
             + (3 * t2 - 4 * t + 1) * slopes_[i] + (3 * t2 - 2 * t) * slopes_[i + 1];
    }
    }
    return 0.0;
}

CoefficientProfile CoefficientProfile::scaled(double factor) const
{
    if (!(factor > 0.0))
        throw NumericError(ErrorCode::InvalidArgument, "profile scale factor must be positive");
    CoefficientProfile out = *this;
    out.spec_.value *= factor;
    for (auto& c : out.spec_.coeffs) c *= factor;
    for (auto& y : out.spec_.ys) y *= factor;
    for (auto& m : out.slopes_) m *= factor;
    return out;
}

CoefficientProfile CoefficientProfile::reflected() const
{
    CoefficientProfile out = *this;
    out.side_ = side_ == Side::Left ? Side::Right : Side::Left;
    for (std::size_t k = 1; k < out.spec_.coeffs.size(); k += 2)
        out.spec_.coeffs[k] = -out.spec_.coeffs[k];
    if (spec_.kind == ProfileKind::Samples) {
        const std::size_t n = spec_.xs.size();
        for (std::size_t i = 0; i < n; ++i) {
            out.spec_.xs[i] = -spec_.xs[n - 1 - i];
            out.spec_.ys[i] = spec_.ys[n - 1 - i];
            out.slopes_[i] = -slopes_[n - 1 - i];
        }
    }
    return out;
}

ProfileSpec CoefficientProfile::dense_samples(int n) const
{
    const Interval iv = side_interval(side_);
    std::vector<double> x(n + 1), y(n + 1);
    for (int i = 0; i <= n; ++i) {
        x[i] = iv.lo + iv.length() * i / n;
        y[i] = value(x[i]);
    }
    x.back() = iv.hi;
    return ProfileSpec::samples(std::move(x), std::move(y));
}

CoefficientProfile build_profile(const ProfileSpec& spec, Side side, CoefficientRole role)
{
    const Interval iv = side_interval(side);
    CoefficientProfile p;
    p.side_ = side;
    p.spec_ = spec;

    switch (spec.kind) {
    case ProfileKind::Constant:
        if (!std::isfinite(spec.value))
            throw NumericError(ErrorCode::InvalidArgument, "constant profile value is not finite");
        break;
    case ProfileKind::Polynomial:
        if (spec.coeffs.empty())
            throw NumericError(ErrorCode::InvalidArgument, "polynomial profile needs at least one coefficient");
        break;
    case ProfileKind::Samples: {
        if (spec.xs.size() < 2 || spec.xs.size() != spec.ys.size())
            throw NumericError(ErrorCode::DomainMismatch, "sampled profile needs >= 2 matching (x, y) pairs");
        if (!std::is_sorted(spec.xs.begin(), spec.xs.end(), std::less_equal<>()))
            throw NumericError(ErrorCode::DomainMismatch, "sample abscissae must be strictly increasing");
        if (spec.xs.front() > iv.lo + kDomainSlack || spec.xs.back() < iv.hi - kDomainSlack) {
            std::ostringstream msg;
            msg << "samples span [" << spec.xs.front() << ", " << spec.xs.back()
                << "] but the " << to_string(side) << " side is [" << iv.lo << ", " << iv.hi << "]";
            throw NumericError(ErrorCode::DomainMismatch, msg.str());
        }
        p.slopes_ = hermite_slopes(spec.xs, spec.ys);
        break;
    }
    }

    for (int i = 0; i <= kValidationPoints; ++i) {
        const double x = iv.lo + iv.length() * i / kValidationPoints;
        const double v = p.value(x);
        const bool ok = role == CoefficientRole::Potential ? v >= 0.0 : v > 0.0;
        if (!ok || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << (role == CoefficientRole::Density ? "rho" : role == CoefficientRole::Tension ? "sigma" : "q")
                << " on the " << to_string(side) << " side takes value " << v << " at x = " << x;
            throw NumericError(ErrorCode::NonPositiveCoefficient, msg.str());
        }
    }
    return p;
}

double optical_length(const CoefficientProfile& rho, const CoefficientProfile& sigma)
{
    if (rho.side() != sigma.side())
        throw NumericError(ErrorCode::InvalidArgument, "rho and sigma must live on the same side");
    const Interval iv = side_interval(rho.side());
    const std::function<double(double)> f = [&](double x) { return std::sqrt(rho.value(x) / sigma.value(x)); };
    return adaptive_simpson(f, iv.lo, iv.hi, 1e-12);
}

SideCoefficients build_side(Side side, const ProfileSpec& rho, const ProfileSpec& sigma, const ProfileSpec& q)
{
    return SideCoefficients{build_profile(rho, side, CoefficientRole::Density),
                            build_profile(sigma, side, CoefficientRole::Tension),
                            build_profile(q, side, CoefficientRole::Potential)};
}

SystemConfig::SystemConfig(SideCoefficients left, SideCoefficients right, double mass)
    : left_(std::move(left)), right_(std::move(right)), mass_(mass)
{
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw NumericError(ErrorCode::InvalidArgument, "mass must be positive and finite");
    if (left_.rho.side() != Side::Left || left_.sigma.side() != Side::Left || left_.q.side() != Side::Left
        || right_.rho.side() != Side::Right || right_.sigma.side() != Side::Right
        || right_.q.side() != Side::Right)
        throw NumericError(ErrorCode::DomainMismatch, "profiles assigned to the wrong side");
    gamma1_ = optical_length(left_.rho, left_.sigma);
    gamma2_ = optical_length(right_.rho, right_.sigma);
}

SystemConfig SystemConfig::with_mass(double mass) const
{
    return SystemConfig(left_, right_, mass);
}

SystemConfig SystemConfig::unit(double mass)
{
    const auto one = ProfileSpec::constant(1.0);
    const auto zero = ProfileSpec::constant(0.0);
    return SystemConfig(build_side(Side::Left, one, one, zero), build_side(Side::Right, one, one, zero), mass);
}

} // namespace stringmass
