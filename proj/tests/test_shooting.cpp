#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "stringmass/error.hpp"
#include "stringmass/shooting.hpp"
#include "support.hpp"

using namespace stringmass;
using std::numbers::pi;

namespace {

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("left shooting closed forms")
{
    const auto cfg = testsupport::unit_config();
    const double lam = pi * pi / 4;
    const auto sol = shoot_left(lam, cfg);
    CHECK(sol.y.front() == 0.0);
    CHECK(sol.yx.front() == 1.0);
    CHECK(sol.y0 == doctest::Approx(2.0 / pi).epsilon(1e-12));
    CHECK(std::abs(sol.yx0) <= 1e-12);
    for (std::size_t i = 0; i < sol.x.size(); i += 97)
        CHECK(sol.y[i] == doctest::Approx(std::sin(std::sqrt(lam) * (sol.x[i] + 1)) / std::sqrt(lam)).epsilon(1e-12));

    const auto flat = shoot_left(0.0, cfg);
    CHECK(flat.y0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(flat.yx0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("right shooting closed forms")
{
    const auto cfg = testsupport::unit_config();
    const double lam = pi * pi / 4;
    const auto sol = shoot_right(lam, cfg);
    CHECK(sol.y.back() == 0.0);
    CHECK(sol.yx.back() == -1.0);
    CHECK(sol.x.front() == 0.0);
    CHECK(sol.y0 == doctest::Approx(2.0 / pi).epsilon(1e-12));
    CHECK(std::abs(sol.yx0) <= 1e-12);
    for (std::size_t i = 0; i < sol.x.size(); i += 97)
        CHECK(sol.y[i] == doctest::Approx(std::sin(std::sqrt(lam) * (1 - sol.x[i])) / std::sqrt(lam)).epsilon(1e-12));

    const auto flat = shoot_right(0.0, cfg);
    CHECK(flat.y0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(flat.yx0 == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("fourth-order convergence of the junction value")
{
    const auto cfg = testsupport::unit_config();
    const double lam = 400.0;
    const double exact = std::sin(20.0) / 20.0;
    const double e1 = std::abs(Shooter(cfg, 1024).junction(Side::Left, lam).y - exact);
    const double e2 = std::abs(Shooter(cfg, 2048).junction(Side::Left, lam).y - exact);
    const double ratio = e1 / e2;
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("reflection symmetry of junction values")
{
    const auto cfg = testsupport::symmetric_smooth_config();
    const Shooter sh(cfg);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-50.0, 2000.0);
    for (int k = 0; k < 20; ++k) {
        const double lam = dist(gen);
        const auto u = sh.junction(Side::Left, lam);
        const auto v = sh.junction(Side::Right, lam);
        CHECK(std::abs(u.y - v.y) <= 1e-8 * std::max(1.0, std::abs(u.y)));
        CHECK(std::abs(u.yx + v.yx) <= 1e-8 * std::max(1.0, std::abs(u.yx)));
    }
}

TEST_CASE("left problem equals the right problem under x -> -x")
{
    const auto base = testsupport::skew_config();
    const auto& l = base.left();
    const SystemConfig mirrored(l, SideCoefficients{l.rho.reflected(), l.sigma.reflected(), l.q.reflected()},
                                base.mass());
    const Shooter sh(mirrored);
    for (double lam : {-30.0, 3.0, 55.5, 700.0}) {
        const auto u = sh.junction(Side::Left, lam);
        const auto v = sh.junction(Side::Right, lam);
        CHECK(u.y == doctest::Approx(v.y).epsilon(1e-10));
        CHECK(u.yx == doctest::Approx(-v.yx).epsilon(1e-10));
    }
}

TEST_CASE("lambda derivative against closed form and finite differences")
{
    const auto unit = testsupport::unit_config();
    const double lam = 7.0, s = std::sqrt(lam);
    const auto d = shoot_lambda_derivative(lam, Side::Right, unit);
    const double exact = std::cos(s) / (2 * lam) - std::sin(s) / (2 * lam * s);
    CHECK(std::abs(d.y_lambda0 - exact) <= 1e-7);
    CHECK(d.y_lambda.back() == 0.0);
    CHECK(d.y_lambda_x.back() == 0.0);

    const auto cfg = testsupport::skew_config();
    const Shooter sh(cfg);
    const double h = 1e-5;
    for (Side side : {Side::Left, Side::Right}) {
        for (double l : {2.0, 40.0, 310.0}) {
            const auto js = sh.junction_sensitivity(side, l);
            const double fd = (sh.junction(side, l + h).y - sh.junction(side, l - h).y) / (2 * h);
            const double fdx = (sh.junction(side, l + h).yx - sh.junction(side, l - h).yx) / (2 * h);
            CHECK(std::abs(js.y_lambda - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
            CHECK(std::abs(js.y_lambda_x - fdx) <= 1e-5 * std::max(1.0, std::abs(fdx)));
        }
    }
}

TEST_CASE("lambda derivative approaches its high-frequency leading term")
{
    const auto cfg = testsupport::skew_config();
    const Shooter sh(cfg);
    const auto& r = cfg.right();
    const double g2 = cfg.gamma2();
    const double a2 = std::pow(r.rho.value(1.0), -0.25) * std::pow(r.sigma.value(1.0), 0.75);
    const double amp = a2 * std::pow(r.rho.value(0.0) * r.sigma.value(0.0), -0.25);
    std::vector<double> lams, errs;
    for (int k = 10; k <= 40; ++k) {
        const double lam = std::pow(k * pi / g2, 2);
        const double s = std::sqrt(lam);
        const double lead = amp * g2 * std::cos(s * g2) / (2 * s);
        const double got = s * sh.junction_sensitivity(Side::Right, lam).y_lambda;
        lams.push_back(lam);
        errs.push_back(std::abs(got - lead));
    }
    const double slope = log_log_slope(lams, errs);
    MESSAGE("log-log slope of the leading-term residual: " << slope);
    CHECK(slope <= -1.0);
}

TEST_CASE("ODE residual on the stored grid")
{
    const auto cfg = testsupport::skew_config();
    for (double lam : {-20.0, 15.0, 900.0}) {
        for (Side side : {Side::Left, Side::Right}) {
            const auto sol = Shooter(cfg).solve(side, lam);
            const auto& c = cfg.side(side);
            const double h = sol.x[1] - sol.x[0];
            double worst = 0.0, scale = 0.0;
            for (std::size_t i = 1; i + 1 < sol.x.size(); ++i) {
                const double flux_p = c.sigma.value(sol.x[i + 1]) * sol.yx[i + 1];
                const double flux_m = c.sigma.value(sol.x[i - 1]) * sol.yx[i - 1];
                const double res = -(flux_p - flux_m) / (2 * h)
                                 + (c.q.value(sol.x[i]) - lam * c.rho.value(sol.x[i])) * sol.y[i];
                worst = std::max(worst, std::abs(res));
                scale = std::max(scale, std::abs(sol.y[i]) + std::abs(sol.yx[i]));
            }
            CHECK(worst <= 1e-4 * (1 + std::abs(lam)) * std::max(1.0, scale));
        }
    }
}

TEST_CASE("Wronskian is conserved")
{
    const auto cfg = testsupport::skew_config();
    const Shooter sh(cfg);
    for (Side side : {Side::Left, Side::Right}) {
        const auto a = sh.solve(side, 123.0);
        const auto b = sh.solve(side, 123.0, Seed{1.0, 0.0});
        const auto& sigma = cfg.side(side).sigma;
        const double w0 = sigma.value(a.x[0]) * (a.y[0] * b.yx[0] - b.y[0] * a.yx[0]);
        double drift = 0.0;
        for (std::size_t i = 0; i < a.x.size(); ++i) {
            const double w = sigma.value(a.x[i]) * (a.y[i] * b.yx[i] - b.y[i] * a.yx[i]);
            drift = std::max(drift, std::abs(w - w0));
        }
        CHECK(drift <= 1e-8 * std::abs(w0));
    }
}

TEST_CASE("junction values vary smoothly in lambda")
{
    const auto cfg = testsupport::skew_config();
    const Shooter sh(cfg);
    const double h = 1e-3;
    double prev_dd = 0.0, max_jump = 0.0, scale = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double lam = 50.0 + k * h;
        const double dd = (sh.junction(Side::Left, lam + h).y - sh.junction(Side::Left, lam).y) / h;
        if (k > 0) max_jump = std::max(max_jump, std::abs(dd - prev_dd));
        scale = std::max(scale, std::abs(dd));
        prev_dd = dd;
    }
    CHECK(max_jump <= 1e-2 * scale);
}

TEST_CASE("interior zero counting follows Sturm oscillation")
{
    const auto cfg = testsupport::unit_config();
    const Shooter sh(cfg);
    // Between (j pi)^2 and ((j+1) pi)^2 the left solution has exactly j interior zeros.
    for (int j = 0; j < 10; ++j)
        CHECK(sh.interior_zeros(Side::Left, std::pow((j + 0.5) * pi, 2)) == j);
}

TEST_CASE("guards")
{
    const auto cfg = testsupport::unit_config();
    try {
        shoot_left(-2e4, cfg);
        FAIL("expected NonFiniteState");
    } catch (const NumericError& e) {
        CHECK(e.code() == ErrorCode::NonFiniteState);
    }
    CHECK_THROWS_AS(Shooter(cfg, 32), NumericError);
}
