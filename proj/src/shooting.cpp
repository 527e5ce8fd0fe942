#include "stringmass/shooting.hpp"

#include <cmath>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"

namespace stringmass {

namespace {

constexpr double kMostNegativeLambda = -1e4;

struct State {
    double y, w, yl, wl;
};

void check_lambda(double lambda)
{
    if (!std::isfinite(lambda) || lambda < kMostNegativeLambda) {
        std::ostringstream msg;
        msg << "lambda = " << lambda << " is outside the supported range [" << kMostNegativeLambda << ", inf)";
        throw NumericError(ErrorCode::NonFiniteState, msg.str());
    }
}

} // namespace

Shooter::Shooter(const SystemConfig& config, int n_steps) : config_(config), n_(n_steps)
{
    if (n_steps < kMinShootingSteps) {
        std::ostringstream msg;
        msg << "n_steps = " << n_steps << " is below the minimum " << kMinShootingSteps;
        throw NumericError(ErrorCode::InvalidArgument, msg.str());
    }
    for (Side side : {Side::Left, Side::Right}) {
        const SideCoefficients& c = config_.side(side);
        Cache& cache = side == Side::Left ? left_ : right_;
        cache.inv_sigma.resize(2 * n_ + 1);
        cache.rho.resize(2 * n_ + 1);
        cache.q.resize(2 * n_ + 1);
        const double start = side == Side::Left ? -1.0 : 1.0;
        const double h = (side == Side::Left ? 1.0 : -1.0) / n_;
        for (int k = 0; k <= 2 * n_; ++k) {
            const double x = k == 2 * n_ ? 0.0 : start + 0.5 * k * h;
            cache.inv_sigma[k] = 1.0 / c.sigma.value(x);
            cache.rho[k] = c.rho.value(x);
            cache.q[k] = c.q.value(x);
        }
        cache.sigma_start = c.sigma.value(start);
        cache.sigma_junction = c.sigma.value(0.0);
    }
}

double Shooter::node(Side side, int i) const
{
    if (i == n_) return 0.0;
    return side == Side::Left ? -1.0 + static_cast<double>(i) / n_ : 1.0 - static_cast<double>(i) / n_;
}

template <class Visitor>
void Shooter::integrate(Side side, double lambda, bool with_derivative, Seed seed, Visitor&& visit) const
{
    check_lambda(lambda);
    const Cache& c = cache(side);
    const double h = (side == Side::Left ? 1.0 : -1.0) / n_;

    State s{seed.y, c.sigma_start * seed.slope, 0.0, 0.0};
    visit(0, s);

    auto rhs = [&](int k, const State& st) {
        const double a = c.q[k] - lambda * c.rho[k];
        return State{st.w * c.inv_sigma[k], a * st.y, st.wl * c.inv_sigma[k], a * st.yl - c.rho[k] * st.y};
    };
    auto axpy = [](const State& base, double t, const State& d) {
        return State{base.y + t * d.y, base.w + t * d.w, base.yl + t * d.yl, base.wl + t * d.wl};
    };

    for (int i = 0; i < n_; ++i) {
        const int k0 = 2 * i, km = 2 * i + 1, k1 = 2 * i + 2;
        if (with_derivative) {
            const State d1 = rhs(k0, s);
            const State d2 = rhs(km, axpy(s, 0.5 * h, d1));
            const State d3 = rhs(km, axpy(s, 0.5 * h, d2));
            const State d4 = rhs(k1, axpy(s, h, d3));
            s.y += h / 6.0 * (d1.y + 2.0 * d2.y + 2.0 * d3.y + d4.y);
            s.w += h / 6.0 * (d1.w + 2.0 * d2.w + 2.0 * d3.w + d4.w);
            s.yl += h / 6.0 * (d1.yl + 2.0 * d2.yl + 2.0 * d3.yl + d4.yl);
            s.wl += h / 6.0 * (d1.wl + 2.0 * d2.wl + 2.0 * d3.wl + d4.wl);
        } else {
            // Base system only; identical arithmetic to the coupled path for (y, w).
            const double a0 = c.q[k0] - lambda * c.rho[k0];
            const double am = c.q[km] - lambda * c.rho[km];
            const double a1 = c.q[k1] - lambda * c.rho[k1];
            const double y1 = s.w * c.inv_sigma[k0], w1 = a0 * s.y;
            const double y2 = (s.w + 0.5 * h * w1) * c.inv_sigma[km], w2 = am * (s.y + 0.5 * h * y1);
            const double y3 = (s.w + 0.5 * h * w2) * c.inv_sigma[km], w3 = am * (s.y + 0.5 * h * y2);
            const double y4 = (s.w + h * w3) * c.inv_sigma[k1], w4 = a1 * (s.y + h * y3);
            s.y += h / 6.0 * (y1 + 2.0 * y2 + 2.0 * y3 + y4);
            s.w += h / 6.0 * (w1 + 2.0 * w2 + 2.0 * w3 + w4);
        }
        visit(i + 1, s);
    }
    if (!std::isfinite(s.y) || !std::isfinite(s.w) || !std::isfinite(s.yl) || !std::isfinite(s.wl)) {
        std::ostringstream msg;
        msg << to_string(side) << " shooting produced a non-finite state at lambda = " << lambda;
        throw NumericError(ErrorCode::NonFiniteState, msg.str());
    }
}

JunctionState Shooter::junction(Side side, double lambda) const
{
    State last{};
    integrate(side, lambda, false, standard_seed(side), [&](int, const State& s) { last = s; });
    return {last.y, last.w / cache(side).sigma_junction};
}

JunctionSensitivity Shooter::junction_sensitivity(Side side, double lambda) const
{
    State last{};
    integrate(side, lambda, true, standard_seed(side), [&](int, const State& s) { last = s; });
    const double inv = 1.0 / cache(side).sigma_junction;
    return {last.y, last.w * inv, last.yl, last.wl * inv};
}

SideSolution Shooter::solve(Side side, double lambda) const
{
    return solve(side, lambda, standard_seed(side));
}

SideSolution Shooter::solve(Side side, double lambda, Seed seed) const
{
    const Cache& c = cache(side);
    SideSolution sol;
    sol.lambda = lambda;
    sol.side = side;
    sol.x.resize(n_ + 1);
    sol.y.resize(n_ + 1);
    sol.yx.resize(n_ + 1);
    // Storage index runs in increasing x; integration index runs from the seeded end.
    integrate(side, lambda, false, seed, [&](int i, const State& s) {
        const int j = side == Side::Left ? i : n_ - i;
        sol.x[j] = node(side, i);
        sol.y[j] = s.y;
        sol.yx[j] = i == 0 ? seed.slope : s.w * c.inv_sigma[2 * i];
    });
    const int jj = side == Side::Left ? n_ : 0;
    sol.y0 = sol.y[jj];
    sol.yx0 = sol.yx[jj];
    return sol;
}

LambdaDerivative Shooter::solve_derivative(Side side, double lambda) const
{
    const Cache& c = cache(side);
    LambdaDerivative d;
    d.lambda = lambda;
    d.side = side;
    d.x.resize(n_ + 1);
    d.y_lambda.resize(n_ + 1);
    d.y_lambda_x.resize(n_ + 1);
    State last{};
    integrate(side, lambda, true, standard_seed(side), [&](int i, const State& s) {
        const int j = side == Side::Left ? i : n_ - i;
        d.x[j] = node(side, i);
        d.y_lambda[j] = s.yl;
        d.y_lambda_x[j] = s.wl * c.inv_sigma[2 * i];
        last = s;
    });
    d.y0 = last.y;
    d.yx0 = last.w / c.sigma_junction;
    d.y_lambda0 = last.yl;
    d.y_lambda_x0 = last.wl / c.sigma_junction;
    return d;
}

int Shooter::interior_zeros(Side side, double lambda) const
{
    int count = 0;
    double prev = 0.0;
    integrate(side, lambda, false, standard_seed(side), [&](int i, const State& s) {
        if (i == 0) return;
        if (i == 1) {
            prev = s.y;
            return;
        }
        // A zero exactly at the junction node is not interior.
        if ((prev > 0.0 && s.y < 0.0) || (prev < 0.0 && s.y > 0.0) || (i < n_ && s.y == 0.0 && prev != 0.0)) ++count;
        if (s.y != 0.0) prev = s.y;
    });
    return count;
}

SideSolution shoot_left(double lambda, const SystemConfig& config, int n_steps)
{
    return Shooter(config, n_steps).solve(Side::Left, lambda);
}

SideSolution shoot_right(double lambda, const SystemConfig& config, int n_steps)
{
    return Shooter(config, n_steps).solve(Side::Right, lambda);
}

LambdaDerivative shoot_lambda_derivative(double lambda, Side side, const SystemConfig& config, int n_steps)
{
    return Shooter(config, n_steps).solve_derivative(side, lambda);
}

void write_side_solution_csv(const SideSolution& sol, const std::string& path)
{
    CsvWriter w(path);
    w.header({"x", "y", "y_prime"});
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        w.field(sol.x[i]).field(sol.y[i]).field(sol.yx[i]).end_row();
}

} // namespace stringmass
