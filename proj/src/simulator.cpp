#include "stringmass/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"

namespace stringmass {

namespace {

int cells_per_side(double dx)
{
    const double r = 1.0 / dx;
    const long long n = std::llround(r);
    if (!(dx > 0.0) || n < 4 || std::abs(static_cast<double>(n) * dx - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "dx = " << dx << " must be 1/n with integer n >= 4";
        throw NumericError(ErrorCode::InvalidArgument, msg.str());
    }
    return static_cast<int>(n);
}

/// Lumped linear finite elements: m w'' = -K w.
struct Operator {
    int n = 0;  // cells per side; nodes 0..2n, junction n
    double dx = 0.0;
    std::vector<double> x, inv_m, m, edge_sigma, qd;

    Operator(const SystemConfig& cfg, double step) : n(cells_per_side(step)), dx(step)
    {
        const int nodes = 2 * n + 1;
        x.resize(nodes);
        m.resize(nodes);
        qd.resize(nodes);
        edge_sigma.resize(nodes - 1);
        for (int j = 0; j < nodes; ++j) x[j] = j == n ? 0.0 : -1.0 + j * dx;
        const auto& L = cfg.left();
        const auto& R = cfg.right();
        for (int j = 0; j < nodes; ++j) {
            const bool end = j == 0 || j == nodes - 1;
            const double f = end ? 0.5 * dx : dx;
            if (j < n) {
                m[j] = L.rho.value(x[j]) * f;
                qd[j] = L.q.value(x[j]) * f;
            } else if (j > n) {
                m[j] = R.rho.value(x[j]) * f;
                qd[j] = R.q.value(x[j]) * f;
            } else {
                m[j] = cfg.mass() + 0.5 * dx * (L.rho.value(0.0) + R.rho.value(0.0));
                qd[j] = 0.5 * dx * (L.q.value(0.0) + R.q.value(0.0));
            }
        }
        for (int e = 0; e < nodes - 1; ++e) {
            const double xm = 0.5 * (x[e] + x[e + 1]);
            edge_sigma[e] = (e < n ? L.sigma.value(xm) : R.sigma.value(xm)) / dx;
        }
        inv_m.resize(nodes);
        for (int j = 0; j < nodes; ++j) inv_m[j] = 1.0 / m[j];
    }

    int nodes() const { return 2 * n + 1; }

    /// acc = -m^{-1} K w on interior nodes and the junction; boundary entries are zero.
    void acceleration(const std::vector<double>& w, std::vector<double>& acc) const
    {
        const int last = nodes() - 1;
        acc[0] = acc[last] = 0.0;
        for (int j = 1; j < last; ++j) {
            const double kw = edge_sigma[j - 1] * (w[j] - w[j - 1]) + edge_sigma[j] * (w[j] - w[j + 1]) + qd[j] * w[j];
            acc[j] = -kw * inv_m[j];
        }
    }

    /// (a^T K b) over all edges and nodes.
    double stiffness(const std::vector<double>& a, const std::vector<double>& b) const
    {
        double s = 0.0;
        for (int e = 0; e + 1 < nodes(); ++e) s += edge_sigma[e] * (a[e + 1] - a[e]) * (b[e + 1] - b[e]);
        for (int j = 0; j < nodes(); ++j) s += qd[j] * a[j] * b[j];
        return s;
    }

    double energy(const std::vector<double>& cur, const std::vector<double>& next, double dt) const
    {
        double kin = 0.0;
        for (int j = 0; j < nodes(); ++j) {
            const double v = (next[j] - cur[j]) / dt;
            kin += m[j] * v * v;
        }
        return 0.5 * (kin + stiffness(next, cur));
    }

    double trace(const std::vector<double>& w) const
    {
        const int N = nodes() - 1;
        return (3.0 * w[N] - 4.0 * w[N - 1] + w[N - 2]) / (2.0 * dx);
    }
};

struct Stepper {
    const Operator& op;
    double dt;
    std::function<double(double)> boundary;  // empty for v(1) = 0

    double boundary_value(double t) const { return boundary ? boundary(t) : 0.0; }
};

/// Advances (prev, cur) for `steps` steps starting at time t0 with direction dir.
void run(const Stepper& st, std::vector<double> prev, std::vector<double> cur, int steps, double t0, double dir,
         Trajectory& out, int snapshots)
{
    const Operator& op = st.op;
    const int nodes = op.nodes();
    const double dt = st.dt;
    std::vector<double> acc(nodes), next(nodes);
    auto record_step = [&](int k, const std::vector<double>& w) {
        out.trace[k] = op.trace(w);
        out.z[k] = w[op.n];
    };
    auto snapshot_due = [&](int k) {
        if (snapshots < 2) return false;
        for (int i = 0; i < snapshots; ++i)
            if (static_cast<int>(std::llround(static_cast<double>(i) * steps / (snapshots - 1))) == k) return true;
        return false;
    };
    out.trace.assign(steps + 1, 0.0);
    out.z.assign(steps + 1, 0.0);
    out.t.resize(steps + 1);
    out.energy.resize(steps);
    out.energy_t.resize(steps);
    for (int k = 0; k <= steps; ++k) out.t[k] = t0 + dir * k * dt;
    // Level 0 of this run is `prev`, level 1 is `cur`.
    record_step(0, prev);
    if (snapshot_due(0)) out.snapshots.push_back({out.t[0], prev});
    out.w_initial = prev;
    out.w_first = cur;
    for (int k = 1; k <= steps; ++k) {
        out.energy[k - 1] = op.energy(prev, cur, dt);
        out.energy_t[k - 1] = t0 + dir * (k - 0.5) * dt;
        record_step(k, cur);
        if (snapshot_due(k)) out.snapshots.push_back({out.t[k], cur});
        if (k == steps) break;
        op.acceleration(cur, acc);
        for (int j = 0; j < nodes; ++j) next[j] = 2.0 * cur[j] - prev[j] + dt * dt * acc[j];
        next[0] = 0.0;
        next[nodes - 1] = st.boundary_value(out.t[k + 1]);
        if (!std::isfinite(next[op.n])) throw NumericError(ErrorCode::NonFiniteState, "simulation diverged");
        prev.swap(cur);
        cur.swap(next);
    }
    for (double v : cur)
        if (!std::isfinite(v)) throw NumericError(ErrorCode::NonFiniteState, "simulation diverged");
    op.acceleration(cur, acc);
    out.velocity_final.resize(nodes);
    for (int j = 0; j < nodes; ++j) out.velocity_final[j] = dir * ((cur[j] - prev[j]) / dt + 0.5 * dt * acc[j]);
    out.w_prev = std::move(prev);
    out.w_final = std::move(cur);
}

} // namespace

double Trajectory::trace_integral() const
{
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        s += 0.5 * std::abs(t[k + 1] - t[k]) * (trace[k] * trace[k] + trace[k + 1] * trace[k + 1]);
    return s;
}

double cfl_limit(const SystemConfig& config, double dx)
{
    const Operator op(config, dx);
    double ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j + 1 < op.nodes(); ++j) {
        for (double xs : {op.x[j], 0.5 * (op.x[j] + op.x[j + 1])}) {
            const auto& side = (xs < 0.0 || (xs == 0.0 && j < op.n)) ? config.left() : config.right();
            ratio = std::min(ratio, side.rho.value(xs) / side.sigma.value(xs));
        }
    }
    const auto& r = config.right();
    ratio = std::min(ratio, r.rho.value(1.0) / r.sigma.value(1.0));
    return kCflFactor * dx * std::sqrt(ratio);
}

Trajectory simulate(const SystemConfig& config, const InitialData& initial, const SimulationOptions& options)
{
    if (!(options.T > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "simulation horizon must be positive");
    check_compatibility(initial);
    const Operator op(config, options.dx);
    const double limit = cfl_limit(config, options.dx);
    double dt = options.dt > 0.0 ? options.dt : limit;
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << dt << " exceeds the CFL limit " << limit << " at dx = " << options.dx;
        throw NumericError(ErrorCode::CFLViolation, msg.str());
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(options.T / dt - 1e-9)));
    dt = options.T / steps;

    Stepper st{op, dt, {}};
    if (options.control) st.boundary = options.control->interpolant();

    const int nodes = op.nodes();
    std::vector<double> w0(nodes), v0(nodes), acc(nodes), w1(nodes);
    for (int j = 0; j < nodes; ++j) {
        if (j < op.n) {
            w0[j] = initial.u0(op.x[j]);
            v0[j] = initial.u1(op.x[j]);
        } else if (j > op.n) {
            w0[j] = initial.v0(op.x[j]);
            v0[j] = initial.v1(op.x[j]);
        } else {
            w0[j] = initial.z0;
            v0[j] = initial.z1;
        }
    }
    w0[0] = 0.0;
    v0[0] = 0.0;
    w0[nodes - 1] = st.boundary_value(0.0);
    op.acceleration(w0, acc);
    for (int j = 0; j < nodes; ++j) w1[j] = w0[j] + dt * v0[j] + 0.5 * dt * dt * acc[j];
    w1[0] = 0.0;
    w1[nodes - 1] = st.boundary_value(dt);

    Trajectory out;
    out.x = op.x;
    out.junction = op.n;
    out.dx = options.dx;
    out.dt = dt;
    out.steps = steps;
    out.T = options.T;
    run(st, std::move(w0), std::move(w1), steps, 0.0, 1.0, out, options.snapshots);
    return out;
}

Trajectory reverse(const SystemConfig& config, const Trajectory& forward)
{
    const Operator op(config, forward.dx);
    const Stepper st{op, forward.dt, {}};
    Trajectory out;
    out.x = op.x;
    out.junction = op.n;
    out.dx = forward.dx;
    out.dt = forward.dt;
    out.steps = forward.steps;
    out.T = forward.T;
    run(st, forward.w_final, forward.w_prev, forward.steps, forward.T, -1.0, out, 0);
    return out;
}

InitialData final_state(const Trajectory& traj)
{
    auto x = std::make_shared<const std::vector<double>>(traj.x);
    auto w = std::make_shared<const std::vector<double>>(traj.w_final);
    auto v = std::make_shared<const std::vector<double>>(traj.velocity_final);
    const double dx = traj.dx;
    auto interp = [x, dx](std::shared_ptr<const std::vector<double>> values) {
        return [x, dx, values](double s) {
            const int last = static_cast<int>(x->size()) - 1;
            const int k = std::clamp(static_cast<int>(std::floor((s + 1.0) / dx)), 0, last - 1);
            const double r = (s - (*x)[k]) / dx;
            return (1.0 - r) * (*values)[k] + r * (*values)[k + 1];
        };
    };
    InitialData d;
    d.u0 = interp(w);
    d.v0 = interp(w);
    d.u1 = interp(v);
    d.v1 = interp(v);
    d.z0 = traj.z_final();
    d.z1 = traj.zt_final();
    return d;
}

void write_snapshot_csv(const Trajectory& traj, const std::string& path)
{
    CsvWriter w(path);
    w.header({"t", "x", "w"});
    for (const auto& s : traj.snapshots)
        for (std::size_t j = 0; j < traj.x.size(); ++j) w.field(s.t).field(traj.x[j]).field(s.w[j]).end_row();
}

void write_trace_csv(const Trajectory& traj, const std::string& path)
{
    CsvWriter w(path);
    w.header({"t", "vx1"});
    for (std::size_t k = 0; k < traj.t.size(); ++k) w.field(traj.t[k]).field(traj.trace[k]).end_row();
}

void write_energy_csv(const Trajectory& traj, const std::string& path)
{
    CsvWriter w(path);
    w.header({"t", "E"});
    for (std::size_t k = 0; k < traj.energy.size(); ++k) w.field(traj.energy_t[k]).field(traj.energy[k]).end_row();
}

} // namespace stringmass
