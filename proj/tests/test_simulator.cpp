#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stringmass/error.hpp"
#include "stringmass/observability.hpp"
#include "stringmass/simulator.hpp"
#include "support.hpp"

using namespace stringmass;
using std::numbers::pi;

namespace {

struct Fixture {
    SystemConfig cfg;
    Shooter shooter;
    SpectrumTable table;
    std::vector<ModeShape> modes;
    std::vector<double> slopes;

    Fixture(const SystemConfig& c, int n_modes)
        : cfg(c), shooter(c), table(build_spectrum_table(n_modes + 1, shooter)),
          modes(assemble_modes(n_modes, table, shooter))
    {
        for (const auto& m : modes) slopes.push_back(m.slope1);
    }

    InitialData eigenmode(int n) const
    {
        std::vector<double> e(modes.size(), 0.0), f(modes.size(), 0.0);
        e[n - 1] = 1.0;
        return synthesize_initial_data(ModalData::from_real(e, f), modes);
    }
};

const Fixture& fixture()
{
    static const Fixture f(testsupport::default_config(), 20);
    return f;
}

/// Mean angular frequency from the first and last sign changes of z.
double crossing_frequency(const Trajectory& tr)
{
    std::vector<double> cross;
    for (std::size_t k = 0; k + 1 < tr.z.size(); ++k) {
        if ((tr.z[k] > 0) != (tr.z[k + 1] > 0)) {
            const double r = tr.z[k] / (tr.z[k] - tr.z[k + 1]);
            cross.push_back(tr.t[k] + r * (tr.t[k + 1] - tr.t[k]));
        }
    }
    REQUIRE(cross.size() >= 3);
    return pi * static_cast<double>(cross.size() - 1) / (cross.back() - cross.front());
}

} // namespace

TEST_CASE("zero data stays at rest")
{
    const Fixture& f = fixture();
    SimulationOptions o;
    o.T = 1.0;
    o.dx = 1.0 / 64;
    const auto tr = simulate(f.cfg, InitialData::zero(), o);
    for (double v : tr.w_final) CHECK(v == 0.0);
    for (double v : tr.trace) CHECK(v == 0.0);
    for (double e : tr.energy) CHECK(e == 0.0);
    CHECK(tr.trace_integral() == 0.0);

    o.control = ControlSignal::zero(1.0, 50);
    const auto tc = simulate(f.cfg, InitialData::zero(), o);
    for (double v : tc.w_final) CHECK(v == 0.0);
}

TEST_CASE("eigenmode oscillates at the spectral frequency")
{
    const Fixture& f = fixture();
    SimulationOptions o;
    o.dx = 1.0 / 1024;
    o.snapshots = 0;
    for (int n : {1, 2, 5}) {
        CAPTURE(n);
        // At least three half periods, and never shorter than 2 (gamma1 + gamma2).
        o.T = std::max(2 * (f.table.gamma1 + f.table.gamma2), 3 * pi / f.table.omega(n) + 0.1);
        const auto tr = simulate(f.cfg, f.eigenmode(n), o);
        const double w = f.table.omega(n);
        CHECK(std::abs(crossing_frequency(tr) / w - 1.0) < 1e-3);
        const double phi0 = f.modes[n - 1].phi0;
        for (std::size_t k = 0; k < tr.z.size(); k += 97)
            CHECK(std::abs(tr.z[k] - phi0 * std::cos(w * tr.t[k])) < 5e-3 * std::abs(phi0));
        // Trace against the spectral slope.
        double err = 0.0;
        const double c = f.slopes[n - 1];
        for (std::size_t k = 0; k < tr.trace.size(); ++k)
            err = std::max(err, std::abs(tr.trace[k] - c * std::cos(w * tr.t[k])));
        CHECK(err < 1e-2 * std::abs(c));
        // Discrete energy is conserved to rounding.
        const double e0 = tr.energy.front();
        double drift = 0.0;
        for (double e : tr.energy) drift = std::max(drift, std::abs(e - e0));
        CHECK(drift / e0 < 1e-4);
        CHECK(drift / e0 < 1e-10);
    }
}

TEST_CASE("junction frequency converges at second order")
{
    const Fixture& f = fixture();
    const int n = 3;
    const double w = f.table.omega(n);
    std::vector<double> errs;
    for (int cells : {64, 128, 256}) {
        SimulationOptions o;
        o.T = 8.0;
        o.dx = 1.0 / cells;
        o.dt = 0.25 * cfl_limit(f.cfg, o.dx);
        o.snapshots = 0;
        errs.push_back(std::abs(crossing_frequency(simulate(f.cfg, f.eigenmode(n), o)) - w));
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[1] / errs[2] > 3.0);
    CHECK(errs[0] / errs[1] < 5.5);
}

TEST_CASE("multi-mode trace agrees with the exponential-sum series")
{
    const Fixture& f = fixture();
    const auto data = random_modal_data(20, 3, 0);
    const auto init = synthesize_initial_data(data, f.modes);
    SimulationOptions o;
    o.T = 2 * (f.table.gamma1 + f.table.gamma2) + 0.5;
    o.dx = 1.0 / 1024;
    o.snapshots = 0;
    const auto tr = simulate(f.cfg, init, o);
    const auto series = boundary_trace(data, f.slopes, f.table, o.T,
                                       ExponentialSum::required_samples(o.T, f.table.omega(20)) * 2);
    CHECK(tr.trace_integral() == doctest::Approx(series.integral).epsilon(0.02));
}

TEST_CASE("leapfrog is time reversible")
{
    const Fixture& f = fixture();
    const auto init = synthesize_initial_data(random_modal_data(10, 4, 0), f.modes);
    SimulationOptions o;
    o.T = 3.0;
    o.dx = 1.0 / 256;
    const auto fw = simulate(f.cfg, init, o);
    const auto bw = reverse(f.cfg, fw);
    double diff = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < fw.w_initial.size(); ++j) {
        diff = std::max(diff, std::abs(bw.w_final[j] - fw.w_initial[j]));
        scale = std::max(scale, std::abs(fw.w_initial[j]));
    }
    CHECK(diff < 1e-6 * scale);
    CHECK(bw.t.back() == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("controlled boundary follows the signal")
{
    const Fixture& f = fixture();
    ControlSignal p = ControlSignal::zero(2.0, 401);
    for (std::size_t k = 0; k < p.t.size(); ++k) p.p[k] = std::sin(pi * p.t[k]) * std::sin(pi * p.t[k]);
    SimulationOptions o;
    o.T = 2.0;
    o.dx = 1.0 / 128;
    o.control = p;
    o.snapshots = 5;
    const auto tr = simulate(f.cfg, InitialData::zero(), o);
    REQUIRE(tr.snapshots.size() == 5);
    for (const auto& s : tr.snapshots) {
        const double expect = std::pow(std::sin(pi * s.t), 2);
        CHECK(s.w.back() == doctest::Approx(expect).epsilon(1e-5).scale(1.0));
        CHECK(s.w.front() == 0.0);
    }
    double e = 0.0;
    for (double v : tr.energy) e = std::max(e, v);
    CHECK(e > 0.0);
}

TEST_CASE("invalid discretizations are rejected")
{
    const Fixture& f = fixture();
    SimulationOptions o;
    o.T = 1.0;
    o.dx = 1.0 / 64;
    o.dt = 1.01 * cfl_limit(f.cfg, o.dx);
    try {
        simulate(f.cfg, InitialData::zero(), o);
        FAIL("expected CFLViolation");
    } catch (const NumericError& e) {
        CHECK(e.code() == ErrorCode::CFLViolation);
    }
    o.dt = 0.0;
    o.dx = 0.3;
    CHECK_THROWS_AS(simulate(f.cfg, InitialData::zero(), o), NumericError);

    auto bad = InitialData::zero();
    bad.z0 = 1.0;
    o.dx = 1.0 / 64;
    try {
        simulate(f.cfg, bad, o);
        FAIL("expected CompatibilityViolation");
    } catch (const NumericError& e) {
        CHECK(e.code() == ErrorCode::CompatibilityViolation);
    }
}

TEST_CASE("CFL limit on the unit configuration")
{
    CHECK(cfl_limit(testsupport::unit_config(), 0.01) == doctest::Approx(0.009).epsilon(1e-12));
}
