#include "stringmass/signal.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <algorithm>
#include <cmath>
#include <memory>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"

namespace stringmass {

double ControlSignal::l2_norm() const
{
    if (t.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) s += 0.5 * (t[k + 1] - t[k]) * (p[k] * p[k] + p[k + 1] * p[k + 1]);
    return std::sqrt(s);
}

std::function<double(double)> ControlSignal::interpolant() const
{
    if (t.size() < 2) return [](double) { return 0.0; };
    const double t0 = t.front(), t1 = t.back();
    if (t.size() < 4) {
        const double y0 = p.front(), y1 = p.back();
        return [=](double s) { return s < t0 || s > t1 ? 0.0 : y0 + (y1 - y0) * (s - t0) / (t1 - t0); };
    }
    const double h = (t1 - t0) / static_cast<double>(t.size() - 1);
    auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(p.data(), p.size(),
                                                                                               t0, h);
    const double eps = 1e-9 * h;
    return [spline, t0, t1, eps](double s) {
        if (s < t0 - eps || s > t1 + eps) return 0.0;
        return (*spline)(std::clamp(s, t0, t1));
    };
}

ControlSignal ControlSignal::zero(double T, int samples)
{
    if (samples < 2 || !(T > 0.0)) throw NumericError(ErrorCode::InvalidArgument, "signal needs T > 0 and 2 samples");
    ControlSignal c;
    c.t.resize(samples);
    c.p.assign(samples, 0.0);
    for (int k = 0; k < samples; ++k) c.t[k] = T * k / (samples - 1);
    return c;
}

void write_signal_csv(const ControlSignal& signal, const std::string& path)
{
    CsvWriter w(path);
    w.header({"t", "p"});
    for (std::size_t k = 0; k < signal.t.size(); ++k) w.field(signal.t[k]).field(signal.p[k]).end_row();
}

} // namespace stringmass
