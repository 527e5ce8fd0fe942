#include "stringmass/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stringmass/csv.hpp"
#include "stringmass/error.hpp"
#include "stringmass/numerics.hpp"

namespace stringmass {

std::string_view to_string(SetLabel label)
{
    switch (label) {
    case SetLabel::A: return "A";
    case SetLabel::APlus1: return "A+1";
    case SetLabel::BPlus: return "B+";
    case SetLabel::BMinus: return "B-";
    }
    return "?";
}

SetLabel GapClassification::label(int n) const
{
    if (n == 0 || std::abs(n) > count) throw NumericError(ErrorCode::InvalidArgument, "index outside the table");
    const SetLabel l = labels[std::abs(n) - 1];
    if (n > 0) return l;
    if (l == SetLabel::A) return SetLabel::APlus1;
    if (l == SetLabel::APlus1) return SetLabel::A;
    return l;
}

bool GapClassification::in_B(int n) const
{
    const SetLabel l = label(n);
    return l == SetLabel::BPlus || l == SetLabel::BMinus;
}

bool GapClassification::in_lambda_star(int n) const
{
    return std::binary_search(LambdaStar.begin(), LambdaStar.end(), n);
}

double max_delta_prime(const SpectrumTable& table)
{
    if (table.count < 3) throw NumericError(ErrorCode::InvalidArgument, "two-step gaps need count >= 3");
    double m = std::numeric_limits<double>::infinity();
    for (int n = 1; n + 2 <= table.count; ++n) m = std::min(m, table.omega(n + 2) - table.omega(n));
    return 0.5 * m;
}

double default_delta_prime(const SpectrumTable& table) { return 0.9 * max_delta_prime(table); }

GapClassification classify_indices(const SpectrumTable& table, double delta_prime)
{
    if (table.count < 4) throw NumericError(ErrorCode::InvalidArgument, "classification needs count >= 4");
    const double limit = max_delta_prime(table);
    if (!(delta_prime > 0.0) || delta_prime > limit) {
        std::ostringstream msg;
        msg << "delta' = " << delta_prime << " must lie in (0, " << limit << "]";
        throw NumericError(ErrorCode::ThresholdTooLarge, msg.str());
    }
    GapClassification c;
    c.count = table.count;
    c.delta_prime = delta_prime;
    c.labels.resize(table.count);
    for (int n = 1; n <= table.count; ++n) {
        const bool left_wide = table.gap(n - 1) >= delta_prime;
        const bool right_wide = table.gap(n) >= delta_prime;
        SetLabel l;
        if (left_wide && !right_wide) {
            l = SetLabel::A;
            c.A.push_back(n);
        } else if (left_wide && right_wide) {
            const bool from_left = n > 1 && table.tag(n - 1) == MuTag::Left;
            l = from_left ? SetLabel::BMinus : SetLabel::BPlus;
            c.B.push_back(n);
            (from_left ? c.Bminus : c.Bplus).push_back(n);
        } else {
            l = SetLabel::APlus1;
            if (n == 1 || c.labels[n - 2] != SetLabel::A) {
                std::ostringstream msg;
                msg << "index " << n << " is neither in A, in B, nor follows an index of A";
                throw NumericError(ErrorCode::ThresholdTooLarge, msg.str());
            }
        }
        c.labels[n - 1] = l;
        if (table.in_lambda(n)) c.Lambda.push_back(n);
    }
    for (auto it = c.Lambda.rbegin(); it != c.Lambda.rend(); ++it) c.LambdaStar.push_back(-*it);
    c.LambdaStar.insert(c.LambdaStar.end(), c.Lambda.begin(), c.Lambda.end());
    return c;
}

GapClassification classify_indices(const SpectrumTable& table)
{
    return classify_indices(table, default_delta_prime(table));
}

GapReport verify_gap_asymptotics(const SpectrumTable& table, const GapClassification& cls)
{
    if (table.count < 20) throw NumericError(ErrorCode::InvalidArgument, "gap asymptotics need count >= 20");
    GapReport r;
    r.delta_prime = cls.delta_prime;
    r.a_indices = cls.A;
    for (int n : cls.A) r.n_delta_over_A.push_back(n * table.gap(n));
    if (!r.n_delta_over_A.empty()) {
        r.max_n_delta_A = *std::max_element(r.n_delta_over_A.begin(), r.n_delta_over_A.end());
        r.median_n_delta_A = median(r.n_delta_over_A);
    }

    r.min_two_step_gap = 2.0 * max_delta_prime(table);

    const double L = table.gamma1 + table.gamma2;
    for (int n = 1; n <= table.count; ++n) {
        const double d = std::abs(table.omega(n) - n * std::numbers::pi / L);
        r.weyl_deviation.push_back(d);
        r.max_weyl_deviation = std::max(r.max_weyl_deviation, d);
    }

    std::vector<double> mu_gaps;
    for (int n = 2; n <= table.count; ++n) mu_gaps.push_back(table.mu_at(n) - table.mu_at(n - 1));
    r.tau = median(mu_gaps);
    for (int n = 2; n <= table.count; ++n) {
        if (table.mu_at(n) - table.mu_at(n - 1) < r.tau) continue;
        r.omega_indices.push_back(n);
        const double v = n * (table.omega(n) - std::sqrt(table.mu_at(n - 1)));
        r.omega_scaled.push_back(v);
        r.max_omega_scaled = std::max(r.max_omega_scaled, std::abs(v));
    }
    return r;
}

DensityEstimate counting_density(const SpectrumTable& table, double r)
{
    const double span = table.omega(table.count) - table.omega(1);
    if (!(r > 0.0) || r > span) {
        std::ostringstream msg;
        msg << "window length " << r << " must lie in (0, " << span << "]";
        throw NumericError(ErrorCode::InvalidArgument, msg.str());
    }
    std::vector<double> w;
    for (int n = table.count; n >= 1; --n) w.push_back(-table.omega(n));
    for (int n = 1; n <= table.count; ++n) w.push_back(table.omega(n));
    int best = 0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < w.size(); ++lo) {
        hi = std::max(hi, lo);
        while (hi + 1 < w.size() && w[hi + 1] - w[lo] <= r) ++hi;
        best = std::max(best, static_cast<int>(hi - lo + 1));
    }
    return {best, best / r};
}

void write_gap_csv(const SpectrumTable& table, const GapClassification& cls, const GapReport& report,
                   const std::string& path)
{
    CsvWriter w(path);
    w.comment("clusters: n in A iff delta_{n-1} >= delta' and delta_n < delta'; boundary gaps are +inf");
    w.comment("delta_prime=" + format_double(cls.delta_prime) + " tau=" + format_double(report.tau));
    w.comment("max_n_delta_A=" + format_double(report.max_n_delta_A) + " median_n_delta_A="
              + format_double(report.median_n_delta_A) + " min_two_step_gap="
              + format_double(report.min_two_step_gap) + " max_weyl_deviation="
              + format_double(report.max_weyl_deviation) + " max_omega_scaled="
              + format_double(report.max_omega_scaled));
    w.header({"n", "delta_n", "n_times_delta_n", "set_label", "lambda_in_Gamma_star"});
    for (int n = 1; n <= table.count; ++n) {
        w.field(n);
        if (n < table.count)
            w.field(table.gap(n)).field(n * table.gap(n));
        else
            w.field(std::string_view("")).field(std::string_view(""));
        w.field(to_string(cls.label(n))).field(table.in_lambda(n) ? 1 : 0);
        w.end_row();
    }
}

} // namespace stringmass
