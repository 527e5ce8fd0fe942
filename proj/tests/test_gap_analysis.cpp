#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stringmass/error.hpp"
#include "stringmass/gap_analysis.hpp"
#include "support.hpp"

using namespace stringmass;
using std::numbers::pi;

namespace {

void check_partition(const SpectrumTable& t, const GapClassification& c)
{
    for (int n = 1; n <= t.count; ++n) {
        const bool a = c.in_A(n), b = c.in_B(n);
        const bool follows = n > 1 && c.in_A(n - 1);
        CHECK(int(a) + int(b) + int(follows) == 1);
        if (a && n < t.count) {
            CHECK_FALSE(c.in_A(n + 1));
            CHECK_FALSE(c.in_B(n + 1));
        }
    }
    CHECK(c.B.size() == c.Bplus.size() + c.Bminus.size());
    for (int n : c.Bplus) CHECK(std::find(c.Bminus.begin(), c.Bminus.end(), n) == c.Bminus.end());
}

// Hand recomputation of A and B directly from the sqrt(lambda) values.
void recompute(const SpectrumTable& t, double dp, std::vector<int>& A, std::vector<int>& B)
{
    const double inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= t.count; ++n) {
        const double left = n == 1 ? inf : std::sqrt(t.lambda[n - 1]) - std::sqrt(t.lambda[n - 2]);
        const double right = n == t.count ? inf : std::sqrt(t.lambda[n]) - std::sqrt(t.lambda[n - 1]);
        if (left >= dp && right < dp) A.push_back(n);
        if (left >= dp && right >= dp) B.push_back(n);
    }
}

} // namespace

TEST_CASE("symmetric unit configuration clusters every even index")
{
    const auto t = build_spectrum_table(40, testsupport::unit_config());
    const auto c = classify_indices(t);
    check_partition(t, c);
    std::vector<int> evens;
    for (int n = 2; n < 40; n += 2) evens.push_back(n);
    CHECK(c.A == evens);
    // Away from the two truncation boundaries B is empty.
    CHECK(c.B == std::vector<int>{1, 40});
    CHECK(c.Lambda.size() == 20);
    for (int n : c.A) CHECK(t.in_lambda(n));
    CHECK(c.in_lambda_star(-4));
    CHECK(c.label(-3) == SetLabel::A);
    CHECK(c.label(-2) == SetLabel::APlus1);
}

TEST_CASE("irrational length ratio, recomputed by hand")
{
    const auto t = build_spectrum_table(40, testsupport::irrational_config());
    const double dp = default_delta_prime(t);
    const auto c = classify_indices(t, dp);
    check_partition(t, c);
    std::vector<int> A, B;
    recompute(t, dp, A, B);
    CHECK(c.A == A);
    CHECK(c.B == B);
    CHECK(c.Lambda.empty());
    // Clustered pairs come from different side spectra.
    for (int n : c.A)
        if (n >= 2) CHECK(t.tag(n) != t.tag(n - 1));
}

TEST_CASE("no clusters when the threshold is below every gap")
{
    const auto t = build_spectrum_table(4, testsupport::skew_config());
    const double smallest = *std::min_element(t.delta.begin(), t.delta.end());
    const auto c = classify_indices(t, std::min(0.5 * smallest, max_delta_prime(t)));
    CHECK(c.A.empty());
    CHECK(c.B == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("threshold validation")
{
    const auto t = build_spectrum_table(10, testsupport::skew_config());
    try {
        classify_indices(t, 1.01 * max_delta_prime(t));
        FAIL("expected ThresholdTooLarge");
    } catch (const NumericError& e) {
        CHECK(e.code() == ErrorCode::ThresholdTooLarge);
    }
    CHECK_NOTHROW(classify_indices(t, max_delta_prime(t)));
}

TEST_CASE("classification is stable under small threshold changes")
{
    const auto t = build_spectrum_table(40, testsupport::irrational_config());
    const double dp = 0.9 * max_delta_prime(t);
    const auto c0 = classify_indices(t, dp);
    for (double f : {0.99, 1.01}) {
        const auto c1 = classify_indices(t, dp * f);
        for (int n = 1; n <= t.count; ++n) {
            if (c0.in_A(n) == c1.in_A(n)) continue;
            CHECK(std::abs(t.gap(n) - dp) <= 0.01 * dp + 1e-15);
        }
    }
}

TEST_CASE("gap asymptotics on the unit configuration")
{
    const auto t = build_spectrum_table(40, testsupport::unit_config());
    const auto c = classify_indices(t);
    const auto r = verify_gap_asymptotics(t, c);
    // Closed form: the cluster (2k, 2k+1) has gap s_k - k pi, where 2 cot s_k = s_k.
    for (std::size_t i = 0; i < r.a_indices.size(); ++i) {
        const int n = r.a_indices[i];
        const int k = n / 2;
        double lo = k * pi + 1e-14, hi = (k + 1) * pi - 1e-14;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (2 * std::cos(mid) / std::sin(mid) - mid > 0 ? lo : hi) = mid;
        }
        CHECK(r.n_delta_over_A[i] == doctest::Approx(n * (0.5 * (lo + hi) - k * pi)).epsilon(1e-8));
    }
    CHECK(r.max_n_delta_A < 1.5);
    CHECK(r.min_two_step_gap > 0.0);
    // Odd slots sit just above (k-1) pi while n pi / 2 = k pi - pi / 2.
    CHECK(r.max_weyl_deviation < pi / 2);
    CHECK(r.max_weyl_deviation > 1.5);
}

TEST_CASE("mass-free table has uniform gaps and no clusters")
{
    const auto t = mass_free_view(build_spectrum_table(40, testsupport::unit_config()));
    for (double d : t.delta) CHECK(d == doctest::Approx(pi / 2).epsilon(1e-8));
    CHECK(classify_indices(t).A.empty());
}

TEST_CASE("two-step gaps stay bounded away from zero")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto cfg = testsupport::random_config(seed);
        const auto t = build_spectrum_table(40, cfg);
        const auto r = verify_gap_asymptotics(t, classify_indices(t));
        CHECK(r.min_two_step_gap > 0.3 * pi / cfg.total_optical_length());
    }
}

TEST_CASE("counting density")
{
    const auto t = build_spectrum_table(40, testsupport::unit_config());
    const auto d = counting_density(t, 20.0);
    CHECK(std::abs(d.d_plus / (2.0 / pi) - 1.0) < 0.15);
    const double min_gap = *std::min_element(t.delta.begin(), t.delta.end());
    CHECK(counting_density(t, 0.5 * min_gap).n_plus == 1);
    int prev = 0;
    for (double r = 0.5; r <= 40.0; r *= 2) {
        const int n = counting_density(t, r).n_plus;
        CHECK(n >= prev);
        prev = n;
    }
    CHECK_THROWS_AS(counting_density(t, 0.0), NumericError);
}
