#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "monoratio/construct.hpp"
#include "monoratio/errors.hpp"
#include "monoratio/patterns.hpp"
#include "monoratio/rules.hpp"

using namespace monoratio;

namespace {

Samples tabulate(const std::function<double(double)>& h, const Interval& w, int n) {
    Samples out;
    for (double x : uniform_grid(w, n)) out.push_back({x, h(x)});
    return out;
}

// Flat on [c, d], linear with slope -1 before and +1 after.
double vee(double x, double c, double d) { return x < c ? c - x : (x > d ? x - d : 0.0); }

}  // namespace

TEST(DetectPattern, ValueSignSequences) {
    const Interval w = Interval::open(-2.0, 2.0);
    const auto up = detect_pattern(tabulate([](double x) { return 1.0 + x * x; }, w, 200), w, 1e-7);
    EXPECT_EQ(up.kind, PatternKind::Increasing);
    EXPECT_EQ(up.switch_interval, Interval::point(-2.0));

    const auto down = detect_pattern(tabulate([](double) { return -3.0; }, w, 200), w, 1e-7);
    EXPECT_EQ(down.kind, PatternKind::Decreasing);
    EXPECT_EQ(down.switch_interval, Interval::point(2.0));

    const auto flat = detect_pattern(tabulate([](double) { return 0.0; }, w, 200), w, 1e-7);
    EXPECT_EQ(flat.kind, PatternKind::Constant);
}

TEST(DetectPattern, SwitchIntervalIsBisected) {
    const Interval w = Interval::open(-2.0, 2.0);
    auto h = [](double x) { return x < -0.5 ? x + 0.5 : (x > 0.7 ? x - 0.7 : 0.0); };
    const auto p = detect_pattern(tabulate(h, w, 128), w, 1e-7, SignSource::Values, h);
    EXPECT_EQ(p.kind, PatternKind::DownUp);
    EXPECT_NEAR(p.switch_interval.lo, -0.5, 1e-6);
    EXPECT_NEAR(p.switch_interval.hi, 0.7, 1e-6);

    auto neg = [&](double x) { return -h(x); };
    const auto q = detect_pattern(tabulate(neg, w, 128), w, 1e-7, SignSource::Values, neg);
    EXPECT_EQ(q.kind, PatternKind::UpDown);
    EXPECT_TRUE(q.switch_interval.near(p.switch_interval, 1e-9));

    // Without a probe the endpoints sit between the bracketing samples.
    const auto coarse = detect_pattern(tabulate(h, w, 128), w, 1e-7);
    EXPECT_NEAR(coarse.switch_interval.lo, -0.5, 4.0 / 128);
    EXPECT_NEAR(coarse.switch_interval.hi, 0.7, 4.0 / 128);
}

TEST(DetectPattern, ZeroThenPositiveIsDownUpAtLeftEnd) {
    const Interval w = Interval::open(0.0, 1.0);
    auto h = [](double x) { return x < 0.4 ? 0.0 : x - 0.4; };
    const auto p = detect_pattern(tabulate(h, w, 100), w, 1e-7, SignSource::Values, h);
    EXPECT_EQ(p.kind, PatternKind::DownUp);
    EXPECT_EQ(p.switch_interval.lo, 0.0);
    EXPECT_FALSE(p.switch_interval.lo_closed);
    EXPECT_NEAR(p.switch_interval.hi, 0.4, 1e-6);
}

TEST(DetectPattern, RejectsTwoSwitches) {
    const Interval w = Interval::open(-3.0, 3.0);
    EXPECT_THROW(detect_pattern(tabulate([](double x) { return std::sin(2 * x); }, w, 300), w, 1e-7),
                 UnclassifiableError);
    EXPECT_THROW(detect_pattern(tabulate([](double x) { return std::cos(2 * x); }, w, 300), w, 1e-7,
                                SignSource::Differences),
                 UnclassifiableError);
}

TEST(DetectPattern, Differences) {
    const Interval w = Interval::open(-2.0, 2.0);
    const auto p = detect_pattern(tabulate([](double x) { return vee(x, -0.5, 1.0); }, w, 400), w, 1e-9,
                                  SignSource::Differences);
    EXPECT_EQ(p.kind, PatternKind::DownUp);
    EXPECT_NEAR(p.switch_interval.lo, -0.5, 0.011);
    EXPECT_NEAR(p.switch_interval.hi, 1.0, 0.011);
    const auto q = detect_pattern(tabulate([](double x) { return std::atan(x); }, w, 400), w, 1e-9,
                                  SignSource::Differences);
    EXPECT_EQ(q.kind, PatternKind::Increasing);
}

TEST(DetectMics, FindsFlatsAndTruncation) {
    const Interval w = Interval::open(-3.0, 3.0);
    // Flat on [-2, -1], flat from 1.5 to the right edge.
    auto h = [](double x) { return x < -2 ? x + 2 : (x < -1 ? 0.0 : (x < 1.5 ? x + 1 : 2.5)); };
    const MicSet m = detect_mics(tabulate(h, w, 600), w, 1e-10, 0.03, h);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_NEAR(m[0].interval.lo, -2.0, 1e-6);
    EXPECT_NEAR(m[0].interval.hi, -1.0, 1e-6);
    EXPECT_FALSE(m[0].truncated_lo);
    EXPECT_FALSE(m[0].truncated_hi);
    EXPECT_NEAR(m[0].level, 0.0, 1e-12);
    EXPECT_NEAR(m[1].interval.lo, 1.5, 1e-6);
    EXPECT_EQ(m[1].interval.hi, 3.0);
    EXPECT_TRUE(m[1].truncated_hi);
    EXPECT_FALSE(m[1].interval.hi_closed);
    EXPECT_NEAR(m[1].level, 2.5, 1e-12);
}

TEST(DetectMics, StrictlyMonotoneHasNone) {
    const Interval w = Interval::open(-1.0, 1.0);
    EXPECT_TRUE(detect_mics(tabulate([](double x) { return std::exp(x); }, w, 500), w, 1e-10, 0.012).empty());
    // Short flats below the minimum length are ignored.
    auto h = [](double x) { return std::abs(x) < 0.002 ? 0.0 : x; };
    EXPECT_TRUE(detect_mics(tabulate(h, w, 500), w, 1e-10, 0.012).empty());
}

// Every reported run is maximal: it cannot be extended by one sample on
// either side without leaving the band.
TEST(DetectMics, RunsAreMaximal) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Interval w = Interval::open(0.0, 1.0);
        Samples s;
        double v = 0.0;
        for (int i = 0; i < 400; ++i) {
            if (U(rng) > 0.7) v += 0.01 * (U(rng) + 1.0);
            s.push_back({(i + 0.5) / 400.0, v});
        }
        const double tol = 1e-10;
        const double band = tol * (1.0 + median_magnitude(s));
        const MicSet m = detect_mics(s, w, tol, 3.0 / 400.0);
        for (const auto& mic : m.intervals) {
            std::size_t a = 0;
            while (s[a].x < mic.interval.lo) ++a;
            std::size_t b = a;
            while (b + 1 < s.size() && s[b + 1].x <= mic.interval.hi) ++b;
            double lo = s[a].value, hi = lo;
            for (std::size_t i = a; i <= b; ++i) {
                lo = std::min(lo, s[i].value);
                hi = std::max(hi, s[i].value);
            }
            EXPECT_LE(hi - lo, band);
            if (a > 0) EXPECT_GT(std::max(hi, s[a - 1].value) - std::min(lo, s[a - 1].value), band);
            if (b + 1 < s.size()) EXPECT_GT(std::max(hi, s[b + 1].value) - std::min(lo, s[b + 1].value), band);
        }
    }
}

TEST(RefineSignChange, Examples) {
    EXPECT_NEAR(refine_sign_change([](double x) { return x; }, -1.0, 2.0, 1e-12), 0.0, 1e-12);
    EXPECT_NEAR(refine_sign_change([](double x) { return x * x * x - 8.0; }, 0.0, 3.0, 1e-12), 2.0, 1e-11);
    EXPECT_THROW(refine_sign_change([](double x) { return 1.0 + x * x; }, -1.0, 1.0, 1e-12), BadBracket);
}

TEST(Level0, SingleCrossingMatchesBruteForce) {
    // rho-tilde = x (x + 6) changes sign once, at 0.
    const auto p = make_pair(DifferentiableFn::from_text("x^2"), DifferentiableFn::from_text("x + 3"),
                             Interval::open(-2.0, 2.0), 1000);
    const auto z = level0_set(p, 1e-7);
    ASSERT_TRUE(z);
    EXPECT_TRUE(z->switch_point);
    // Brute force: first sign flip on a 1e6 grid.
    double prev = rho_tilde_at(p, -2.0 + 2e-6);
    double flip = NAN;
    for (int i = 1; i < 1000000; ++i) {
        const double x = -2.0 + 4.0 * (i + 0.5) / 1e6;
        const double v = rho_tilde_at(p, x);
        if ((v > 0) != (prev > 0)) {
            flip = x;
            break;
        }
        prev = v;
    }
    EXPECT_NEAR(z->interval.lo, flip, 4e-6);
    EXPECT_NEAR(z->interval.lo, 0.0, 1e-8);
}

TEST(Level0, NoneOrNonInterval) {
    const auto mono = make_pair(DifferentiableFn::from_text("x^2"), DifferentiableFn::from_text("x"),
                                Interval::open(0.5, 2.0), 500);
    EXPECT_FALSE(level0_set(mono, 1e-7));
    const auto wavy = make_pair(DifferentiableFn::from_text("sin(3*x)"), DifferentiableFn::from_text("x + 5"),
                                Interval::open(-2.0, 2.0), 500);
    EXPECT_THROW(level0_set(wavy, 1e-7), NonIntervalError);
}

TEST(Level0, AgreesWithMicOfR) {
    StaircaseSpec spec;
    spec.flats = {Interval::closed(-0.6, 0.4)};
    const Staircase rho = make_staircase_rho(spec);
    const auto g = DifferentiableFn::from_text("x + 3");
    const Interval w = Interval::open(-2.0, 2.0);
    const auto f = construct_f(g, rho.fn(), -0.1, rho.fn().value(-0.1), w, 1e-12, rho.breakpoints());
    const auto p = make_pair(f.fn(), g, w, 2048);
    const auto z = level0_set(p, 1e-7);
    ASSERT_TRUE(z);
    EXPECT_FALSE(z->switch_point);
    const AnalysisReport rep = check_pair(p);
    ASSERT_EQ(rep.mics_r.size(), 1u);
    EXPECT_TRUE(z->interval.near(rep.mics_r[0].interval, 2e-3));
    EXPECT_TRUE(z->interval.near(Interval::closed(-0.6, 0.4), 1e-3));
}

TEST(Mirror, VerticalAndHorizontal) {
    for (auto k : {PatternKind::Increasing, PatternKind::Decreasing, PatternKind::DownUp, PatternKind::UpDown,
                   PatternKind::Constant}) {
        EXPECT_EQ(vertical_mirror(vertical_mirror(k)), k);
    }
    // Negating the samples mirrors the pattern; reversing x keeps DownUp
    // a DownUp and mirrors the switch interval.
    const Interval w = Interval::open(-1.5, 2.5);
    auto h = [](double x) { return x < -0.3 ? x + 0.3 : (x > 0.9 ? x - 0.9 : 0.0); };
    const auto p = detect_pattern(tabulate(h, w, 256), w, 1e-7, SignSource::Values, h);
    auto neg = [&](double x) { return -h(x); };
    EXPECT_EQ(detect_pattern(tabulate(neg, w, 256), w, 1e-7, SignSource::Values, neg).kind,
              vertical_mirror(p.kind));

    // d/dx [H(-x)] = -H'(-x); with H' = h, the derivative proxy is -h(-x).
    const Interval wm = w.mirrored();
    auto flipped = [&](double x) { return -h(-x); };
    const auto m = detect_pattern(tabulate(flipped, wm, 256), wm, 1e-7, SignSource::Values, flipped);
    EXPECT_EQ(m.kind, p.kind);
    EXPECT_TRUE(m.switch_interval.near(p.switch_interval.mirrored(), 1e-6));
}
