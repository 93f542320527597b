// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs single-threaded so the runtime limits are meaningful.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "monoratio/construct.hpp"
#include "monoratio/errors.hpp"
#include "monoratio/rules.hpp"
#include "monoratio/verify.hpp"
#include "support/oracles.hpp"

using namespace monoratio;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(int id, bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Criteria 1 to 4 share one pass over the generated pairs.
void table_sign_uniqueness_coincidence() {
    constexpr std::size_t kPairs = 500;
    const Tolerances tol;
    std::size_t family_ok = 0;
    std::size_t rows[4] = {};
    std::size_t sign_points = 0, sign_violations = 0;
    std::size_t unique_violations = 0, multi_flat = 0, extra_multi = 0;
    std::size_t mic_cases = 0, coincide_violations = 0;
    std::vector<std::uint64_t> bad1;

    auto coincidence = [&](const AnalysisReport& rep) {
        if (rep.mics_r.empty()) return;
        ++mic_cases;
        const double step = rep.window.length() / rep.grid_n;
        const double match = 2.0 * step;
        for (const auto& m : rep.mics_r.intervals) {
            bool in_rho = false, in_rt = false;
            for (const auto& j : rep.mics_rho.intervals) in_rho = in_rho || j.interval.near(m.interval, match);
            for (const auto& j : rep.mics_rho_tilde.intervals) in_rt = in_rt || j.interval.near(m.interval, match);
            bool c_small = false;
            for (const auto& fit : rep.fits) {
                if (fit.interval.near(m.interval, match)) c_small = fit.c_is_zero && fit.residual_ok;
            }
            if (!(in_rho && in_rt && c_small)) ++coincide_violations;
        }
    };

    const auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < kPairs; ++seed) {
        const GeneratedCase c = random_pair(seed);
        const AnalysisReport rep = check_pair(c.pair, tol);
        const int row = generator_row(seed);
        ++rows[row];

        // Prediction from how the pair was built, not from what was detected.
        const Family fam = predict_r_family(c.rho_direction, c.pair.sign_gg());
        bool ok = rep.error.empty() && in_family(rep.observed_r_pattern.kind, fam);
        const bool composite = rep.observed_r_pattern.kind == PatternKind::DownUp ||
                               rep.observed_r_pattern.kind == PatternKind::UpDown;
        if (composite) {
            ok = ok && rep.level0 && rep.observed_r_pattern.switch_interval.near(rep.level0->interval, 1e-3);
        } else {
            ok = ok && !rep.level0;
        }
        if (ok) {
            ++family_ok;
        } else if (bad1.size() < 10) {
            bad1.push_back(seed);
        }

        sign_points += rep.sign_points;
        sign_violations += rep.sign_violations;
        if (rep.mics_r.size() > 1) ++unique_violations;
        if (c.spec.flats.size() >= 2) ++multi_flat;
        coincidence(rep);
    }
    const double elapsed = seconds_since(t0);

    // Uniqueness is worth stressing on 2-3 flat staircases specifically.
    GeneratorConfig many;
    many.min_flats = 2;
    for (std::uint64_t seed = 10000; seed < 10200; ++seed) {
        const GeneratedCase c = random_pair(seed, many);
        const AnalysisReport rep = check_pair(c.pair, tol);
        ++extra_multi;
        if (rep.mics_r.size() > 1) ++unique_violations;
        coincidence(rep);
    }

    std::string bad;
    for (auto s : bad1) bad += " " + std::to_string(s);
    verdict(1, family_ok == kPairs && elapsed < 60.0, "table conformance",
            fmt("%zu/%zu in predicted family with switch = level-0 set (rows %zu/%zu/%zu/%zu), %.1f s%s%s",
                family_ok, kPairs, rows[0], rows[1], rows[2], rows[3], elapsed, bad.empty() ? "" : ", failing seeds:",
                bad.c_str()));
    verdict(2, sign_violations == 0 && sign_points > 0, "sign identity",
            fmt("%zu violations over %zu grid points", sign_violations, sign_points));
    verdict(3, unique_violations == 0 && multi_flat + extra_multi > 0, "uniqueness",
            fmt("%zu pairs with more than one m.i.c. of r (%zu + %zu pairs with 2-3 flats)", unique_violations,
                multi_flat, extra_multi));
    verdict(4, coincide_violations == 0 && mic_cases > 0, "m.i.c. coincidence",
            fmt("%zu violations over %zu pairs where r has an m.i.c.", coincide_violations, mic_cases));
}

void constructor() {
    constexpr std::size_t kTriples = 200;
    GeneratorConfig cfg;
    cfg.min_flats = 1;
    std::size_t ok = 0;
    double worst = 0.0;
    std::string bad;
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 20000; seed < 20000 + kTriples; ++seed) {
        const GeneratedCase c = random_pair(seed, cfg);
        const AnalysisReport rep = check_pair(c.pair);
        const double err = rho_roundtrip_error(c);
        worst = std::max(worst, err);
        const bool pass = c.chosen_is_flat && rep.mics_r.size() == 1 && rep.mics_r[0].interval.near(c.chosen, 1e-3) &&
                          err <= 1e-9;
        if (pass) {
            ++ok;
        } else if (bad.size() < 80) {
            bad += " " + std::to_string(seed);
        }
    }
    const double elapsed = seconds_since(t0);
    verdict(5, ok == kTriples && elapsed < 120.0, "constructor",
            fmt("%zu/%zu with one m.i.c. of r equal to the chosen flat, max |f'/g' - rho|/(1+|rho|) = %.2e, %.1f s%s",
                ok, kTriples, worst, elapsed, bad.c_str()));
}

void quadrature() {
    double worst = 0.0;
    std::size_t points = 0;
    auto record = [&](double got, double exact) {
        worst = std::max(worst, std::abs(got - exact));
        ++points;
    };

    // Staircase with flat [-1, 1] against e^x, z = 0, K = 0.
    {
        StaircaseSpec spec;
        spec.flats = {Interval::closed(-1.0, 1.0)};
        const Staircase rho(spec);
        const auto g = DifferentiableFn::from_text("exp(x)");
        const auto f = construct_f(g, rho.fn(), 0.0, 0.0, Interval::open(-2.0, 2.0), 1e-10, rho.breakpoints());
        record(f(1.5).value, 0.477437);
        record(f(-1.5).value, 0.033184);
        oracle::PiecewiseLinear pl{{-1.0, 1.0}, {0.0, 0.0}, 1.0, 1.0};
        for (double x : uniform_grid(Interval::open(-2.0, 2.0), 200)) record(f(x).value, oracle::stieltjes_exp(pl, 1.0, 0.0, x));
    }
    // Multi-flat staircases against e^{s x}.
    for (double s : {1.0, -1.0, 0.5}) {
        StaircaseSpec spec;
        spec.flats = {Interval::closed(-1.2, -0.4), Interval::closed(0.3, 0.9)};
        spec.slopes = {0.7, 1.6, 1.1};
        spec.direction = s > 0 ? Direction::Up : Direction::Down;
        spec.anchor_x = 0.1;
        spec.anchor_value = -0.3;
        const Staircase rho(spec);
        oracle::PiecewiseLinear pl;
        pl.knots = rho.breakpoints();
        for (double k : pl.knots) pl.values.push_back(rho(k).value);
        pl.left_slope = rho(-5.0).deriv;
        pl.right_slope = rho(5.0).deriv;
        const auto g = DifferentiableFn::from_text(s == 1.0 ? "exp(x)" : (s == -1.0 ? "exp(-x)" : "exp(0.5*x)"));
        const double z = 0.6;
        const double K = rho(z).value;
        const auto f = construct_f(g, rho.fn(), z, K, Interval::open(-2.0, 2.0), 1e-10, rho.breakpoints());
        for (double x : uniform_grid(Interval::open(-2.0, 2.0), 200)) {
            record(f(x).value, K * std::exp(s * z) + oracle::stieltjes_exp(pl, s, z, x));
        }
    }
    // Smooth rho against polynomial and rational g.
    {
        const auto rho = DifferentiableFn::from_text("x");
        const Interval w = Interval::open(-2.0, 2.0);
        const auto f1 = construct_f(DifferentiableFn::from_text("x + 3"), rho, -0.5, 1.25, w, 1e-10);
        const auto f2 = construct_f(DifferentiableFn::from_text("1/(x + 4)"), rho, 0.75, -0.4, w, 1e-10);
        auto F2 = [](double u) { return -(std::log(u + 4.0) + 4.0 / (u + 4.0)); };
        for (double x : uniform_grid(w, 200)) {
            record(f1(x).value, 1.25 * 2.5 + 0.5 * (x * x - 0.25));
            record(f2(x).value, -0.4 / 4.75 + F2(x) - F2(0.75));
        }
    }
    verdict(6, worst <= 1e-6, "quadrature accuracy",
            fmt("max |computed - closed form| = %.2e over %zu points", worst, points));
}

void reflections() {
    constexpr std::size_t kPairs = 100;
    std::size_t violations = 0;
    std::string bad;
    for (std::uint64_t seed = 30000; seed < 30000 + kPairs; ++seed) {
        const GeneratedCase c = random_pair(seed);
        const AnalysisReport base = check_pair(c.pair);
        const AnalysisReport v = check_pair(reflect(c.pair, Axis::Vertical));
        const AnalysisReport h = check_pair(reflect(c.pair, Axis::Horizontal));
        bool ok = base.predicted_family && v.predicted_family && h.predicted_family;
        ok = ok && *v.predicted_family == vertical_mirror(*base.predicted_family) &&
             v.observed_r_pattern.kind == vertical_mirror(base.observed_r_pattern.kind) &&
             v.observed_r_pattern.switch_interval.near(base.observed_r_pattern.switch_interval, 1e-3);
        // The mirrored window is (-b, -a): a point at distance t from a lands at
        // distance t from the right end, i.e. reflected across the midpoint.
        const Interval& W = base.window;
        const Interval& S = base.observed_r_pattern.switch_interval;
        const Interval expected{h.window.lo + (W.hi - S.hi), h.window.lo + (W.hi - S.lo), S.hi_closed, S.lo_closed};
        ok = ok && h.observed_r_pattern.kind == base.observed_r_pattern.kind &&
             h.observed_r_pattern.switch_interval.near(expected, 1e-3);
        if (!ok) {
            ++violations;
            if (bad.size() < 80) bad += " " + std::to_string(seed);
        }
    }
    verdict(7, violations == 0, "metamorphic reflections",
            fmt("%zu violations over %zu pairs%s", violations, kPairs, bad.c_str()));
}

void autodiff() {
    constexpr int kExpressions = 1000;
    oracle::RandomExpr gen(424242);
    int checked = 0, violations = 0;
    int skipped_points = 0, skipped_expressions = 0;
    double worst = 0.0;
    while (checked < kExpressions) {
        const Expr e = gen(5);
        bool done = false;
        for (int attempt = 0; attempt < 20 && !done; ++attempt) {
            const double x = gen.uniform(-2.0, 2.0);
            Dual d;
            std::optional<double> fd;
            try {
                d = eval_dual(e, x);
                if (!d.finite() || std::abs(d.value) > 1e3) {
                    ++skipped_points;
                    continue;
                }
                fd = oracle::fd_derivative([&](double t) { return eval_dual(e, t).value; }, x);
            } catch (const DomainFault&) {
                ++skipped_points;
                continue;
            }
            if (!fd) {
                ++skipped_points;
                continue;
            }
            const double rel = std::abs(d.deriv - *fd) / (1.0 + std::abs(d.deriv));
            worst = std::max(worst, rel);
            if (rel > 1e-5) {
                ++violations;
                std::printf("  AD mismatch: %s at x = %.17g: dual %.17g, fd %.17g\n", print(e).c_str(), x, d.deriv, *fd);
            }
            done = true;
        }
        if (done) {
            ++checked;
        } else {
            ++skipped_expressions;
        }
    }
    verdict(8, violations == 0, "AD correctness",
            fmt("%d violations over %d expressions, max rel err %.2e; skipped %d fault/unreliable points and %d "
                "expressions with no usable point",
                violations, checked, worst, skipped_points, skipped_expressions));
}

}  // namespace

int main() {
    setenv("MONOTONE_RATIO_THREADS", "1", 1);
    const auto t0 = Clock::now();
    try {
        table_sign_uniqueness_coincidence();
        constructor();
        quadrature();
        reflections();
        autodiff();
    } catch (const std::exception& e) {
        std::printf("[FAIL] aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d failing criteria, %.1f s total\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
