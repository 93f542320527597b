#include "monoratio/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monoratio/errors.hpp"
#include "monoratio/parallel.hpp"

namespace monoratio {

const char* to_string(Family family) {
    switch (family) {
        case Family::DownUp: return "DownUp";
        case Family::UpDown: return "UpDown";
        case Family::Either: return "Either";
    }
    return "?";
}

Family vertical_mirror(Family family) {
    switch (family) {
        case Family::DownUp: return Family::UpDown;
        case Family::UpDown: return Family::DownUp;
        case Family::Either: return Family::Either;
    }
    return family;
}

bool in_family(PatternKind kind, Family family) {
    switch (kind) {
        case PatternKind::Increasing:
        case PatternKind::Decreasing:
        case PatternKind::Constant:
            return true;
        case PatternKind::DownUp:
            return family == Family::DownUp;
        case PatternKind::UpDown:
            return family == Family::UpDown;
    }
    return false;
}

const char* to_string(RhoShape shape) {
    switch (shape) {
        case RhoShape::Up: return "Up";
        case RhoShape::Down: return "Down";
        case RhoShape::ConstantRho: return "ConstantRho";
        case RhoShape::Unclassifiable: return "Unclassifiable";
    }
    return "?";
}

Family predict_r_family(Direction rho_dir, int sign_gg) {
    const bool down_up = (rho_dir == Direction::Up) != (sign_gg < 0);
    return down_up ? Family::DownUp : Family::UpDown;
}

Direction predict_rho_tilde_dir(Direction rho_dir, int sign_gg) {
    return sign_gg > 0 ? rho_dir : flipped(rho_dir);
}

std::array<RuleRow, 4> rule_rows() {
    std::array<RuleRow, 4> rows{};
    const std::pair<Direction, int> conditions[4] = {
        {Direction::Up, 1}, {Direction::Down, 1}, {Direction::Up, -1}, {Direction::Down, -1}};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto [dir, sgn] = conditions[i];
        rows[i] = {dir, sgn, predict_r_family(dir, sgn), predict_rho_tilde_dir(dir, sgn)};
    }
    return rows;
}

namespace {

bool direction_admits(PatternKind kind, Direction dir) {
    if (kind == PatternKind::Constant) return true;
    return dir == Direction::Up ? kind == PatternKind::Increasing : kind == PatternKind::Decreasing;
}

// Compares the switch interval of the r pattern with the level-0 set of rho-tilde.
bool switch_matches_level0(const Pattern& observed, const std::optional<Level0>& level0, double tol) {
    switch (observed.kind) {
        case PatternKind::Increasing:
        case PatternKind::Decreasing:
            return !level0.has_value();
        case PatternKind::Constant:
        case PatternKind::DownUp:
        case PatternKind::UpDown:
            return level0.has_value() && observed.switch_interval.near(level0->interval, tol);
    }
    return false;
}

const Mic* find_near(const MicSet& set, const Interval& iv, double tol) {
    for (const auto& m : set.intervals) {
        if (m.interval.near(iv, tol)) return &m;
    }
    return nullptr;
}

}  // namespace

AnalysisReport check_pair(const FunctionPair& pair, const Tolerances& tol) {
    AnalysisReport rep;
    rep.f_label = pair.f().label();
    rep.g_label = pair.g().label();
    rep.window = pair.window();
    rep.grid_n = pair.grid_n();
    rep.sign_gg = pair.sign_gg();
    rep.tolerances = tol;
    rep.notes.push_back("every improved-rule conclusion implies the corresponding non-strict rule, so only the improved table is checked");

    const Interval& window = pair.window();
    const double step = window.length() / pair.grid_n();
    const std::vector<double> xs = uniform_grid(window, pair.grid_n());
    const GridTable table = evaluate_grid(pair, xs);
    const Samples r = table.column(Quantity::R);
    const Samples rho = table.column(Quantity::Rho);
    const Samples rho_tilde = table.column(Quantity::RhoTilde);

    const Probe r_probe = [&pair](double x) { return ratio_at(pair, x); };
    const Probe rho_probe = [&pair](double x) { return rho_at(pair, x); };
    const Probe rt_probe = [&pair](double x) { return rho_tilde_at(pair, x); };

    try {
        rep.rho_pattern = detect_pattern(rho, window, tol.tol_zero, SignSource::Differences);
    } catch (const UnclassifiableError& e) {
        rep.error = std::string("rho is not monotone: ") + e.what();
        return rep;
    }
    switch (rep.rho_pattern.kind) {
        case PatternKind::Increasing: rep.rho_shape = RhoShape::Up; break;
        case PatternKind::Decreasing: rep.rho_shape = RhoShape::Down; break;
        case PatternKind::Constant: rep.rho_shape = RhoShape::ConstantRho; break;
        default:
            rep.error = std::string("rho is not monotone: pattern ") + to_string(rep.rho_pattern.kind);
            return rep;
    }
    if (rep.rho_shape == RhoShape::ConstantRho) {
        rep.predicted_family = Family::Either;
        rep.notes.push_back("rho is constant, so r = K1 + C/g and both table rows for this sign of g g' apply");
    } else {
        const Direction dir = rep.rho_shape == RhoShape::Up ? Direction::Up : Direction::Down;
        rep.predicted_family = predict_r_family(dir, pair.sign_gg());
        rep.predicted_rho_tilde_dir = predict_rho_tilde_dir(dir, pair.sign_gg());
    }

    // Pattern of r, its switch interval and the level-0 set.
    bool prop1 = true;
    try {
        rep.observed_r_pattern = detect_pattern(rho_tilde, window, tol.tol_zero, SignSource::Values, rt_probe);
        rep.raw_r_pattern = detect_pattern(r, window, tol.tol_zero, SignSource::Differences);
        rep.rho_tilde_pattern = detect_pattern(rho_tilde, window, tol.tol_zero, SignSource::Differences);
        rep.level0 = level0_from_samples(rho_tilde, window, tol.tol_zero, rt_probe);
    } catch (const std::exception& e) {
        rep.error = e.what();
        prop1 = false;
    }
    if (prop1) {
        const Family fam = *rep.predicted_family;
        prop1 = in_family(rep.observed_r_pattern.kind, fam) && in_family(rep.raw_r_pattern.kind, fam) &&
                switch_matches_level0(rep.observed_r_pattern, rep.level0, tol.switch_tol);
        if (rep.predicted_rho_tilde_dir) {
            prop1 = prop1 && direction_admits(rep.rho_tilde_pattern.kind, *rep.predicted_rho_tilde_dir);
        } else {
            prop1 = prop1 && rep.rho_tilde_pattern.kind == PatternKind::Constant;
        }
    }
    rep.prop1_ok = prop1;

    // Maximal intervals of constancy.
    const double min_len = tol.min_ic_steps * step;
    rep.mics_r = detect_mics(r, window, tol.tol_const, min_len, r_probe);
    rep.mics_rho = detect_mics(rho, window, tol.tol_const, min_len, rho_probe);
    rep.mics_rho_tilde = detect_mics(rho_tilde, window, tol.tol_const, min_len, rt_probe);
    rep.uniqueness_ok = rep.mics_r.size() <= 1;

    const double match = tol.mic_match_steps * step;
    rep.mic_sets_agree = rep.mics_rho.size() == rep.mics_rho_tilde.size();
    for (const auto& m : rep.mics_rho.intervals) {
        rep.mic_sets_agree = rep.mic_sets_agree && find_near(rep.mics_rho_tilde, m.interval, match) != nullptr;
    }

    // The m.i.c. of r is one of rho and rho-tilde, and on each
    // m.i.c. J of rho, r = K1 + C/g with C = 0 exactly when J is that of r.
    bool prop2 = true;
    for (const auto& m : rep.mics_r.intervals) {
        prop2 = prop2 && find_near(rep.mics_rho, m.interval, match) != nullptr &&
                find_near(rep.mics_rho_tilde, m.interval, match) != nullptr;
    }
    for (const auto& J : rep.mics_rho.intervals) {
        ConstancyFit fit;
        fit.interval = J.interval;
        fit.K1 = J.level;
        double num = 0.0;
        double den = 0.0;
        double g_max = 0.0;
        double r_max = 0.0;
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (!J.interval.contains(table.x[i])) continue;
            inside.push_back(i);
            const double inv_g = 1.0 / table.g[i].value;
            num += (r[i].value - fit.K1) * inv_g;
            den += inv_g * inv_g;
            g_max = std::max(g_max, std::abs(table.g[i].value));
            r_max = std::max(r_max, std::abs(r[i].value));
        }
        if (inside.empty()) continue;
        fit.C = num / den;
        for (std::size_t i : inside) {
            fit.residual = std::max(fit.residual, std::abs(r[i].value - fit.K1 - fit.C / table.g[i].value));
        }
        fit.residual_ok = fit.residual <= tol.fit_tol * (1.0 + r_max);
        fit.c_is_zero = std::abs(fit.C) <= tol.c_tol * g_max;
        fit.is_mic_of_r = find_near(rep.mics_r, J.interval, match) != nullptr;
        prop2 = prop2 && fit.residual_ok && fit.c_is_zero == fit.is_mic_of_r;
        rep.fits.push_back(fit);
    }
    rep.prop2_ok = prop2;

    // sign(r') = sign(rho-tilde), with r' from central differences.
    const double rt_threshold = tol.tol_zero * magnitude_scale(rho_tilde);
    std::vector<char> checked(table.size(), 0);
    std::vector<char> violated(table.size(), 0);
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    parallel_for(table.size(), [&](std::size_t i) {
        const double v = rho_tilde[i].value;
        if (!(std::abs(v) > rt_threshold)) return;
        checked[i] = 1;
        const double x = table.x[i];
        const double h = h0 * std::max(1.0, std::abs(x));
        const double dr = ratio_at(pair, x + h) - ratio_at(pair, x - h);
        if ((dr > 0.0) != (v > 0.0) || dr == 0.0) violated[i] = 1;
    });
    rep.sign_points = static_cast<std::size_t>(std::count(checked.begin(), checked.end(), 1));
    rep.sign_violations = static_cast<std::size_t>(std::count(violated.begin(), violated.end(), 1));
    rep.sign_identity_ok = rep.sign_violations == 0;
    return rep;
}

FunctionPair reflect(const FunctionPair& pair, Axis axis) {
    if (axis == Axis::Vertical) return make_pair(pair.f().negated(), pair.g(), pair.window(), pair.grid_n());
    return make_pair(pair.f().mirrored(), pair.g().mirrored(), pair.window().mirrored(), pair.grid_n());
}

}  // namespace monoratio
