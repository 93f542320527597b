#include "monoratio/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "monoratio/errors.hpp"

namespace monoratio {

const char* to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::Increasing: return "Increasing";
        case PatternKind::Decreasing: return "Decreasing";
        case PatternKind::DownUp: return "DownUp";
        case PatternKind::UpDown: return "UpDown";
        case PatternKind::Constant: return "Constant";
    }
    return "?";
}

PatternKind vertical_mirror(PatternKind kind) {
    switch (kind) {
        case PatternKind::Increasing: return PatternKind::Decreasing;
        case PatternKind::Decreasing: return PatternKind::Increasing;
        case PatternKind::DownUp: return PatternKind::UpDown;
        case PatternKind::UpDown: return PatternKind::DownUp;
        case PatternKind::Constant: return PatternKind::Constant;
    }
    return kind;
}

double magnitude_scale(std::span<const Sample> samples) {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : samples) sum += s.value * s.value;
    return std::sqrt(sum / static_cast<double>(samples.size()));
}

double median_magnitude(std::span<const Sample> samples) {
    if (samples.empty()) return 0.0;
    std::vector<double> mags;
    mags.reserve(samples.size());
    for (const auto& s : samples) mags.push_back(std::abs(s.value));
    const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
    std::nth_element(mags.begin(), mid, mags.end());
    return *mid;
}

double bisect_boundary(const std::function<bool(double)>& pred, double in_x, double out_x, double xtol) {
    for (int it = 0; it < 200 && std::abs(out_x - in_x) > xtol; ++it) {
        const double mid = 0.5 * (in_x + out_x);
        (pred(mid) ? in_x : out_x) = mid;
    }
    return 0.5 * (in_x + out_x);
}

double refine_sign_change(const Probe& probe, double lo, double hi, double xtol) {
    const double flo = probe(lo);
    const double fhi = probe(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw BadBracket("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const bool lo_positive = flo > 0.0;
    for (int it = 0; it < 400 && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = probe(mid);
        if (fm == 0.0) return mid;
        ((fm > 0.0) == lo_positive ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

int sign_tol(double v, double threshold) { return v > threshold ? 1 : (v < -threshold ? -1 : 0); }

struct Run {
    int sign;
    std::size_t first;
    std::size_t last;
};

std::vector<Run> run_lengths(const std::vector<int>& signs) {
    std::vector<Run> runs;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (!runs.empty() && runs.back().sign == signs[i]) {
            runs.back().last = i;
        } else {
            runs.push_back({signs[i], i, i});
        }
    }
    return runs;
}

// True when the run signs appear in the given order, each at most once.
bool follows(const std::vector<Run>& runs, const int (&order)[3]) {
    std::size_t k = 0;
    for (const auto& run : runs) {
        while (k < 3 && order[k] != run.sign) ++k;
        if (k == 3) return false;
        ++k;
    }
    return true;
}

Pattern monotone_pattern(PatternKind kind, const Interval& window) {
    switch (kind) {
        case PatternKind::Increasing: return {kind, Interval::point(window.lo)};
        case PatternKind::Decreasing: return {kind, Interval::point(window.hi)};
        default: return {PatternKind::Constant, window};
    }
}

Pattern pattern_from_values(std::span<const Sample> samples, const Interval& window, double tol,
                            const Probe& probe) {
    const double threshold = tol * magnitude_scale(samples);
    std::vector<int> signs;
    signs.reserve(samples.size());
    for (const auto& s : samples) signs.push_back(sign_tol(s.value, threshold));
    const auto runs = run_lengths(signs);

    if (runs.size() == 1) {
        if (runs[0].sign > 0) return monotone_pattern(PatternKind::Increasing, window);
        if (runs[0].sign < 0) return monotone_pattern(PatternKind::Decreasing, window);
        return monotone_pattern(PatternKind::Constant, window);
    }

    static constexpr int kDownUp[3] = {-1, 0, 1};
    static constexpr int kUpDown[3] = {1, 0, -1};
    PatternKind kind;
    int lead;
    if (follows(runs, kDownUp)) {
        kind = PatternKind::DownUp;
        lead = -1;
    } else if (follows(runs, kUpDown)) {
        kind = PatternKind::UpDown;
        lead = 1;
    } else {
        std::string seq;
        for (const auto& r : runs) seq += r.sign > 0 ? '+' : (r.sign < 0 ? '-' : '0');
        throw UnclassifiableError("sign sequence " + seq + " is not a single-switch pattern");
    }

    const double xtol = 1e-9 * window.length();
    auto boundary = [&](std::size_t in, std::size_t out, auto pred) {
        if (!probe) return 0.5 * (samples[in].x + samples[out].x);
        return bisect_boundary([&](double x) { return pred(sign_tol(probe(x), threshold)); }, samples[in].x,
                               samples[out].x, xtol);
    };

    // c closes the leading strictly-signed run, d opens the trailing one.
    Interval sw = Interval::closed(window.lo, window.hi);
    if (runs.front().sign == lead) {
        const std::size_t last = runs.front().last;
        sw.lo = boundary(last, last + 1, [lead](int s) { return s == lead; });
    } else {
        sw.lo_closed = false;
    }
    if (runs.back().sign == -lead) {
        const std::size_t first = runs.back().first;
        sw.hi = boundary(first - 1, first, [lead](int s) { return s != -lead; });
    } else {
        sw.hi_closed = false;
    }
    if (sw.hi < sw.lo) sw.hi = sw.lo;
    return {kind, sw};
}

Pattern pattern_from_differences(std::span<const Sample> samples, const Interval& window, double tol) {
    const double threshold = tol * magnitude_scale(samples);
    // Compress to the nonzero difference signs, remembering where each sign
    // was last and first seen.
    struct Seen {
        int sign;
        std::size_t first;
        std::size_t last;
    };
    std::vector<Seen> seen;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const int s = sign_tol(samples[i + 1].value - samples[i].value, threshold);
        if (s == 0) continue;
        if (!seen.empty() && seen.back().sign == s) {
            seen.back().last = i;
        } else {
            seen.push_back({s, i, i});
        }
    }
    if (seen.empty()) return monotone_pattern(PatternKind::Constant, window);
    if (seen.size() == 1) {
        return monotone_pattern(seen[0].sign > 0 ? PatternKind::Increasing : PatternKind::Decreasing, window);
    }
    if (seen.size() > 2) throw UnclassifiableError("first differences change sign more than once");
    const PatternKind kind = seen[0].sign < 0 ? PatternKind::DownUp : PatternKind::UpDown;
    // Difference i spans samples i and i+1.
    return {kind, Interval::closed(samples[seen[0].last + 1].x, samples[seen[1].first].x)};
}

}  // namespace

Pattern detect_pattern(std::span<const Sample> samples, const Interval& window, double tol, SignSource source,
                       const Probe& probe) {
    if (samples.size() < 16) throw std::invalid_argument("detect_pattern needs at least 16 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].x > samples[i - 1].x)) throw std::invalid_argument("sample abscissae must increase");
    }
    if (source == SignSource::Values) return pattern_from_values(samples, window, tol, probe);
    return pattern_from_differences(samples, window, tol);
}

MicSet detect_mics(std::span<const Sample> samples, const Interval& window, double tol, double min_ic_len,
                   const Probe& probe) {
    if (samples.size() < 16) throw std::invalid_argument("detect_mics needs at least 16 samples");
    const std::size_t n = samples.size();
    const double band = tol * (1.0 + median_magnitude(samples));

    // start[e]: smallest s with max - min over [s, e] <= band.
    std::vector<std::size_t> start(n);
    std::deque<std::size_t> maxq;
    std::deque<std::size_t> minq;
    std::size_t s = 0;
    for (std::size_t e = 0; e < n; ++e) {
        const double v = samples[e].value;
        while (!maxq.empty() && samples[maxq.back()].value <= v) maxq.pop_back();
        maxq.push_back(e);
        while (!minq.empty() && samples[minq.back()].value >= v) minq.pop_back();
        minq.push_back(e);
        while (samples[maxq.front()].value - samples[minq.front()].value > band) {
            ++s;
            if (maxq.front() < s) maxq.pop_front();
            if (minq.front() < s) minq.pop_front();
        }
        start[e] = s;
    }

    struct Span {
        std::size_t first;
        std::size_t last;
    };
    std::vector<Span> runs;
    for (std::size_t e = 0; e < n; ++e) {
        const bool maximal = e + 1 == n || start[e + 1] > start[e];
        if (!maximal) continue;
        const Span run{start[e], e};
        if (!(samples[run.last].x - samples[run.first].x > min_ic_len)) continue;
        if (!runs.empty() && runs.back().last >= run.first) {
            const Span& prev = runs.back();
            if (run.last - run.first > prev.last - prev.first) runs.back() = run;
            continue;
        }
        runs.push_back(run);
    }

    const double xtol = 1e-9 * window.length();
    MicSet out;
    for (auto run : runs) {
        double lo = samples[run.first].value;
        double hi = lo;
        for (std::size_t i = run.first; i <= run.last; ++i) {
            lo = std::min(lo, samples[i].value);
            hi = std::max(hi, samples[i].value);
        }
        Mic mic;
        mic.level = 0.5 * (lo + hi);
        auto inside = [&](double x) { return std::abs(probe(x) - mic.level) <= 0.5 * band; };

        mic.interval = Interval::closed(samples[run.first].x, samples[run.last].x);
        if (run.first == 0) {
            mic.truncated_lo = true;
            mic.interval.lo = window.lo;
            mic.interval.lo_closed = false;
        } else if (probe) {
            std::size_t first = run.first;
            while (first > 0 && inside(samples[first - 1].x)) --first;
            mic.interval.lo = first == 0 ? window.lo
                                         : bisect_boundary(inside, samples[first].x, samples[first - 1].x, xtol);
            if (first == 0) {
                mic.truncated_lo = true;
                mic.interval.lo_closed = false;
            }
        }
        if (run.last + 1 == n) {
            mic.truncated_hi = true;
            mic.interval.hi = window.hi;
            mic.interval.hi_closed = false;
        } else if (probe) {
            std::size_t last = run.last;
            while (last + 1 < n && inside(samples[last + 1].x)) ++last;
            mic.interval.hi = last + 1 == n ? window.hi
                                            : bisect_boundary(inside, samples[last].x, samples[last + 1].x, xtol);
            if (last + 1 == n) {
                mic.truncated_hi = true;
                mic.interval.hi_closed = false;
            }
        }
        out.intervals.push_back(mic);
    }
    return out;
}

std::optional<Level0> level0_from_samples(std::span<const Sample> samples, const Interval& window, double tol,
                                          const Probe& probe) {
    if (samples.size() < 2) throw std::invalid_argument("level0 needs samples");
    const std::size_t n = samples.size();
    const double threshold = tol * magnitude_scale(samples);
    const double step = window.length() / static_cast<double>(n);
    const double xtol = 1e-9 * window.length();
    auto is_zero = [&](double v) { return std::abs(v) <= threshold; };

    std::vector<std::pair<std::size_t, std::size_t>> parts;
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_zero(samples[i].value)) continue;
        if (!parts.empty() && parts.back().second + 1 == i) {
            parts.back().second = i;
        } else {
            parts.emplace_back(i, i);
        }
    }

    if (parts.empty()) {
        std::optional<std::size_t> flip;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if ((samples[i].value > 0.0) != (samples[i + 1].value > 0.0)) {
                if (flip) throw NonIntervalError("rho-tilde changes sign more than once");
                flip = i;
            }
        }
        if (!flip) return std::nullopt;
        const Sample& a = samples[*flip];
        const Sample& b = samples[*flip + 1];
        const double x = probe ? refine_sign_change(probe, a.x, b.x, xtol) : 0.5 * (a.x + b.x);
        return Level0{Interval::point(x), true};
    }

    for (std::size_t k = 1; k < parts.size(); ++k) {
        if (parts[k].first - parts[k - 1].second > 2) {
            throw NonIntervalError("near-zero set of rho-tilde has separated components");
        }
    }
    const std::size_t first = parts.front().first;
    const std::size_t last = parts.back().second;

    auto zero_at = [&](double x) { return is_zero(probe(x)); };
    Interval iv = Interval::closed(samples[first].x, samples[last].x);
    if (first == 0) {
        iv.lo = window.lo;
        iv.lo_closed = false;
    } else {
        iv.lo = probe ? bisect_boundary(zero_at, samples[first].x, samples[first - 1].x, xtol)
                      : 0.5 * (samples[first].x + samples[first - 1].x);
    }
    if (last + 1 == n) {
        iv.hi = window.hi;
        iv.hi_closed = false;
    } else {
        iv.hi = probe ? bisect_boundary(zero_at, samples[last].x, samples[last + 1].x, xtol)
                      : 0.5 * (samples[last].x + samples[last + 1].x);
    }
    return Level0{iv, iv.length() < step};
}

std::optional<Level0> level0_set(const FunctionPair& pair, double tol) {
    const Samples samples = sample(pair, Quantity::RhoTilde, pair.grid_n());
    return level0_from_samples(samples, pair.window(), tol,
                               [&pair](double x) { return rho_tilde_at(pair, x); });
}

}  // namespace monoratio
