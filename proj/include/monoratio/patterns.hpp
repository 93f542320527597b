#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "monoratio/interval.hpp"
#include "monoratio/ratio.hpp"

namespace monoratio {

enum class PatternKind { Increasing, Decreasing, DownUp, UpDown, Constant };

const char* to_string(PatternKind kind);

/// Monotonicity shape with its switch interval [c, d].
///
/// DownUp: decreasing left of c, flat on [c, d], increasing right of d.
/// Increasing has switch [lo, lo], Decreasing [hi, hi], Constant the window.
struct Pattern {
    PatternKind kind = PatternKind::Constant;
    Interval switch_interval;
};

/// Swap Increasing/Decreasing and DownUp/UpDown (the image under h -> -h).
PatternKind vertical_mirror(PatternKind kind);

/// How detect_pattern turns samples into a sign sequence.
enum class SignSource {
    /// Samples are a derivative proxy (e.g. rho-tilde); the sign of each value is used.
    Values,
    /// Samples are raw function values; the sign of each first difference is used.
    Differences,
};

using Probe = std::function<double(double)>;

/// Root-mean-square magnitude of the sample values; the reference scale for
/// "approximately zero" decisions.
double magnitude_scale(std::span<const Sample> samples);

double median_magnitude(std::span<const Sample> samples);

/// Classifies the sign sequence of the samples, with |v| <= tol * scale treated
/// as zero. For SignSource::Values the sequence must have the form (-)*(0)*(+)*
/// or (+)*(0)*(-)*; for Differences zero runs are ignored and the remaining
/// signs may switch at most once. When a probe is given the switch endpoints are
/// bisected to ~1e-9 of the window length; otherwise they sit halfway between
/// the bracketing samples.
///
/// Throws UnclassifiableError for any other shape.
Pattern detect_pattern(std::span<const Sample> samples, const Interval& window, double tol,
                       SignSource source = SignSource::Values, const Probe& probe = {});

/// One maximal interval of constancy.
struct Mic {
    Interval interval;
    double level = 0.0;
    /// The run reaches the first/last sample, so the true interval may continue
    /// past the analysis window.
    bool truncated_lo = false;
    bool truncated_hi = false;
};

struct MicSet {
    std::vector<Mic> intervals;

    std::size_t size() const noexcept { return intervals.size(); }
    bool empty() const noexcept { return intervals.empty(); }
    const Mic& operator[](std::size_t i) const { return intervals[i]; }
};

/// Maximal runs of samples whose range is at most tol * (1 + median |value|)
/// and whose length exceeds min_ic_len. With a probe, each endpoint is bisected
/// on |probe(x) - level| <= band / 2.
MicSet detect_mics(std::span<const Sample> samples, const Interval& window, double tol, double min_ic_len,
                   const Probe& probe = {});

/// Returns the boundary between in_x (pred true) and out_x (pred false).
double bisect_boundary(const std::function<bool(double)>& pred, double in_x, double out_x, double xtol);

/// Bisection for a sign change of probe on bracket, to |hi - lo| <= xtol.
/// Throws BadBracket when both ends have the same nonzero sign.
double refine_sign_change(const Probe& probe, double lo, double hi, double xtol);

struct Level0 {
    Interval interval;
    /// Zero set narrower than one grid step: a single crossing, not an i.c.
    bool switch_point = false;
};

/// The set {x : |rho_tilde(x)| <= tol * scale} as one interval.
/// Throws NonIntervalError when it has two components more than 2 grid steps
/// apart or rho-tilde changes sign more than once.
std::optional<Level0> level0_set(const FunctionPair& pair, double tol);

std::optional<Level0> level0_from_samples(std::span<const Sample> samples, const Interval& window, double tol,
                                          const Probe& probe = {});

}  // namespace monoratio
