#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monoratio/interval.hpp"
#include "monoratio/patterns.hpp"
#include "monoratio/ratio.hpp"

namespace monoratio {

/// Family of admissible r patterns. A family admits its composite kind and the
/// degenerate placements of [c, d] (Increasing, Decreasing, Constant).
/// Either is the intersection of both families, used when rho is constant.
enum class Family { DownUp, UpDown, Either };

const char* to_string(Family family);

Family vertical_mirror(Family family);

bool in_family(PatternKind kind, Family family);

/// One line of the monotonicity tables: conditions (rho direction, sign of
/// g g') and conclusions (family of r, direction of rho-tilde).
struct RuleRow {
    Direction rho_dir;
    int sign_gg;
    Family r_family;
    Direction rho_tilde_dir;
};

/// r is DownUp-family iff (rho is Up) xor (g g' < 0).
Family predict_r_family(Direction rho_dir, int sign_gg);

/// rho-tilde follows rho when g g' > 0 and opposes it when g g' < 0.
Direction predict_rho_tilde_dir(Direction rho_dir, int sign_gg);

/// The four rows in table order: (Up,+), (Down,+), (Up,-), (Down,-).
std::array<RuleRow, 4> rule_rows();

struct Tolerances {
    /// |rho-tilde| <= tol_zero * rms(rho-tilde) counts as zero.
    double tol_zero = 1e-7;
    /// Constancy band for m.i.c. detection, relative to 1 + median |value|.
    double tol_const = 1e-10;
    /// Minimum m.i.c. length in grid steps.
    double min_ic_steps = 3.0;
    /// Switch interval vs level-0 set, in x.
    double switch_tol = 1e-3;
    /// m.i.c. coincidence across r, rho, rho-tilde, in grid steps.
    double mic_match_steps = 2.0;
    /// |C| <= c_tol * max |g| on the interval counts as C = 0.
    double c_tol = 1e-6;
    /// Residual of r - (K1 + C/g), relative to 1 + max |r| on the interval.
    double fit_tol = 1e-7;
};

enum class RhoShape { Up, Down, ConstantRho, Unclassifiable };

const char* to_string(RhoShape shape);

/// Least-squares fit of r = K1 + C/g on one m.i.c. of rho.
struct ConstancyFit {
    Interval interval;
    double K1 = 0.0;
    double C = 0.0;
    double residual = 0.0;
    bool residual_ok = false;
    bool c_is_zero = false;
    bool is_mic_of_r = false;
};

struct AnalysisReport {
    std::string f_label;
    std::string g_label;
    Interval window;
    int grid_n = 0;
    int sign_gg = 0;

    RhoShape rho_shape = RhoShape::Unclassifiable;
    Pattern rho_pattern;
    std::optional<Family> predicted_family;
    std::optional<Direction> predicted_rho_tilde_dir;

    /// Pattern of r from the sign of rho-tilde.
    Pattern observed_r_pattern;
    /// Pattern of r from its own first differences (cross-check).
    Pattern raw_r_pattern;
    Pattern rho_tilde_pattern;
    std::optional<Level0> level0;

    MicSet mics_r;
    MicSet mics_rho;
    MicSet mics_rho_tilde;
    std::vector<ConstancyFit> fits;
    /// Every m.i.c. of rho is one of rho-tilde and vice versa.
    bool mic_sets_agree = false;

    std::size_t sign_points = 0;
    std::size_t sign_violations = 0;

    bool prop1_ok = false;
    bool prop2_ok = false;
    bool uniqueness_ok = false;
    bool sign_identity_ok = false;

    /// Empty when the analysis ran to completion, else the reason it stopped.
    std::string error;
    std::vector<std::string> notes;
    Tolerances tolerances;

    bool all_ok() const { return prop1_ok && prop2_ok && uniqueness_ok && sign_identity_ok; }
};

/// Samples r, rho and rho-tilde on grid_n uniform points and checks the rule
/// tables, the sign identity, uniqueness of the m.i.c. of r and its
/// coincidence with an m.i.c. of rho (fitting r = K1 + C/g on every m.i.c.
/// of rho). A non-monotone rho stops the analysis with error set and all
/// flags false.
AnalysisReport check_pair(const FunctionPair& pair, const Tolerances& tol = {});

enum class Axis { Vertical, Horizontal };

/// Vertical: f -> -f. Horizontal: f(x) -> f(-x), g(x) -> g(-x) on the mirrored
/// window. The result is validated again.
FunctionPair reflect(const FunctionPair& pair, Axis axis);

}  // namespace monoratio
