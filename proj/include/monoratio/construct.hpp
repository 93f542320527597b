#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoratio/expr.hpp"
#include "monoratio/interval.hpp"
#include "monoratio/ratio.hpp"

namespace monoratio {

/// Adaptive Simpson on [a, b] (either orientation) with the panel error
/// estimate |S_fine - S_coarse| / 15. Throws QuadratureError when a panel has
/// not converged after max_depth halvings.
double adaptive_simpson(const std::function<double(double)>& h, double a, double b, double tol, int max_depth = 40);

/// Continuous piecewise-linear monotone function, exactly flat on each
/// prescribed interval.
struct StaircaseSpec {
    /// Sorted, pairwise disjoint, each of positive length.
    std::vector<Interval> flats;
    /// Slope magnitudes of the sloped pieces, left to right: flats.size() + 1
    /// entries, or a single entry used for every piece.
    std::vector<double> slopes{1.0};
    Direction direction = Direction::Up;
    /// The function passes through (anchor_x, anchor_value).
    double anchor_x = 0.0;
    double anchor_value = 0.0;

    /// Flat endpoints in increasing order.
    std::vector<double> breakpoints() const;
};

class Staircase {
public:
    explicit Staircase(const StaircaseSpec& spec);

    /// Derivative at a breakpoint is the right-hand slope.
    Dual operator()(double x) const;

    const std::vector<double>& breakpoints() const noexcept { return knots_; }
    DifferentiableFn fn() const;

private:
    std::vector<double> knots_;
    std::vector<double> knot_values_;
    // piece_slopes_[p] applies left of knots_[p] (p = 0) or right of knots_[p - 1].
    std::vector<double> piece_slopes_;
    // Intercept when there are no knots.
    double anchor_offset_ = 0.0;
};

/// Throws std::invalid_argument on overlapping flats or non-positive slopes.
Staircase make_staircase_rho(const StaircaseSpec& spec);

/// f(x) = K g(z) + int_z^x rho(u) g'(u) du, the Riemann-Stieltjes integral of
/// rho against the differentiable g.
///
/// The cumulative integral is tabulated at 1025 uniform nodes (plus z and the
/// breakpoints of rho), so a query integrates over at most one local panel.
/// The derivative is returned as rho(x) g'(x), not from quadrature.
class ConstructedFn {
public:
    ConstructedFn(DifferentiableFn g, DifferentiableFn rho, double z, double K, const Interval& window,
                  double quad_tol, std::span<const double> breakpoints = {});

    Dual operator()(double x) const;

    DifferentiableFn fn() const;

    double z() const noexcept { return z_; }
    double K() const noexcept { return K_; }
    const DifferentiableFn& g() const noexcept { return g_; }
    const DifferentiableFn& rho() const noexcept { return rho_; }
    std::size_t checkpoint_count() const noexcept { return nodes_.size(); }

private:
    double integrand(double u) const;

    DifferentiableFn g_;
    DifferentiableFn rho_;
    double z_;
    double K_;
    double base_;  // K g(z)
    double quad_tol_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;  // int_z^{nodes_[i]}
};

constexpr int kCheckpointPanels = 1024;

/// Validates g on the window and builds the constructed f.
ConstructedFn construct_f(const DifferentiableFn& g, const DifferentiableFn& rho, double z, double K,
                          const Interval& window, double quad_tol = 1e-10,
                          std::span<const double> breakpoints = {});

struct GeneratorConfig {
    int min_flats = 0;
    int max_flats = 3;
    /// Chance of a smooth atan-shaped rho when no flats are drawn.
    double smooth_probability = 0.25;
    int grid_n = kDefaultGrid;
    double quad_tol = 1e-10;
};

/// One (g, rho, I) triple with the constructed pair.
struct GeneratedCase {
    GeneratedCase(std::uint64_t seed_, FunctionPair pair_) : seed(seed_), pair(std::move(pair_)) {}

    std::uint64_t seed = 0;
    FunctionPair pair;
    DifferentiableFn rho;
    StaircaseSpec spec;
    bool smooth_rho = false;
    /// The prescribed m.i.c., or a single point when rho has no flat.
    Interval chosen;
    bool chosen_is_flat = false;
    double z = 0.0;
    double K = 0.0;
    Direction rho_direction = Direction::Up;
    std::string g_label;
};

/// Table row selected by a seed: 0 (Up,+), 1 (Down,+), 2 (Up,-), 3 (Down,-).
int generator_row(std::uint64_t seed);

/// Deterministic in the seed. g comes from a catalog of pre-validated
/// templates, so the generator never fails validation.
GeneratedCase random_pair(std::uint64_t seed, const GeneratorConfig& config = {});

}  // namespace monoratio
