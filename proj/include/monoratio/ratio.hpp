#pragma once

#include <cmath>
#include <vector>

#include "monoratio/expr.hpp"
#include "monoratio/interval.hpp"

namespace monoratio {

struct Sample {
    double x = 0.0;
    double value = 0.0;
};

using Samples = std::vector<Sample>;

/// f and g evaluated at one abscissa; the three derived quantities come from
/// these four numbers.
struct PointEval {
    double x = 0.0;
    Dual f;
    Dual g;

    double r() const { return f.value / g.value; }
    double rho() const { return f.deriv / g.deriv; }
    /// (f'g - fg') / |g'|, algebraically r' g^2 / |g'|.
    double rho_tilde() const { return (f.deriv * g.value - f.value * g.deriv) / std::abs(g.deriv); }
};

/// A validated (f, g) on a finite window: g and g' are nonzero and keep their
/// signs at every validation sample.
class FunctionPair {
public:
    const DifferentiableFn& f() const noexcept { return f_; }
    const DifferentiableFn& g() const noexcept { return g_; }
    const Interval& window() const noexcept { return window_; }
    /// Constant sign of g g' on the window (+1 or -1).
    int sign_gg() const noexcept { return sign_gg_; }
    /// Constant sign of g'.
    int sign_gprime() const noexcept { return sign_gprime_; }
    int grid_n() const noexcept { return grid_n_; }

    PointEval eval(double x) const { return {x, f_(x), g_(x)}; }

private:
    friend FunctionPair make_pair(DifferentiableFn f, DifferentiableFn g, Interval window, int grid_n);

    FunctionPair() = default;

    DifferentiableFn f_;
    DifferentiableFn g_;
    Interval window_;
    int sign_gg_ = 1;
    int sign_gprime_ = 1;
    int grid_n_ = 0;
};

constexpr int kMinGrid = 64;
constexpr int kDefaultGrid = 2048;

/// Validates g, g' on grid_n Chebyshev-spaced interior points. A value counts
/// as zero when |v| <= 1e-12 * max(1, max sample magnitude). A sign flip
/// between neighbours is bisected; it is reported as ZeroG/ZeroGPrime when the
/// function becomes small there and as SignChange otherwise (a pole).
FunctionPair make_pair(DifferentiableFn f, DifferentiableFn g, Interval window, int grid_n = kDefaultGrid);

double ratio_at(const FunctionPair& pair, double x);
double rho_at(const FunctionPair& pair, double x);
double rho_tilde_at(const FunctionPair& pair, double x);

enum class Quantity { R, Rho, RhoTilde };

const char* to_string(Quantity q);

/// n uniform interior points, lo + (i + 1/2) * length / n.
std::vector<double> uniform_grid(const Interval& window, int n);

/// Chebyshev points of the first kind mapped to the window, ascending.
std::vector<double> chebyshev_grid(const Interval& window, int n);

double quantity_at(const FunctionPair& pair, Quantity which, double x);

Samples sample(const FunctionPair& pair, Quantity which, int n);

}  // namespace monoratio
