#include "monoratio/ratio.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "monoratio/errors.hpp"

namespace monoratio {

const char* to_string(ValidationKind kind) {
    switch (kind) {
        case ValidationKind::ZeroG: return "ZeroG";
        case ValidationKind::ZeroGPrime: return "ZeroGPrime";
        case ValidationKind::SignChange: return "SignChange";
        case ValidationKind::BadWindow: return "BadWindow";
        case ValidationKind::BadGrid: return "BadGrid";
        case ValidationKind::DomainFault: return "DomainFault";
    }
    return "?";
}

ValidationError::ValidationError(ValidationKind kind, double x, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at x = " + std::to_string(x) + ": " + detail),
      kind_(kind),
      x_(x) {}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::R: return "r";
        case Quantity::Rho: return "rho";
        case Quantity::RhoTilde: return "rho_tilde";
    }
    return "?";
}

std::vector<double> uniform_grid(const Interval& window, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double step = window.length() / n;
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = window.lo + (i + 0.5) * step;
    return xs;
}

std::vector<double> chebyshev_grid(const Interval& window, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double mid = window.midpoint();
    const double half = 0.5 * window.length();
    for (int k = 0; k < n; ++k) {
        xs[static_cast<std::size_t>(k)] = mid - half * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
    }
    return xs;
}

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Bisects a sign flip of component(x) between lo and hi and classifies it.
template <class Component>
[[noreturn]] void report_flip(Component component, double lo, double hi, double scale, ValidationKind zero_kind,
                              const char* what) {
    const int slo = sign_of(component(lo));
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const int s = sign_of(component(mid));
        if (s == 0) {
            lo = hi = mid;
            break;
        }
        (s == slo ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double at = std::abs(component(x));
    if (at <= 1e-6 * scale) throw ValidationError(zero_kind, x, std::string(what) + " crosses zero");
    throw ValidationError(ValidationKind::SignChange, x, std::string(what) + " changes sign without vanishing");
}

}  // namespace

FunctionPair make_pair(DifferentiableFn f, DifferentiableFn g, Interval window, int grid_n) {
    if (!window.finite() || !(window.length() > 0.0)) {
        throw ValidationError(ValidationKind::BadWindow, window.lo, "window must be finite with lo < hi");
    }
    if (grid_n < kMinGrid) {
        throw ValidationError(ValidationKind::BadGrid, window.lo, "grid_n must be at least " + std::to_string(kMinGrid));
    }

    const std::vector<double> xs = chebyshev_grid(window, grid_n);
    std::vector<Dual> gs(xs.size());
    double g_scale = 1.0;
    double gp_scale = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        try {
            gs[i] = g(xs[i]);
            (void)f(xs[i]);
        } catch (const DomainFault& fault) {
            throw ValidationError(ValidationKind::DomainFault, fault.x(), fault.what());
        }
        if (!gs[i].finite()) throw ValidationError(ValidationKind::DomainFault, xs[i], "g or g' is not finite");
        g_scale = std::max(g_scale, std::abs(gs[i].value));
        gp_scale = std::max(gp_scale, std::abs(gs[i].deriv));
    }

    auto g_value = [&](double x) { return g(x).value; };
    auto g_deriv = [&](double x) { return g(x).deriv; };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(gs[i].value) <= 1e-12 * g_scale) {
            throw ValidationError(ValidationKind::ZeroG, xs[i], "g vanishes");
        }
        if (i > 0 && sign_of(gs[i].value) != sign_of(gs[i - 1].value)) {
            report_flip(g_value, xs[i - 1], xs[i], g_scale, ValidationKind::ZeroG, "g");
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(gs[i].deriv) <= 1e-12 * gp_scale) {
            throw ValidationError(ValidationKind::ZeroGPrime, xs[i], "g' vanishes");
        }
        if (i > 0 && sign_of(gs[i].deriv) != sign_of(gs[i - 1].deriv)) {
            report_flip(g_deriv, xs[i - 1], xs[i], gp_scale, ValidationKind::ZeroGPrime, "g'");
        }
    }

    FunctionPair pair;
    pair.f_ = std::move(f);
    pair.g_ = std::move(g);
    pair.window_ = Interval::open(window.lo, window.hi);
    pair.sign_gprime_ = sign_of(gs.front().deriv);
    pair.sign_gg_ = sign_of(gs.front().value) * pair.sign_gprime_;
    pair.grid_n_ = grid_n;
    return pair;
}

double ratio_at(const FunctionPair& pair, double x) { return pair.eval(x).r(); }

double rho_at(const FunctionPair& pair, double x) { return pair.eval(x).rho(); }

double rho_tilde_at(const FunctionPair& pair, double x) { return pair.eval(x).rho_tilde(); }

double quantity_at(const FunctionPair& pair, Quantity which, double x) {
    const PointEval p = pair.eval(x);
    switch (which) {
        case Quantity::R: return p.r();
        case Quantity::Rho: return p.rho();
        case Quantity::RhoTilde: return p.rho_tilde();
    }
    return 0.0;
}

Samples sample(const FunctionPair& pair, Quantity which, int n) {
    if (n < 2) throw std::invalid_argument("sample needs n >= 2");
    Samples out;
    out.reserve(static_cast<std::size_t>(n));
    for (double x : uniform_grid(pair.window(), n)) out.push_back({x, quantity_at(pair, which, x)});
    return out;
}

}  // namespace monoratio
