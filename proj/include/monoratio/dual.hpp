#pragma once

#include <cmath>

namespace monoratio {

/// Forward-mode dual number: value plus first derivative with respect to x.
///
/// Arithmetic follows the truncated Taylor rules, e.g.
///   (a, a') * (b, b') = (ab, a'b + ab').
struct Dual {
    double value = 0.0;
    double deriv = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v, double d = 0.0) : value(v), deriv(d) {}

    static constexpr Dual variable(double x) { return {x, 1.0}; }
    static constexpr Dual constant(double c) { return {c, 0.0}; }

    bool finite() const { return std::isfinite(value) && std::isfinite(deriv); }

    friend constexpr bool operator==(const Dual&, const Dual&) = default;
};

constexpr Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
constexpr Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
constexpr Dual operator*(Dual a, Dual b) {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}
constexpr Dual operator/(Dual a, Dual b) {
    return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

inline Dual sin(Dual a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(Dual a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }
inline Dual exp(Dual a) {
    const double e = std::exp(a.value);
    return {e, e * a.deriv};
}
inline Dual log(Dual a) { return {std::log(a.value), a.deriv / a.value}; }
inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.value);
    return {s, a.deriv / (2.0 * s)};
}
// abs'(0) := 0
inline Dual abs(Dual a) {
    const double sgn = a.value > 0.0 ? 1.0 : (a.value < 0.0 ? -1.0 : 0.0);
    return {std::abs(a.value), sgn * a.deriv};
}
inline Dual atan(Dual a) { return {std::atan(a.value), a.deriv / (1.0 + a.value * a.value)}; }
inline Dual tanh(Dual a) {
    const double t = std::tanh(a.value);
    return {t, (1.0 - t * t) * a.deriv};
}

}  // namespace monoratio
