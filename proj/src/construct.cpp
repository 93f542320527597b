#include "monoratio/construct.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "monoratio/errors.hpp"

namespace monoratio {

namespace {

struct SimpsonPanel {
    const std::function<double(double)>& h;
    int max_depth;

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = h(lm);
        const double frm = h(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        // Below ~eps of the panel value the estimate is pure rounding noise.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
        if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) return left + right + delta / 15.0;
        if (depth >= max_depth) {
            throw QuadratureError("adaptive Simpson did not converge on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& h, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(h, b, a, tol, max_depth);
    const double m = 0.5 * (a + b);
    const double fa = h(a);
    const double fm = h(m);
    const double fb = h(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return SimpsonPanel{h, max_depth}.refine(a, b, fa, fm, fb, whole, tol, 1);
}

std::vector<double> StaircaseSpec::breakpoints() const {
    std::vector<double> out;
    out.reserve(2 * flats.size());
    for (const auto& flat : flats) {
        out.push_back(flat.lo);
        out.push_back(flat.hi);
    }
    return out;
}

Staircase::Staircase(const StaircaseSpec& spec) {
    const std::size_t m = spec.flats.size();
    if (spec.slopes.size() != 1 && spec.slopes.size() != m + 1) {
        throw std::invalid_argument("staircase needs 1 or flats + 1 slopes");
    }
    for (double s : spec.slopes) {
        if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("staircase slopes must be positive");
    }
    for (std::size_t k = 0; k < m; ++k) {
        const Interval& flat = spec.flats[k];
        if (!flat.finite() || !(flat.length() > 0.0)) throw std::invalid_argument("flat must have positive length");
        if (k > 0 && !(flat.lo > spec.flats[k - 1].hi)) {
            throw std::invalid_argument("flats must be sorted and pairwise disjoint");
        }
    }

    const double sgn = spec.direction == Direction::Up ? 1.0 : -1.0;
    auto slope_at = [&](std::size_t i) { return sgn * (spec.slopes.size() == 1 ? spec.slopes[0] : spec.slopes[i]); };

    knots_ = spec.breakpoints();
    piece_slopes_.resize(knots_.size() + 1);
    for (std::size_t p = 0; p < piece_slopes_.size(); ++p) piece_slopes_[p] = p % 2 == 0 ? slope_at(p / 2) : 0.0;

    if (knots_.empty()) {
        anchor_offset_ = spec.anchor_value - piece_slopes_[0] * spec.anchor_x;
        return;
    }
    knot_values_.assign(knots_.size(), 0.0);
    for (std::size_t k = 1; k < knots_.size(); ++k) {
        knot_values_[k] = knot_values_[k - 1] + piece_slopes_[k] * (knots_[k] - knots_[k - 1]);
    }

    // Shift so the function passes through the anchor.
    const double raw = (*this)(spec.anchor_x).value;
    for (auto& v : knot_values_) v += spec.anchor_value - raw;
}

Dual Staircase::operator()(double x) const {
    if (knots_.empty()) return {anchor_offset_ + piece_slopes_[0] * x, piece_slopes_[0]};
    const auto p = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
    const double slope = piece_slopes_[p];
    if (p == 0) return {knot_values_[0] + slope * (x - knots_[0]), slope};
    return {knot_values_[p - 1] + slope * (x - knots_[p - 1]), slope};
}

DifferentiableFn Staircase::fn() const {
    auto self = std::make_shared<const Staircase>(*this);
    return {[self](double x) { return (*self)(x); }, "staircase"};
}

Staircase make_staircase_rho(const StaircaseSpec& spec) { return Staircase(spec); }

ConstructedFn::ConstructedFn(DifferentiableFn g, DifferentiableFn rho, double z, double K, const Interval& window,
                             double quad_tol, std::span<const double> breakpoints)
    : g_(std::move(g)), rho_(std::move(rho)), z_(z), K_(K), quad_tol_(quad_tol) {
    if (!(window.length() > 0.0) || !window.finite()) throw std::invalid_argument("window must be finite");
    if (!(z >= window.lo && z <= window.hi)) throw std::invalid_argument("z must lie in the window");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("quad_tol must be positive");
    base_ = K_ * g_(z_).value;

    nodes_.reserve(kCheckpointPanels + 2 + breakpoints.size());
    const double step = window.length() / kCheckpointPanels;
    for (int i = 0; i <= kCheckpointPanels; ++i) nodes_.push_back(i == kCheckpointPanels ? window.hi : window.lo + i * step);
    nodes_.push_back(z_);
    for (double b : breakpoints) {
        if (b > window.lo && b < window.hi) nodes_.push_back(b);
    }
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

    const auto iz = static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), z_) - nodes_.begin());
    const std::function<double(double)> h = [this](double u) { return integrand(u); };
    cumulative_.assign(nodes_.size(), 0.0);
    for (std::size_t k = iz + 1; k < nodes_.size(); ++k) {
        cumulative_[k] = cumulative_[k - 1] + adaptive_simpson(h, nodes_[k - 1], nodes_[k], quad_tol_);
    }
    for (std::size_t k = iz; k-- > 0;) {
        cumulative_[k] = cumulative_[k + 1] - adaptive_simpson(h, nodes_[k], nodes_[k + 1], quad_tol_);
    }
}

double ConstructedFn::integrand(double u) const { return rho_(u).value * g_(u).deriv; }

Dual ConstructedFn::operator()(double x) const {
    const double slope = rho_(x).value * g_(x).deriv;
    // Integrate from the neighbouring node on the side of z.
    std::size_t k;
    if (x >= z_) {
        k = static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin()) - 1;
    } else {
        k = static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin());
        k = std::min(k, nodes_.size() - 1);
    }
    const double anchor = nodes_[k];
    double value = base_ + cumulative_[k];
    if (anchor != x) {
        const std::function<double(double)> h = [this](double u) { return integrand(u); };
        value += adaptive_simpson(h, anchor, x, quad_tol_);
    }
    return {value, slope};
}

DifferentiableFn ConstructedFn::fn() const {
    auto self = std::make_shared<const ConstructedFn>(*this);
    return {[self](double x) { return (*self)(x); },
            "K*g(z) + int_z^x rho dg [g = " + g_.label() + ", rho = " + rho_.label() + "]"};
}

ConstructedFn construct_f(const DifferentiableFn& g, const DifferentiableFn& rho, double z, double K,
                          const Interval& window, double quad_tol, std::span<const double> breakpoints) {
    // Reuse the pair validation for the conditions on g.
    (void)make_pair(g, g, window, kDefaultGrid);
    return ConstructedFn(g, rho, z, K, window, quad_tol, breakpoints);
}

namespace {

struct GTemplate {
    const char* text;
    double lo;
    double hi;
    int sign_gg;
};

// g g' keeps its sign on [lo, hi] for every entry.
constexpr GTemplate kTemplates[] = {
    {"exp(x)", -2.5, 2.5, 1},    {"x + 3", -2.5, 3.0, 1},      {"-exp(x)", -2.5, 2.5, 1},
    {"2 + atan(x)", -3.0, 3.0, 1}, {"exp(-x)", -2.5, 2.5, -1}, {"1/(x + 4)", -3.0, 3.0, -1},
    {"x - 3", -3.0, 2.5, -1},    {"-1/(x + 4)", -3.0, 3.0, -1},
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string number_text(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    return v < 0.0 ? "(" + s + ")" : s;
}

}  // namespace

int generator_row(std::uint64_t seed) { return static_cast<int>(seed % 4); }

GeneratedCase random_pair(std::uint64_t seed, const GeneratorConfig& config) {
    std::mt19937_64 rng(splitmix64(seed));
    auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

    const int row = generator_row(seed);
    const Direction dir = row % 2 == 0 ? Direction::Up : Direction::Down;
    const int sign_gg = row < 2 ? 1 : -1;

    std::vector<const GTemplate*> candidates;
    for (const auto& t : kTemplates) {
        if (t.sign_gg == sign_gg) candidates.push_back(&t);
    }
    const GTemplate& tmpl =
        *candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];

    const double span = tmpl.hi - tmpl.lo;
    const double length = uniform(2.0, std::min(4.0, span));
    const double lo = uniform(tmpl.lo, tmpl.hi - length);
    const Interval window = Interval::open(lo, lo + length);

    const int flats = std::uniform_int_distribution<int>(config.min_flats, config.max_flats)(rng);

    StaircaseSpec spec;
    spec.direction = dir;
    spec.anchor_x = window.midpoint();
    spec.anchor_value = uniform(-1.0, 1.0);
    spec.slopes.clear();
    for (int i = 0; i <= flats; ++i) spec.slopes.push_back(uniform(0.5, 2.0));

    // Flats of 8-15% of the window, separated by gaps, inset 5% from each edge.
    std::vector<double> widths;
    double used = 0.0;
    for (int i = 0; i < flats; ++i) {
        widths.push_back(uniform(0.08, 0.15) * length);
        used += widths.back();
    }
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (int i = 0; i <= flats; ++i) {
        weights.push_back(uniform(1.0, 2.0));
        weight_sum += weights.back();
    }
    const double free = 0.9 * length - used;
    double cursor = window.lo + 0.05 * length;
    for (int i = 0; i < flats; ++i) {
        cursor += free * weights[static_cast<std::size_t>(i)] / weight_sum;
        spec.flats.push_back(Interval::closed(cursor, cursor + widths[static_cast<std::size_t>(i)]));
        cursor += widths[static_cast<std::size_t>(i)];
    }

    const DifferentiableFn g = DifferentiableFn::from_text(tmpl.text);
    GeneratedCase out(seed, make_pair(g, g, window, config.grid_n));
    out.spec = spec;
    out.rho_direction = dir;
    out.g_label = tmpl.text;

    std::vector<double> breakpoints;
    const bool smooth = flats == 0 && uniform(0.0, 1.0) < config.smooth_probability;
    if (smooth) {
        const double amp = uniform(0.5, 1.5) * (dir == Direction::Up ? 1.0 : -1.0);
        const double rate = uniform(0.5, 2.0);
        const double center = window.midpoint() + uniform(-0.25, 0.25) * length;
        const double shift = uniform(-1.0, 1.0);
        out.rho = DifferentiableFn::from_text(number_text(amp) + " * atan(" + number_text(rate) + " * (x - " +
                                              number_text(center) + ")) + " + number_text(shift));
        out.smooth_rho = true;
    } else {
        const Staircase stairs = make_staircase_rho(spec);
        out.rho = stairs.fn();
        breakpoints = stairs.breakpoints();
    }

    if (flats > 0) {
        const auto pick = std::uniform_int_distribution<int>(0, flats - 1)(rng);
        out.chosen = spec.flats[static_cast<std::size_t>(pick)];
        out.chosen_is_flat = true;
        out.z = out.chosen.midpoint();
    } else {
        out.z = uniform(window.lo + 0.25 * length, window.hi - 0.25 * length);
        out.chosen = Interval::point(out.z);
    }
    out.K = out.rho.value(out.z);

    const ConstructedFn f(g, out.rho, out.z, out.K, window, config.quad_tol, breakpoints);
    out.pair = make_pair(f.fn(), g, window, config.grid_n);
    return out;
}

}  // namespace monoratio
