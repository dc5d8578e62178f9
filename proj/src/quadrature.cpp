#include "gfde/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gfde/error.hpp"

namespace gfde {

namespace {

// One tanh-sinh abscissa: parameter s maps to x through
//   g = (pi/2) sinh(s),  x = mid + half tanh(g),
// with the distances to both endpoints formed from e^{2g} directly so they
// never suffer cancellation:
//   b - x = half * 2 / (e^{2g} + 1),   x - a = half * 2 / (e^{-2g} + 1).
struct Node {
    double x = 0.0;
    double right = 0.0;   // b - x
    double weight = 0.0;  // (pi/2) cosh(s) / cosh^2(g), times half
    bool usable = false;
};

Node make_node(double s, double a, double b, double half) {
    Node n;
    const double g = 1.5707963267948966 * std::sinh(s);
    const double cg = std::cosh(g);
    const double weight = half * 1.5707963267948966 * std::cosh(s) / (cg * cg);
    if (!(weight > 0.0) || !std::isfinite(weight)) return n;  // underflowed tail
    const double e2g = std::exp(2.0 * g);
    const double right = half * 2.0 / (e2g + 1.0);
    const double left = half * 2.0 / (1.0 / e2g + 1.0);
    if (!(right > 0.0) || !(left > 0.0)) return n;  // beyond representable distance
    n.x = (s <= 0.0) ? a + left : b - right;
    n.right = right;
    n.weight = weight;
    n.usable = true;
    return n;
}

struct SweepResult {
    double sum = 0.0;
    // magnitude of the last term when the sweep was cut by representability
    // rather than by decay; bounds the mass lost past the cut
    double tail_bound = 0.0;
};

}  // namespace

QuadratureResult tanh_sinh(const std::function<double(double, double)>& f,
                           double a, double b, double abs_tol, int max_levels) {
    if (!(b >= a)) throw DomainError("tanh_sinh requires b >= a");
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    const double half = 0.5 * (b - a);

    // Sums weight * f along one side (step > 0: toward b) until the terms
    // stop contributing or the nodes stop being representable.
    auto sweep = [&](double s0, double step, double scale_hint) {
        SweepResult r;
        int small_streak = 0;
        double last_term = 0.0;
        for (double s = s0; std::abs(s) < 7.5; s += step) {
            const Node n = make_node(s, a, b, half);
            if (!n.usable) {
                r.tail_bound = std::abs(last_term);
                return r;
            }
            const double fx = f(n.x, n.right);
            if (!std::isfinite(fx)) {
                r.tail_bound = std::abs(last_term);
                return r;
            }
            const double term = n.weight * fx;
            r.sum += term;
            last_term = term;
            if (std::abs(term) <= 1e-18 * (std::abs(r.sum) + scale_hint)) {
                if (++small_streak >= 2) return r;  // genuine decay, no lost tail
            } else {
                small_streak = 0;
            }
        }
        r.tail_bound = std::abs(last_term);
        return r;
    };

    double h = 1.0;
    const Node center = make_node(0.0, a, b, half);
    double total = center.usable ? center.weight * f(center.x, center.right) : 0.0;
    for (double sign : {1.0, -1.0}) {
        total += sweep(sign * h, sign * h, std::abs(total)).sum;
    }
    double prev = h * total;

    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        const double scale_hint = std::abs(total) + 1e-300;
        // new nodes: odd multiples of the refined h; this level's own cut
        // terms bound the mass lost past the representable node range
        double truncation = 0.0;
        for (double sign : {1.0, -1.0}) {
            const auto side = sweep(sign * h, sign * 2.0 * h, scale_hint);
            total += side.sum;
            truncation = std::max(truncation, side.tail_bound);
        }
        const double current = h * total;
        res.value = current;
        res.error_estimate = std::abs(current - prev) + truncation;
        res.levels = level;
        const double floor = 8.0 * 2.2204460492503131e-16 * std::abs(current);
        if (level >= 2 && (res.error_estimate <= abs_tol || res.error_estimate <= floor)) {
            res.converged = true;
            return res;
        }
        prev = current;
    }
    return res;
}

}  // namespace gfde
