#pragma once

#include <string>
#include <vector>

#include "gfde/error.hpp"

namespace gfde {

enum class ScaleKind { Identity, Power, Linear, Exp };

/// Scale function z(t).  Admissible families are strictly increasing and
/// nonnegative on [0, T]:
///   Identity   z(t) = t
///   Power      z(t) = t^p                    (p > 0)
///   Linear     z(t) = a + b t                (a >= 0, b > 0)
///   Exp        z(t) = e^{c t} - 1 + offset   (c > 0, offset >= 0)
struct ScaleFamily {
    ScaleKind kind = ScaleKind::Identity;
    double p = 1.0;
    double a = 0.0;
    double b = 1.0;
    double c = 1.0;
    double offset = 0.0;

    static ScaleFamily identity();
    static ScaleFamily power(double p);
    static ScaleFamily linear(double a, double b);
    static ScaleFamily exponential(double c, double offset = 0.0);

    std::string name() const;
};

enum class WeightKind { One, Exp, Power };

/// Weight function w(t), positive on [0, T]:
///   One     w(t) = 1
///   Exp     w(t) = e^{c t}
///   Power   w(t) = (1 + t)^p
struct WeightFamily {
    WeightKind kind = WeightKind::One;
    double c = 0.0;
    double p = 0.0;

    static WeightFamily one();
    static WeightFamily exponential(double c);
    static WeightFamily power(double p);

    std::string name() const;
};

/// Gamma(x) for x > 0.  Relative error <= 1e-13 on the range the solver
/// uses; rejects x <= 0 and non-finite arguments.
double gamma_fn(double x);

/// Lower incomplete gamma gamma(s, x) = int_0^x e^{-u} u^{s-1} du for
/// s > 0, x >= 0.  Series for x < s + 1, continued fraction for the upper
/// complement otherwise.
double lower_incomplete_gamma(double s, double x);

double eval_scale(const ScaleFamily& z, double t);
double eval_weight(const WeightFamily& w, double t);
double eval_weight_deriv(const WeightFamily& w, double t);

/// z(t) - z(tau) for 0 <= tau <= t.  The three-argument form takes
/// t - tau explicitly so the difference stays accurate when tau is within
/// roundoff of t (needed by the singular-kernel quadrature).
double scale_diff(const ScaleFamily& z, double t, double tau);
double scale_diff(const ScaleFamily& z, double t, double tau, double t_minus_tau);

struct ValidationReport {
    bool z_strictly_increasing = false;
    bool z_nonnegative = false;
    bool w_positive = false;
    bool w_nondecreasing = false;  // soft condition, warning only
    std::string failure;           // first violated hard condition, empty when admissible
    std::vector<std::string> warnings;

    bool ok() const { return failure.empty(); }
};

/// Samples z and w on the 2M+1 points {k T / (2M)} and checks
/// admissibility: z strictly increasing and nonnegative, w positive (hard);
/// w nondecreasing (soft).  Hard violations fill `failure` with the
/// condition and the sample point where it first fails.
ValidationReport validate_pair(const ScaleFamily& z, const WeightFamily& w, double T, int M);

}  // namespace gfde
