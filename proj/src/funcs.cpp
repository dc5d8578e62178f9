#include "gfde/funcs.hpp"

#include <cmath>
#include <cstdio>

namespace gfde {

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

}  // namespace

ScaleFamily ScaleFamily::identity() { return {}; }

ScaleFamily ScaleFamily::power(double p) {
    require_finite(p, "scale power exponent");
    if (!(p > 0.0)) throw DomainError("scale power exponent must be > 0");
    ScaleFamily z;
    z.kind = ScaleKind::Power;
    z.p = p;
    return z;
}

ScaleFamily ScaleFamily::linear(double a, double b) {
    require_finite(a, "scale linear intercept");
    require_finite(b, "scale linear slope");
    if (!(a >= 0.0)) throw DomainError("scale linear intercept must be >= 0");
    if (!(b > 0.0)) throw DomainError("scale linear slope must be > 0");
    ScaleFamily z;
    z.kind = ScaleKind::Linear;
    z.a = a;
    z.b = b;
    return z;
}

ScaleFamily ScaleFamily::exponential(double c, double offset) {
    require_finite(c, "scale exp rate");
    require_finite(offset, "scale exp offset");
    if (!(c > 0.0)) throw DomainError("scale exp rate must be > 0");
    if (!(offset >= 0.0)) throw DomainError("scale exp offset must be >= 0");
    ScaleFamily z;
    z.kind = ScaleKind::Exp;
    z.c = c;
    z.offset = offset;
    return z;
}

std::string ScaleFamily::name() const {
    switch (kind) {
        case ScaleKind::Identity: return "t";
        case ScaleKind::Power: return "t^" + fmt_num(p);
        case ScaleKind::Linear: return fmt_num(a) + "+" + fmt_num(b) + "t";
        case ScaleKind::Exp:
            return "exp(" + fmt_num(c) + "t)-1" + (offset != 0.0 ? "+" + fmt_num(offset) : "");
    }
    return "?";
}

WeightFamily WeightFamily::one() { return {}; }

WeightFamily WeightFamily::exponential(double c) {
    require_finite(c, "weight exp rate");
    WeightFamily w;
    w.kind = WeightKind::Exp;
    w.c = c;
    return w;
}

WeightFamily WeightFamily::power(double p) {
    require_finite(p, "weight power exponent");
    WeightFamily w;
    w.kind = WeightKind::Power;
    w.p = p;
    return w;
}

std::string WeightFamily::name() const {
    switch (kind) {
        case WeightKind::One: return "1";
        case WeightKind::Exp: return "exp(" + fmt_num(c) + "t)";
        case WeightKind::Power: return "(1+t)^" + fmt_num(p);
    }
    return "?";
}

double gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError("gamma_fn requires a finite argument > 0, got " + fmt_num(x));
    }
    return std::tgamma(x);
}

double lower_incomplete_gamma(double s, double x) {
    if (!std::isfinite(s) || s <= 0.0) {
        throw DomainError("lower_incomplete_gamma requires s > 0, got s = " + fmt_num(s));
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("lower_incomplete_gamma requires x >= 0, got x = " + fmt_num(x));
    }
    if (x == 0.0) return 0.0;

    const double log_prefix = s * std::log(x) - x;  // log(x^s e^{-x})
    if (x < s + 1.0) {
        // lower series: x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n))
        double term = 1.0 / s;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (s + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) break;
        }
        return sum * std::exp(log_prefix);
    }

    // upper complement via modified Lentz continued fraction
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double upper = std::exp(log_prefix) * h;
    return gamma_fn(s) - upper;
}

double eval_scale(const ScaleFamily& z, double t) {
    require_finite(t, "scale argument t");
    switch (z.kind) {
        case ScaleKind::Identity: return t;
        case ScaleKind::Power: return std::pow(t, z.p);
        case ScaleKind::Linear: return z.a + z.b * t;
        case ScaleKind::Exp: return std::expm1(z.c * t) + z.offset;
    }
    return 0.0;
}

double eval_weight(const WeightFamily& w, double t) {
    require_finite(t, "weight argument t");
    switch (w.kind) {
        case WeightKind::One: return 1.0;
        case WeightKind::Exp: return std::exp(w.c * t);
        case WeightKind::Power: return std::pow(1.0 + t, w.p);
    }
    return 1.0;
}

double eval_weight_deriv(const WeightFamily& w, double t) {
    require_finite(t, "weight argument t");
    switch (w.kind) {
        case WeightKind::One: return 0.0;
        case WeightKind::Exp: return w.c * std::exp(w.c * t);
        case WeightKind::Power: return w.p * std::pow(1.0 + t, w.p - 1.0);
    }
    return 0.0;
}

double scale_diff(const ScaleFamily& z, double t, double tau) {
    return scale_diff(z, t, tau, t - tau);
}

double scale_diff(const ScaleFamily& z, double t, double tau, double t_minus_tau) {
    if (t_minus_tau <= 0.0) return 0.0;
    switch (z.kind) {
        case ScaleKind::Identity:
            return t_minus_tau;
        case ScaleKind::Linear:
            return z.b * t_minus_tau;
        case ScaleKind::Power:
            // t^p - tau^p = t^p (1 - (tau/t)^p), stable for tau -> t
            if (t <= 0.0) return 0.0;
            return std::pow(t, z.p) * -std::expm1(z.p * std::log1p(-t_minus_tau / t));
        case ScaleKind::Exp:
            // e^{ct} - e^{c tau}; the offset cancels
            return std::exp(z.c * tau) * std::expm1(z.c * t_minus_tau);
    }
    return 0.0;
}

ValidationReport validate_pair(const ScaleFamily& z, const WeightFamily& w, double T, int M) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("validate_pair requires T > 0");
    if (M < 1) throw DomainError("validate_pair requires M >= 1");

    ValidationReport report;
    const int samples = 2 * M;  // nodes and midpoints: k T / (2M), k = 0..2M
    std::vector<double> zs(samples + 1), ws(samples + 1), ts(samples + 1);
    for (int k = 0; k <= samples; ++k) {
        ts[k] = T * k / samples;
        zs[k] = eval_scale(z, ts[k]);
        ws[k] = eval_weight(w, ts[k]);
    }

    auto fail = [&](const std::string& msg) {
        if (report.failure.empty()) report.failure = msg;
    };

    report.z_nonnegative = true;
    report.z_strictly_increasing = true;
    report.w_positive = true;
    report.w_nondecreasing = true;

    for (int k = 0; k <= samples; ++k) {
        if (!std::isfinite(zs[k])) {
            report.z_nonnegative = false;
            fail("z is not finite at t = " + std::to_string(ts[k]));
            break;
        }
        if (zs[k] < 0.0) {
            report.z_nonnegative = false;
            fail("z < 0 at t = " + std::to_string(ts[k]));
            break;
        }
    }
    for (int k = 1; k <= samples; ++k) {
        if (!(zs[k] > zs[k - 1])) {
            report.z_strictly_increasing = false;
            fail("z is not strictly increasing at t = " + std::to_string(ts[k]));
            break;
        }
    }
    for (int k = 0; k <= samples; ++k) {
        if (!std::isfinite(ws[k]) || !(ws[k] > 0.0)) {
            report.w_positive = false;
            fail("w <= 0 at t = " + std::to_string(ts[k]));
            break;
        }
    }
    for (int k = 1; k <= samples; ++k) {
        if (ws[k] < ws[k - 1]) {
            report.w_nondecreasing = false;
            report.warnings.push_back("w is not nondecreasing (first decrease at t = " +
                                      std::to_string(ts[k]) +
                                      "); coefficient positivity is not guaranteed");
            break;
        }
    }
    return report;
}

}  // namespace gfde
