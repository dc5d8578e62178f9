#include "gfde/catalog.hpp"

#include <cmath>

namespace gfde {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::function<double(double)> zero_fn() {
    return [](double) { return 0.0; };
}

}  // namespace

std::vector<CaseId> all_cases() {
    return {CaseId::Ex1, CaseId::Ex2, CaseId::Ex3, CaseId::Ex4,
            CaseId::Ex5, CaseId::Op1, CaseId::Op2};
}

std::optional<CaseId> parse_case_id(std::string_view text) {
    if (text == "ex1") return CaseId::Ex1;
    if (text == "ex2") return CaseId::Ex2;
    if (text == "ex3") return CaseId::Ex3;
    if (text == "ex4") return CaseId::Ex4;
    if (text == "ex5") return CaseId::Ex5;
    if (text == "op1") return CaseId::Op1;
    if (text == "op2") return CaseId::Op2;
    return std::nullopt;
}

std::string to_string(CaseId id) {
    switch (id) {
        case CaseId::Ex1: return "ex1";
        case CaseId::Ex2: return "ex2";
        case CaseId::Ex3: return "ex3";
        case CaseId::Ex4: return "ex4";
        case CaseId::Ex5: return "ex5";
        case CaseId::Op1: return "op1";
        case CaseId::Op2: return "op2";
    }
    return "?";
}

bool is_operator_case(CaseId id) { return id == CaseId::Op1 || id == CaseId::Op2; }

double default_alpha(CaseId id) {
    switch (id) {
        case CaseId::Op1: return 0.5;
        case CaseId::Op2: return 0.2;
        default: return 0.5;
    }
}

std::string case_summary(CaseId id) {
    switch (id) {
        case CaseId::Ex1:
            return "u = x(x-1)t^2 + sin(pi x) on [0,1]x[0,1]; z = t, w = 1; "
                   "nonzero initial data, zero boundaries";
        case CaseId::Ex2:
            return "u = x(x-1)t^2; z = t, w = 1; zero initial and boundary data";
        case CaseId::Ex3:
            return "u = t^2 sin(pi x); z = t, w = 1; zero initial and boundary data";
        case CaseId::Ex4:
            return "u = sin(pi x) e^{-t}; z = t, w = e^{2t}; forcing uses the lower "
                   "incomplete gamma function";
        case CaseId::Ex5:
            return "u = e^x t^{4+alpha}; z = t, w = 1; nonzero time-dependent boundaries";
        case CaseId::Op1:
            return "operator test: g = t - t^3, z = t^2, w = 1, error at t = 0.6 "
                   "(default alpha 0.5)";
        case CaseId::Op2:
            return "operator test: g = t - t^3, z = t^2, w = 1, error at t = 0.6 "
                   "(default alpha 0.2)";
    }
    return "?";
}

CatalogCase get_case(CaseId id, double alpha, bool ex4_printed_forcing) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    if (is_operator_case(id)) {
        throw DomainError("case " + to_string(id) +
                          " is an operator test; use get_operator_case");
    }

    CatalogCase cc;
    cc.id = id;
    GfdeProblem& p = cc.problem;
    p.alpha = alpha;
    p.delta = 1.0;
    p.x_left = 0.0;
    p.x_right = 1.0;
    p.T = 1.0;
    p.scale = ScaleFamily::identity();
    p.weight = WeightFamily::one();
    p.left_bc = zero_fn();
    p.right_bc = zero_fn();

    switch (id) {
        case CaseId::Ex1: {
            const double g3 = gamma_fn(3.0 - alpha);
            p.forcing = [alpha, g3](double x, double t) {
                return 2.0 * x * (x - 1.0) * std::pow(t, 2.0 - alpha) / g3 - 2.0 * t * t +
                       kPi * kPi * std::sin(kPi * x);
            };
            p.initial = [](double x) { return std::sin(kPi * x); };
            p.exact = [](double x, double t) {
                return x * (x - 1.0) * t * t + std::sin(kPi * x);
            };
            cc.exact_dt = [](double x, double t) { return 2.0 * x * (x - 1.0) * t; };
            cc.exact_dxx = [](double x, double t) {
                return 2.0 * t * t - kPi * kPi * std::sin(kPi * x);
            };
            break;
        }
        case CaseId::Ex2: {
            const double g3 = gamma_fn(3.0 - alpha);
            p.forcing = [alpha, g3](double x, double t) {
                return 2.0 * x * (x - 1.0) * std::pow(t, 2.0 - alpha) / g3 - 2.0 * t * t;
            };
            p.initial = zero_fn();
            p.exact = [](double x, double t) { return x * (x - 1.0) * t * t; };
            cc.exact_dt = [](double x, double t) { return 2.0 * x * (x - 1.0) * t; };
            cc.exact_dxx = [](double, double t) { return 2.0 * t * t; };
            break;
        }
        case CaseId::Ex3: {
            const double g3 = gamma_fn(3.0 - alpha);
            p.forcing = [alpha, g3](double x, double t) {
                return (2.0 * std::pow(t, 2.0 - alpha) / g3 + kPi * kPi * t * t) *
                       std::sin(kPi * x);
            };
            p.initial = zero_fn();
            p.exact = [](double x, double t) { return t * t * std::sin(kPi * x); };
            cc.exact_dt = [](double x, double t) { return 2.0 * t * std::sin(kPi * x); };
            cc.exact_dxx = [](double x, double t) {
                return -kPi * kPi * t * t * std::sin(kPi * x);
            };
            break;
        }
        case CaseId::Ex4: {
            p.weight = WeightFamily::exponential(2.0);
            const double g1 = gamma_fn(1.0 - alpha);
            // The consistent forcing carries gamma(1-a, t)/Gamma(1-a); the
            // alternative form carries the upper-tail complement instead
            // and does not match the exact solution.
            p.forcing = [alpha, g1, ex4_printed_forcing](double x, double t) {
                const double reg = lower_incomplete_gamma(1.0 - alpha, t) / g1;
                const double factor = ex4_printed_forcing ? (1.0 - reg) : reg;
                return std::sin(kPi * x) * std::exp(-t) * (factor + kPi * kPi);
            };
            p.initial = [](double x) { return std::sin(kPi * x); };
            p.exact = [](double x, double t) { return std::sin(kPi * x) * std::exp(-t); };
            cc.exact_dt = [](double x, double t) { return -std::sin(kPi * x) * std::exp(-t); };
            cc.exact_dxx = [](double x, double t) {
                return -kPi * kPi * std::sin(kPi * x) * std::exp(-t);
            };
            break;
        }
        case CaseId::Ex5: {
            const double g5a = gamma_fn(5.0 + alpha);
            p.forcing = [alpha, g5a](double x, double t) {
                return std::exp(x) * std::pow(t, 4.0) * (g5a / 24.0 - std::pow(t, alpha));
            };
            p.initial = zero_fn();
            p.left_bc = [alpha](double t) { return std::pow(t, 4.0 + alpha); };
            p.right_bc = [alpha](double t) {
                return std::exp(1.0) * std::pow(t, 4.0 + alpha);
            };
            p.exact = [alpha](double x, double t) {
                return std::exp(x) * std::pow(t, 4.0 + alpha);
            };
            cc.exact_dt = [alpha](double x, double t) {
                return (4.0 + alpha) * std::exp(x) * std::pow(t, 3.0 + alpha);
            };
            cc.exact_dxx = [alpha](double x, double t) {
                return std::exp(x) * std::pow(t, 4.0 + alpha);
            };
            break;
        }
        default: break;
    }
    return cc;
}

OperatorCase get_operator_case(CaseId id, std::optional<double> alpha) {
    if (!is_operator_case(id)) {
        throw DomainError("case " + to_string(id) + " is a PDE case; use get_case");
    }
    OperatorCase oc;
    oc.name = to_string(id);
    oc.alpha = alpha.value_or(default_alpha(id));
    if (!(oc.alpha > 0.0) || !(oc.alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    oc.scale = ScaleFamily::power(2.0);
    oc.weight = WeightFamily::one();
    oc.t_eval = 0.6;
    oc.g.value = [](double t) { return t - t * t * t; };
    oc.g.deriv = [](double t) { return 1.0 - 3.0 * t * t; };
    return oc;
}

ConsistencyReport verify_case_consistency(const CatalogCase& cc, double quad_tol) {
    const GfdeProblem& p = cc.problem;
    if (!p.exact || !cc.exact_dt || !cc.exact_dxx) {
        throw DomainError("consistency check requires exact solution and derivatives");
    }

    ConsistencyReport report;
    for (int ix = 1; ix <= 3; ++ix) {
        const double x = p.x_left + (p.x_right - p.x_left) * ix / 4.0;
        TimeFunction u_slice{
            [&p, x](double t) { return p.exact(x, t); },
            [&cc, x](double t) { return cc.exact_dt(x, t); },
        };
        for (int it = 1; it <= 4; ++it) {
            const double t = p.T * it / 4.0;
            const double gfd = gfd_reference(u_slice, p.scale, p.weight, p.alpha, t, quad_tol);
            const double residual = gfd - p.delta * cc.exact_dxx(x, t) - p.forcing(x, t);
            report.probes.push_back({x, t, residual});
            report.max_residual = std::max(report.max_residual, std::abs(residual));
        }
    }
    return report;
}

}  // namespace gfde
