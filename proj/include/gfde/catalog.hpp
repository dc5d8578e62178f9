#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfde/analysis.hpp"

namespace gfde {

/// Built-in benchmark cases: five manufactured-solution diffusion problems
/// (ex1..ex5) and two operator-approximation tests (op1, op2).
enum class CaseId { Ex1, Ex2, Ex3, Ex4, Ex5, Op1, Op2 };

std::vector<CaseId> all_cases();
std::optional<CaseId> parse_case_id(std::string_view text);
std::string to_string(CaseId id);
bool is_operator_case(CaseId id);
double default_alpha(CaseId id);
std::string case_summary(CaseId id);

struct CatalogCase {
    CaseId id = CaseId::Ex1;
    GfdeProblem problem;  // always carries an exact solution
    std::function<double(double, double)> exact_dt;   // du/dt
    std::function<double(double, double)> exact_dxx;  // d2u/dx2
};

/// Fully specified PDE case for ex1..ex5 (throws DomainError for op ids).
/// ex4 ships two forcing variants: the default is consistent with the
/// exact solution; the other form uses the upper-tail gamma complement and
/// is not (use `verify_case_consistency` to see the residual).
CatalogCase get_case(CaseId id, double alpha, bool ex4_printed_forcing = false);

/// Operator test op1/op2 (throws DomainError for PDE ids); alpha defaults
/// to 0.5 for op1 and 0.2 for op2.
OperatorCase get_operator_case(CaseId id, std::optional<double> alpha = std::nullopt);

struct ProbeResidual {
    double x = 0.0, t = 0.0;
    double residual = 0.0;
};

struct ConsistencyReport {
    std::vector<ProbeResidual> probes;
    double max_residual = 0.0;
};

/// Manufactured-solution self-check: at a lattice of interior probe points
/// evaluates GFD(exact) - delta * exact_xx - f using the quadrature
/// reference.  A consistent case has max residual at quadrature-tolerance
/// level.
ConsistencyReport verify_case_consistency(const CatalogCase& cc, double quad_tol = 1e-10);

}  // namespace gfde
