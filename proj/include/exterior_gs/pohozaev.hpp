#pragma once

#include "exterior_gs/profile.hpp"
#include "exterior_gs/shooter.hpp"

namespace exgs {

// Residuals of the integral identities a ground state must satisfy, evaluated
// from the reduced radial integrals.  All residuals are relative to the
// largest participating term, so they stay meaningful across the lambda range.
struct DiagnosticsReport {
    double nehari_res = 0.0;
    double pohozaev_full_res = 0.0; // the boundary-free combined identity
    double boundary_res_a18 = 0.0;  // multiplier x . grad u
    double boundary_res_a20 = 0.0;  // multiplier (x/|x|) . grad u
    double inequality_b9_slack = 0.0; // at eps = 0.1
    double action = 0.0;
    double profile_distance = 0.0;  // sup |omega - W|
};

// Relative residual of the combined identity.  At inner radius 1 the boundary
// terms cancel exactly; at general R the mismatch ½|S^{N-1}| s^2 R^{N-1}(R-1)
// is carried on the right-hand side.
double pohozaev_full_residual(const RadialSolution& sol);

// Residuals of the two boundary identities; the right-hand sides are
// ½|S^{N-1}| s^2 R^N and ½|S^{N-1}| s^2 R^{N-1} respectively (equal at R = 1).
std::pair<double, double> boundary_identity_residuals(const RadialSolution& sol);

// Slack of (N-2-eps)∫|∇u|^2 + (N-eps) lambda ∫u^2 <= (2N/p)∫u^p;
// positive means the inequality holds.
double supercritical_inequality_slack(const RadialSolution& sol, double eps);

// Slack of the unconditional direction (N-2)∫|∇u|^2 + N lambda ∫u^2 >= (2N/p)∫u^p,
// equal to twice the a18 boundary term; nonnegative up to quadrature error.
double c8_slack(const RadialSolution& sol);

// Concentration ratios (∫ g r^{N-2}) / (∫ g r^{N-1}) for g = u^2 and |∇u|^2;
// both decrease along lambda -> 0 and lambda -> infinity families.
std::pair<double, double> weight_concentration_ratios(const RadialSolution& sol);

DiagnosticsReport run_diagnostics(const RadialSolution& sol);

} // namespace exgs
