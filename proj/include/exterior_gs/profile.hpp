#pragma once

#include <vector>

#include "exterior_gs/shooter.hpp"
#include "exterior_gs/soliton.hpp"

namespace exgs {

struct QuadratureResult {
    double value = 0.0;
    double tail_fraction = 0.0;   // share contributed by the analytic tail
    double estimated_error = 0.0; // Richardson estimate on the grid part
};

// Area of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double surface_area(int N);

enum class Integrand { USquared, DuSquared, UPowP };

// Reduced radial moment ∫_R^∞ g(u, u') r^j dr with g per Integrand; grid part
// by composite Simpson, far field in closed form through incomplete gammas.
// j may be negative (the 1/|x|-weighted identities use j = N - 2 >= 0, the
// mass expansion goes down to j = 0).
QuadratureResult reduced_moment(const RadialSolution& sol, Integrand g, double j);

// d = |S^{N-1}| ∫ u^2 r^{N-1} dr.  Throws SolverError("TailDominates") when
// the analytic tail carries more than 1% of the value.
QuadratureResult mass(const RadialSolution& sol);

// Action Phi_lambda = 1/2 ∫ (|∇u|^2 + lambda u^2) - (1/p) ∫ |u|^p.
double action(const RadialSolution& sol);

// Relative Nehari residual |∫|∇u|^2 + lambda ∫u^2 - ∫u^p| / ∫u^p; NaN for the
// zero profile.
double nehari_residual(const RadialSolution& sol);

// omega(rho) = lambda^{1/(2-p)} u(rho/sqrt(lambda) + r_bar) on a uniform grid
// spanning [-min(sqrt(lambda)(r_bar - R), 40), 40].
struct SampledProfile {
    std::vector<double> rho;
    std::vector<double> w;
};
SampledProfile rescaled_profile(const RadialSolution& sol, int n_samples = 2001);

// sup |omega - W| over the sampled window.
double soliton_profile_distance(const RadialSolution& sol, int n_samples = 2001);

// ∫ omega^2 rho^k d rho over the sampled window plus the transformed tail.
double rescaled_moment(const RadialSolution& sol, int k);

// Relative deviation between mass(sol) and the binomial-expansion evaluation
// C sum_k C(N-1,k) lambda^{2/(p-2)-(k+1)/2} r_bar^{N-1-k} ∫ omega^2 rho^k.
// The identity is exact, so the deviation isolates quadrature inconsistency.
double mass_expansion_relative_deviation(const RadialSolution& sol);

// Builds a RadialSolution holding a manufactured profile sampled from
// analytic u, v callables; used by quadrature tests and the FD oracle.
RadialSolution make_profile_solution(const ProblemParams& params, std::vector<double> r,
                                     std::vector<double> u, std::vector<double> v,
                                     double slope, double tail_coefficient_log);

} // namespace exgs
