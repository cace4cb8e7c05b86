#pragma once

#include <span>
#include <vector>

#include "exterior_gs/shooter.hpp"

namespace exgs {

// Uniform finite-difference grid on [r_in, r_out], Dirichlet at both ends.
struct FdGrid {
    double r_in = 1.0;
    double r_out = 40.0;
    int n = 4001; // node count including both boundaries, n >= 200
};

FdGrid make_fd_grid(const ProblemParams& params, double r_bar_est, int n = 4001);

struct FdConfig {
    int max_newton = 80;
    int max_backtracks = 40;
    double f_tol_scale = 1e-10; // converged when ||F||_inf < scale * lambda^{(p-1)/(p-2)}
};

// Starting profile: the rescaled soliton bump centered at r_bar_est, brought
// to zero at the inner wall.
std::vector<double> soliton_initial_guess(const ProblemParams& params, const FdGrid& grid,
                                          double r_bar_est, double amplitude_factor = 1.0);

// Damped Newton on the central-difference discretization.  Shares no code
// path with the shooter.  Throws SolverError ("NewtonDiverged",
// "NegativeSolution") on failure.
RadialSolution fd_solve(const ProblemParams& params, const FdGrid& grid,
                        std::span<const double> initial_guess, const FdConfig& cfg = {});

// Convenience overload: deterministic retry ladder over soliton guesses.
RadialSolution fd_solve(const ProblemParams& params, const FdGrid& grid, const FdConfig& cfg = {});

// Plain composite-Simpson mass on the FD nodes (no tail machinery); used by
// the grid-convergence checks.
double fd_mass(const ProblemParams& params, const FdGrid& grid, std::span<const double> u);

struct CompareReport {
    double rel_linf = 0.0;
    double rel_l2 = 0.0;
    double rel_mass_gap = 0.0;
};

// Discrepancies between two solutions of the same problem after interpolating
// both to a common uniform grid.  Throws ValidationError ("ParamMismatch").
CompareReport compare(const RadialSolution& a, const RadialSolution& b);

} // namespace exgs
