#include "doctest.h"

#include <cmath>
#include <vector>

#include "exterior_gs/fd_oracle.hpp"
#include "exterior_gs/pohozaev.hpp"
#include "exterior_gs/profile.hpp"

using namespace exgs;

TEST_CASE("FD Newton agrees with the shooter at (3, 4, 1)") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    RadialSolution shot = solve_ground_state(params);
    FdGrid grid = make_fd_grid(params, shot.r_bar);
    RadialSolution fd = fd_solve(params, grid);
    CompareReport rep = compare(shot, fd);
    CHECK(rep.rel_linf < 1e-3);
    CHECK(rep.rel_l2 < 1e-3);
    CHECK(rep.rel_mass_gap < 1e-3);
}

TEST_CASE("FD solution passes the identity gates at its own accuracy") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    FdGrid grid = make_fd_grid(params, 1.9, 6001);
    RadialSolution fd = fd_solve(params, grid);
    CHECK(nehari_residual(fd) < 1e-4);
    CHECK(pohozaev_full_residual(fd) < 1e-4);
}

TEST_CASE("second-order grid convergence of the FD mass") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    const double r_bar = 1.9;
    double masses[3];
    int idx = 0;
    for (int n : {1001, 2001, 4001}) {
        FdGrid grid = make_fd_grid(params, r_bar, n);
        RadialSolution fd = fd_solve(params, grid);
        masses[idx++] = mass(fd).value;
    }
    const double ratio = (masses[0] - masses[1]) / (masses[1] - masses[2]);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("the zero initial guess is rejected as the trivial state") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    FdGrid grid = make_fd_grid(params, 1.9, 801);
    std::vector<double> zeros(grid.n, 0.0);
    CHECK_THROWS_WITH_AS(fd_solve(params, grid, zeros), doctest::Contains("trivial"),
                         SolverError);
}

TEST_CASE("compare: identical inputs give zero discrepancies") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    FdGrid grid = make_fd_grid(params, 1.9, 1201);
    RadialSolution fd = fd_solve(params, grid);
    CompareReport rep = compare(fd, fd);
    CHECK(rep.rel_linf == 0.0);
    CHECK(rep.rel_l2 == 0.0);
    CHECK(rep.rel_mass_gap == 0.0);
}

TEST_CASE("compare rejects mismatched problems") {
    ProblemParams a{3, 4.0, 1.0, 1.0};
    ProblemParams b{3, 4.0, 2.0, 1.0};
    FdGrid ga = make_fd_grid(a, 1.9, 801);
    FdGrid gb = make_fd_grid(b, 1.7, 801);
    RadialSolution sa = fd_solve(a, ga);
    RadialSolution sb = fd_solve(b, gb);
    CHECK_THROWS_AS(compare(sa, sb), ValidationError);
}

TEST_CASE("FD handles the two-dimensional sextic case") {
    ProblemParams params{2, 6.0, 1.0, 1.0};
    RadialSolution shot = solve_ground_state(params);
    FdGrid grid = make_fd_grid(params, shot.r_bar);
    RadialSolution fd = fd_solve(params, grid);
    CompareReport rep = compare(shot, fd);
    CHECK(rep.rel_linf < 1e-3);
    CHECK(rep.rel_mass_gap < 1e-3);
}
