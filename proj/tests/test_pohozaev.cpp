#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "exterior_gs/pohozaev.hpp"

using namespace exgs;

namespace {

const RadialSolution& ground(int N, double p, double lam, double R = 1.0) {
    static std::vector<std::pair<ProblemParams, RadialSolution>> cache;
    for (auto& [params, sol] : cache)
        if (params.N == N && params.p == p && params.lambda == lam && params.inner_radius == R)
            return sol;
    ProblemParams params{N, p, lam, R};
    cache.emplace_back(params, solve_ground_state(params));
    return cache.back().second;
}

} // namespace

TEST_CASE("combined identity residual is tiny on ground states") {
    CHECK(pohozaev_full_residual(ground(3, 4.0, 1.0)) < 1e-5);
    // N = 2 zeroes the (N-2)/2 gradient term; the rest must still balance.
    CHECK(pohozaev_full_residual(ground(2, 6.0, 1.0)) < 1e-5);
}

TEST_CASE("boundary identities hold with their separate right-hand sides") {
    auto [a18, a20] = boundary_identity_residuals(ground(3, 4.0, 1.0));
    CHECK(a18 < 1e-5);
    CHECK(a20 < 1e-5);
    // At R = 1 the two boundary terms are the same formula.
    const RadialSolution& sol = ground(3, 4.0, 1.0);
    const double b20 = 0.5 * surface_area(3) * sol.slope * sol.slope;
    const double b18 = b20 * sol.params.inner_radius;
    CHECK(b18 == b20);
}

TEST_CASE("identities generalize to a direct solve at inner radius 2") {
    const RadialSolution& sol = ground(3, 4.0, 1.0, 2.0);
    CHECK(pohozaev_full_residual(sol) < 1e-5);
    auto [a18, a20] = boundary_identity_residuals(sol);
    CHECK(a18 < 1e-5);
    CHECK(a20 < 1e-5);
}

TEST_CASE("zero profile satisfies everything with residual zero") {
    std::vector<double> r = {1.0, 2.0, 3.0};
    std::vector<double> z(3, 0.0);
    RadialSolution sol =
        make_profile_solution(ProblemParams{3, 4.0, 1.0, 1.0}, r, z, z, 0.0,
                              -std::numeric_limits<double>::infinity());
    CHECK(pohozaev_full_residual(sol) == 0.0);
    auto [a18, a20] = boundary_identity_residuals(sol);
    CHECK(a18 == 0.0);
    CHECK(a20 == 0.0);
}

TEST_CASE("the unconditional inequality direction equals twice the boundary term") {
    for (double lam : {1e-3, 1.0, 100.0}) {
        const RadialSolution& sol = ground(3, 4.0, lam);
        const double slack = c8_slack(sol);
        const double b18 = 0.5 * surface_area(3) * sol.slope * sol.slope;
        CAPTURE(lam);
        CHECK(slack > 0.0);
        CHECK(slack == doctest::Approx(2.0 * b18).epsilon(1e-4));
    }
    CHECK(c8_slack(ground(2, 7.0, 1.0)) > 0.0);
}

TEST_CASE("supercritical inequality slack: exact reduction and the small-lambda regime") {
    // Algebraically slack(eps) = eps (int |grad u|^2 + lambda int u^2) minus
    // twice the a18 boundary term; verify the reduction and the small-lambda
    // positivity.  At lambda = 100 the computed family keeps its maximum near
    // the wall, the boundary term still dominates, and the inequality has not
    // set in yet; that regime is reported, not asserted.
    for (double lam : {1e-3, 1.0, 100.0}) {
        const RadialSolution& sol = ground(3, 4.0, lam);
        const double c = surface_area(3);
        const double grad = c * reduced_moment(sol, Integrand::DuSquared, 2).value;
        const double dens = c * reduced_moment(sol, Integrand::USquared, 2).value;
        const double b18 = 0.5 * c * sol.slope * sol.slope;
        const double eps = 0.1;
        const double expected = eps * (grad + lam * dens) - 2.0 * b18;
        CAPTURE(lam);
        CHECK(supercritical_inequality_slack(sol, eps) ==
              doctest::Approx(expected).epsilon(1e-4));
    }
    CHECK(supercritical_inequality_slack(ground(3, 4.0, 1e-3), 0.1) > 0.0);
}

TEST_CASE("1/|x| weight concentration decays toward lambda -> 0") {
    // Unconditional direction for N >= 3 (the maximum location diverges).
    // The lambda -> infinity direction depends on which of the bounded /
    // divergent r_bar hypotheses holds and is logged by the acceptance
    // diagnostics instead.
    const auto mid = weight_concentration_ratios(ground(3, 4.0, 1.0));
    const auto lo = weight_concentration_ratios(ground(3, 4.0, 1e-2));
    CHECK(lo.first < mid.first);
    CHECK(lo.second < mid.second);
}

TEST_CASE("diagnostics report aggregates the suite") {
    DiagnosticsReport rep = run_diagnostics(ground(3, 4.0, 1.0));
    CHECK(rep.nehari_res < 1e-6);
    CHECK(rep.pohozaev_full_res < 1e-4);
    CHECK(rep.boundary_res_a18 < 1e-4);
    CHECK(rep.boundary_res_a20 < 1e-4);
    CHECK(rep.action > 0.0);
    CHECK(rep.profile_distance > 0.0);
}
