#include "doctest.h"

#include <cmath>

#include "exterior_gs/curve.hpp"
#include "exterior_gs/profile.hpp"
#include "exterior_gs/shooter.hpp"

using namespace exgs;

namespace {

const RadialSolution& cached_341() {
    static RadialSolution sol = solve_ground_state(ProblemParams{3, 4.0, 1.0, 1.0});
    return sol;
}

} // namespace

TEST_CASE("classify_shot rejects nonpositive slopes") {
    ProblemParams params{3, 4.0, 1.0, 1.0};
    ShooterConfig cfg;
    IntegratorConfig ic = make_integrator_config(params, cfg, 2.0);
    ShotOrientation ori{EventKind::Turnaround, EventKind::ZeroCrossing};
    CHECK_THROWS_AS(classify_shot(0.0, params, ic, ori), ValidationError);
    CHECK_THROWS_AS(classify_shot(-1.0, params, ic, ori), ValidationError);
}

TEST_CASE("ground state at (3, 4, 1): shape and bound invariants") {
    const RadialSolution& sol = cached_341();
    CHECK(sol.slope > 0.0);
    CHECK(sol.u_max > 0.0);
    CHECK(sol.r_bar > 1.0);

    // Interior positivity and the single-maximum sign pattern of u'.
    for (std::size_t i = 1; i < sol.r.size(); ++i) CHECK(sol.u[i] > 0.0);
    int flips = 0;
    for (std::size_t i = 1; i + 1 < sol.r.size(); ++i)
        if ((sol.v[i] > 0.0) != (sol.v[i + 1] > 0.0)) ++flips;
    CHECK(flips == 1);
    for (std::size_t i = 1; i + 1 < sol.r.size(); ++i) {
        if (sol.r[i] < sol.r_bar * 0.999) CHECK(sol.v[i] > 0.0);
        if (sol.r[i] > sol.r_bar * 1.001) CHECK(sol.v[i] < 0.0);
    }

    // Sup-norm bound lambda < u_max^{p-2}, with the calibrated upper window.
    const double ratio = std::pow(sol.u_max, sol.params.p - 2.0) / sol.params.lambda;
    CHECK(ratio > 1.0);
    CHECK(ratio < 30.0);
}

TEST_CASE("restarts from distinct bracket seeds agree to 1e-10 relative") {
    const double s_ref = cached_341().slope;
    for (double seed_scale : {0.37, 3.1, 11.0}) {
        RadialSolution sol =
            solve_ground_state(ProblemParams{3, 4.0, 1.0, 1.0}, {}, s_ref * seed_scale);
        CAPTURE(seed_scale);
        CHECK(std::abs(sol.slope - s_ref) <= 1e-10 * s_ref);
    }
}

TEST_CASE("slopes just off s* classify to opposite sides") {
    const RadialSolution& sol = cached_341();
    ProblemParams params = sol.params;
    ShooterConfig cfg;
    BracketResult br = initial_bracket(params, cfg, sol.slope);
    IntegratorConfig ic = make_integrator_config(params, cfg, br.r_bar_est);
    const ShotClass lo = classify_shot(sol.slope * (1.0 - 1e-6), params, ic, br.orientation);
    const ShotClass hi = classify_shot(sol.slope * (1.0 + 1e-6), params, ic, br.orientation);
    CHECK(lo != hi);
    CHECK(lo != ShotClass::Converged);
    CHECK(hi != ShotClass::Converged);
}

TEST_CASE("warm start converges within the bisection budget") {
    const RadialSolution& sol = cached_341();
    RadialSolution warm =
        solve_ground_state(sol.params, {}, sol.slope * 1.01); // hint within 1%
    CHECK(warm.stats.bisections <= 60);
    CHECK(std::abs(warm.slope - sol.slope) <= 1e-10 * sol.slope);
}

TEST_CASE("sup-norm window holds across the lambda range") {
    for (double lam : {1e-3, 1e-1, 10.0, 1e3}) {
        RadialSolution sol = solve_ground_state(ProblemParams{3, 4.0, lam, 1.0});
        const double ratio = std::pow(sol.u_max, 2.0) / lam;
        CAPTURE(lam);
        CHECK(ratio > 1.0);
        CHECK(ratio < 30.0);
    }
}

TEST_CASE("N=2, p=6 ground state satisfies the Nehari identity") {
    RadialSolution sol = solve_ground_state(ProblemParams{2, 6.0, 1.0, 1.0});
    CHECK(nehari_residual(sol) < 1e-6);
}

TEST_CASE("transform consistency: scaled solve matches a direct solve") {
    // u_{lambda,R}(x) = R^{2/(2-p)} u_{lambda R^2}(x/R) against solving on
    // inner radius R = 2 directly.
    const double R = 2.0;
    RadialSolution base = solve_ground_state(ProblemParams{3, 4.0, 4.0, 1.0});
    RadialSolution mapped = transform_solution(base, R);
    RadialSolution direct = solve_ground_state(ProblemParams{3, 4.0, 1.0, R});
    double sup_diff = 0.0, sup = 0.0;
    const double hi = std::min(mapped.tail_match_radius, direct.tail_match_radius);
    for (double r = R; r <= hi; r += (hi - R) / 2000.0) {
        sup_diff = std::max(sup_diff, std::abs(eval_u(mapped, r) - eval_u(direct, r)));
        sup = std::max(sup, eval_u(direct, r));
    }
    CHECK(sup_diff / sup < 1e-6);
}

TEST_CASE("near-critical exponents are refused as stiff") {
    CHECK_THROWS_AS(solve_ground_state(ProblemParams{3, 6.0 - 1e-4, 1.0, 1.0}), SolverError);
}
