#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "exterior_gs/profile.hpp"
#include "exterior_gs/shooter.hpp"

using namespace exgs;

namespace {

RadialSolution exponential_profile(int n, double r_hi) {
    // u(r) = e^{-(r-1)} on [1, r_hi], N = 3, lambda = 1.
    std::vector<double> r(n), u(n), v(n);
    for (int i = 0; i < n; ++i) {
        r[i] = 1.0 + (r_hi - 1.0) * i / (n - 1);
        u[i] = std::exp(-(r[i] - 1.0));
        v[i] = -u[i];
    }
    const double log_tail = std::log(u[n - 1]) + r_hi + std::log(r_hi);
    return make_profile_solution(ProblemParams{3, 4.0, 1.0, 1.0}, std::move(r), std::move(u),
                                 std::move(v), 1.0, log_tail);
}

const RadialSolution& ground_341() {
    static RadialSolution sol = solve_ground_state(ProblemParams{3, 4.0, 1.0, 1.0});
    return sol;
}

} // namespace

TEST_CASE("unit sphere areas") {
    CHECK(surface_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(surface_area(1), ValidationError);
}

TEST_CASE("mass of the manufactured exponential profile is 5 pi") {
    // 4 pi * int_1^inf e^{-2(r-1)} r^2 dr = 4 pi * 5/4.
    RadialSolution sol = exponential_profile(8001, 30.0);
    QuadratureResult m = mass(sol);
    CHECK(m.value == doctest::Approx(5.0 * M_PI).epsilon(1e-8));
    CHECK(m.tail_fraction < 1e-10);
}

TEST_CASE("mass of the zero profile is 0 and nehari degenerates to NaN") {
    std::vector<double> r = {1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> z(5, 0.0);
    RadialSolution sol =
        make_profile_solution(ProblemParams{3, 4.0, 1.0, 1.0}, r, z, z, 0.0,
                              -std::numeric_limits<double>::infinity());
    CHECK(mass(sol).value == 0.0);
    CHECK(action(sol) == 0.0);
    CHECK(std::isnan(nehari_residual(sol)));
}

TEST_CASE("mass is stable under grid refinement within the estimated error") {
    RadialSolution coarse = exponential_profile(2001, 30.0);
    RadialSolution fine = exponential_profile(4001, 30.0);
    const QuadratureResult mc = mass(coarse);
    const QuadratureResult mf = mass(fine);
    CHECK(std::abs(mc.value - mf.value) <=
          10.0 * (mc.estimated_error + mf.estimated_error) + 1e-13 * mc.value);
}

TEST_CASE("ground-state action is positive and matches the Nehari reduction") {
    const RadialSolution& sol = ground_341();
    const double phi = action(sol);
    CHECK(phi > 0.0);
    // On the Nehari manifold Phi = (1/2 - 1/p) int u^p.
    const double pow_p = surface_area(3) * reduced_moment(sol, Integrand::UPowP, 2).value;
    CHECK(phi == doctest::Approx((0.5 - 0.25) * pow_p).epsilon(1e-6));
}

TEST_CASE("nehari residual: tiny on the solution, order one off it") {
    const RadialSolution& sol = ground_341();
    CHECK(nehari_residual(sol) < 1e-6);

    // Doubling u breaks the identity by |4 - 2^p| / 2^p = 3/4 for p = 4.
    RadialSolution doubled = sol;
    for (auto& x : doubled.u) x *= 2.0;
    for (auto& x : doubled.v) x *= 2.0;
    doubled.u_max *= 2.0;
    doubled.log_tail_coefficient += std::log(2.0);
    doubled.tail_coefficient *= 2.0;
    CHECK(nehari_residual(doubled) == doctest::Approx(0.75).epsilon(1e-5));
}

TEST_CASE("rescaled profile peaks at zero with the rescaled amplitude") {
    const RadialSolution& sol = ground_341();
    SampledProfile om = rescaled_profile(sol);
    const double scale = std::pow(sol.params.lambda, 1.0 / (2.0 - sol.params.p));
    // omega(0) = lambda^{1/(2-p)} u(r_bar).
    double w0 = 0.0;
    for (std::size_t i = 0; i < om.rho.size(); ++i)
        if (std::abs(om.rho[i]) < 1e-9) w0 = om.w[i];
    CHECK(w0 == doctest::Approx(scale * sol.u_max).epsilon(1e-7));
    double w_max = 0.0;
    for (double w : om.w) w_max = std::max(w_max, w);
    CHECK(w_max <= w0 * (1.0 + 1e-6));
}

TEST_CASE("soliton distance shrinks as lambda grows") {
    RadialSolution lo = solve_ground_state(ProblemParams{3, 4.0, 25.0, 1.0});
    RadialSolution hi = solve_ground_state(ProblemParams{3, 4.0, 400.0, 1.0});
    CHECK(soliton_profile_distance(hi) < soliton_profile_distance(lo));
}

TEST_CASE("rescaled second moments approach the soliton mass") {
    // The k = 0 moment of omega tends to the soliton's as lambda grows.
    const double w_mass = soliton_mass_1d(4.0);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double lam : {25.0, 100.0, 400.0}) {
        RadialSolution sol = solve_ground_state(ProblemParams{3, 4.0, lam, 1.0});
        const double gap = std::abs(rescaled_moment(sol, 0) - w_mass);
        CAPTURE(lam);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("mass expansion identity telescopes to quadrature accuracy") {
    CHECK(mass_expansion_relative_deviation(ground_341()) < 1e-8);
    RadialSolution two_d = solve_ground_state(ProblemParams{2, 6.0, 1.0, 1.0});
    CHECK(mass_expansion_relative_deviation(two_d) < 1e-8); // two-term sum for N = 2
    RadialSolution four_d = solve_ground_state(ProblemParams{4, 3.0, 1.0, 1.0});
    CHECK(mass_expansion_relative_deviation(four_d) < 1e-8);
}
