#include "doctest.h"

#include <cmath>

#include "exterior_gs/radial_ode.hpp"
#include "exterior_gs/soliton.hpp"

using namespace exgs;

TEST_CASE("rhs at the wall and at the stationary soliton value") {
    // u = 0 kills the zeroth-order terms: (du, dv) = (s, -(N-1) s) at r = 1.
    for (int N : {2, 3, 5}) {
        const double s = 0.37;
        OdeDeriv d = rhs({1.0, 0.0, s}, {N, 4.0, 2.5});
        CHECK(d.du == doctest::Approx(s));
        CHECK(d.dv == doctest::Approx(-(N - 1.0) * s));
    }
    // Autonomous limit (dim 1, no drag): the field is stationary at
    // u = lambda^{1/(p-2)}, and at the soliton peak dv equals W''(0).
    {
        const double p = 4.0, lambda = 1.0;
        const double u_eq = std::pow(lambda, 1.0 / (p - 2.0));
        OdeDeriv at_eq = rhs({1e9, u_eq, 0.0}, {1, p, lambda});
        CHECK(at_eq.du == doctest::Approx(0.0));
        CHECK(at_eq.dv == doctest::Approx(0.0).epsilon(1e-14));

        const Soliton w(p);
        OdeDeriv at_peak = rhs({1e9, w.amplitude(), 0.0}, {1, p, lambda});
        CHECK(std::pow(w.amplitude(), p - 2.0) == doctest::Approx(p / 2.0)); // W_max^{p-2} = p/2
        CHECK(at_peak.dv == doctest::Approx(w.second_derivative(0.0)).epsilon(1e-13));
    }
    // Direct arithmetic: (r=2, u=1, v=0), N=3, p=4, lambda=2 -> (0, 2-1).
    {
        OdeDeriv d = rhs({2.0, 1.0, 0.0}, {3, 4.0, 2.0});
        CHECK(d.du == doctest::Approx(0.0));
        CHECK(d.dv == doctest::Approx(1.0));
    }
}

TEST_CASE("energy_autonomous values") {
    CHECK(energy_autonomous(1.0, 0.0, 4.0, 0.0) == doctest::Approx(0.25));
    CHECK(energy_autonomous(0.0, 0.0, 5.0, 1.0) == doctest::Approx(0.0));
    // Soliton peak sits on the zero level: u = sqrt(2), p = 4, mu = 1.
    CHECK(energy_autonomous(std::sqrt(2.0), 0.0, 4.0, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

namespace {

IntegratorConfig basic_config(double r_max) {
    IntegratorConfig c;
    c.r_max = r_max;
    c.u_blowup_cap = 10.0;
    return c;
}

} // namespace

TEST_CASE("zero start stays zero and reports a decayed arrival") {
    auto res = integrate({1.0, 0.0, 0.0}, {3, 4.0, 1.0}, basic_config(20.0));
    CHECK(res.event.kind == EventKind::ReachedRmaxDecayed);
    CHECK(res.u_max == 0.0);
    CHECK(res.event.state.u == 0.0);
}

TEST_CASE("tiny and large slopes terminate in complementary failure events") {
    const RhsParams rp{3, 4.0, 1.0};
    auto tiny = integrate({1.0, 0.0, 1e-8}, rp, basic_config(40.0));
    auto large = integrate({1.0, 0.0, 1e3}, rp, basic_config(40.0));
    const bool tiny_fail = tiny.event.kind == EventKind::ZeroCrossing ||
                           tiny.event.kind == EventKind::Turnaround;
    const bool large_fail = large.event.kind == EventKind::ZeroCrossing ||
                            large.event.kind == EventKind::Turnaround ||
                            large.event.kind == EventKind::Blowup;
    CHECK(tiny_fail);
    CHECK(large_fail);
    CHECK(tiny.event.kind != large.event.kind);
}

TEST_CASE("trajectory abscissae strictly increase and dense output is consistent") {
    auto res = integrate({1.0, 0.0, 0.5}, {3, 4.0, 1.0}, basic_config(30.0));
    const auto& steps = res.trajectory.steps();
    REQUIRE(steps.size() > 2);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        CHECK(steps[i].r1 > steps[i].r0);
        if (i) CHECK(steps[i].r0 == doctest::Approx(steps[i - 1].r1));
    }
    // Dense output agrees with step endpoints.
    const auto& st = steps[steps.size() / 2];
    OdeState left = res.trajectory.eval(st.r0);
    CHECK(left.u == doctest::Approx(st.cu[0]).epsilon(1e-12));
}

TEST_CASE("autonomous limit conserves the first integral") {
    // dim = 1 removes the (N-1)/r drag; E = v^2/2 + |u|^p/p - mu u^2/2 must be
    // flat along the trajectory to within 10 * rel_tol per unit r.
    const double p = 4.0, mu = 1.0;
    IntegratorConfig cfg = basic_config(9.0);
    cfg.u_blowup_cap = 100.0;
    // Start inside the homoclinic loop: bounded oscillation around the center.
    auto res = integrate({1.0, 0.8, 0.0}, {1, p, mu}, cfg);
    const double e0 = energy_autonomous(0.8, 0.0, p, mu);
    double worst = 0.0;
    for (double r = 1.0; r <= res.trajectory.r_end(); r += 0.05) {
        OdeState s = res.trajectory.eval(r);
        worst = std::max(worst, std::abs(energy_autonomous(s.u, s.v, p, mu) - e0));
    }
    CHECK(worst <= 10.0 * cfg.rel_tol * (res.trajectory.r_end() - 1.0) +
                       10.0 * cfg.abs_tol_u);
}

TEST_CASE("integrate reports exactly one event") {
    auto res = integrate({1.0, 0.0, 0.3}, {2, 6.0, 1.0}, basic_config(35.0));
    const bool known =
        res.event.kind == EventKind::ZeroCrossing || res.event.kind == EventKind::Turnaround ||
        res.event.kind == EventKind::Blowup || res.event.kind == EventKind::ReachedRmaxDecayed ||
        res.event.kind == EventKind::ReachedRmaxUndecided;
    CHECK(known);
    CHECK(res.event.r_event <= 35.0 + 1e-9);
    // The trajectory is truncated at the event.
    CHECK(res.trajectory.r_end() == doctest::Approx(res.event.r_event).epsilon(1e-9));
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(integrate({1.0, 0.0, 0.1}, {3, 4.0, 1.0}, IntegratorConfig{}),
                    ValidationError); // r_max unset
}
