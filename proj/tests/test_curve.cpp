#include "doctest.h"

#include <cmath>
#include <vector>

#include "exterior_gs/curve.hpp"
#include "exterior_gs/profile.hpp"

using namespace exgs;

namespace {

MassCurve synthetic_curve(const std::vector<double>& lambdas, const std::vector<double>& ds) {
    MassCurve c;
    c.N = 3;
    c.p = 4.0;
    c.R = 1.0;
    c.lambda_lo = lambdas.front();
    c.lambda_hi = lambdas.back();
    c.n_points_requested = static_cast<int>(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        CurvePoint pt;
        pt.lambda = lambdas[i];
        pt.d = ds[i];
        c.points.push_back(pt);
    }
    return c;
}

} // namespace

TEST_CASE("trace_curve validates its window") {
    CHECK_THROWS_AS(trace_curve(3, 4.0, 1.0, 1.0, 0.5, 10), ValidationError);
    CHECK_THROWS_AS(trace_curve(3, 4.0, 1.0, 0.5, 2.0, 4), ValidationError);
}

TEST_CASE("a short continuation sweep passes every diagnostics gate") {
    MassCurve curve = trace_curve(3, 4.0, 1.0, 0.25, 16.0, 9);
    CHECK(curve.failures.empty());
    REQUIRE(curve.points.size() == 9);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const CurvePoint& pt = curve.points[i];
        CHECK(pt.d > 0.0);
        CHECK(std::isfinite(pt.d));
        CHECK(pt.diagnostics.nehari_res < 1e-6);
        CHECK(pt.diagnostics.pohozaev_full_res < 1e-4);
        if (i) CHECK(pt.lambda > curve.points[i - 1].lambda);
    }
}

TEST_CASE("parallel refine pass reproduces the sequential sweep") {
    MassCurve seq = trace_curve(3, 4.0, 1.0, 0.5, 8.0, 8);
    TraceConfig cfg;
    cfg.refine_pass = true;
    cfg.jobs = 3;
    MassCurve par = trace_curve(3, 4.0, 1.0, 0.5, 8.0, 8, cfg);
    REQUIRE(par.points.size() == seq.points.size());
    for (std::size_t i = 0; i < seq.points.size(); ++i)
        CHECK(par.points[i].d == doctest::Approx(seq.points[i].d).epsilon(1e-9));
}

TEST_CASE("refine_extremum recovers a synthetic parabola vertex") {
    MassCurve c = synthetic_curve({1.0, 2.1, 3.0}, {2.21, 1.0121, 2.0});
    auto [lam, eta] = refine_extremum(c, {}, 1e-8,
                                      [](double l) { return (l - 2.0) * (l - 2.0) + 1.0; });
    CHECK(lam == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(eta == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("refine_extremum refuses monotone data") {
    MassCurve c = synthetic_curve({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(refine_extremum(c, {}, 1e-6, [](double l) { return l; }), SolverError);
}

TEST_CASE("count_solutions on a V-shaped curve") {
    MassCurve c = synthetic_curve({1.0, 2.0, 3.0, 4.0, 5.0}, {5.0, 3.0, 1.0, 3.0, 5.0});
    CHECK(count_solutions(c, 2.0).count() == 2);
    CHECK(count_solutions(c, 0.5).count() == 0);

    CrossingReport tangent = count_solutions(c, 1.0);
    REQUIRE(tangent.count() == 1);
    CHECK(tangent.crossings[0].kind == CrossingKind::Tangent);
    CHECK(tangent.crossings[0].lambda == doctest::Approx(3.0));

    // Level through both endpoints: two boundary tangencies.
    CrossingReport ends = count_solutions(c, 5.0);
    CHECK(ends.count() == 2);
    CHECK(ends.crossings[0].kind == CrossingKind::Tangent);
    CHECK(ends.crossings[1].kind == CrossingKind::Tangent);
}

TEST_CASE("count_solutions flags a touch run crossed transversally") {
    MassCurve c = synthetic_curve({1.0, 2.0, 3.0, 4.0}, {2.0, 1.0, 1.0, 0.5});
    CrossingReport rep = count_solutions(c, 1.0, 1e-9);
    REQUIRE(rep.count() == 1);
    CHECK(rep.crossings[0].kind == CrossingKind::Transversal);
}

TEST_CASE("stability labels follow the sign of d'") {
    MassCurve c = synthetic_curve({1.0, 2.0, 4.0, 8.0, 16.0}, {8.0, 4.0, 2.0, 4.0, 8.0});
    auto labels = stability_classify(c);
    CHECK(labels[0] == StabilityLabel::Unstable);
    CHECK(labels[1] == StabilityLabel::Unstable);
    CHECK(labels[2] == StabilityLabel::Indeterminate); // symmetric bracket at the minimum
    CHECK(labels[3] == StabilityLabel::Stable);
    CHECK(labels[4] == StabilityLabel::Stable);

    MassCurve flat = synthetic_curve({1.0, 2.0, 4.0}, {3.0, 3.0, 3.0});
    for (auto l : stability_classify(flat)) CHECK(l == StabilityLabel::Indeterminate);
}

TEST_CASE("threshold rescaling law") {
    CHECK(rescale_threshold(2.5, 3, 4.0, 1.0) == doctest::Approx(2.5));
    CHECK(rescale_threshold(2.5, 3, 4.0, 2.0) == doctest::Approx(5.0)); // exponent 3 - 2 = 1
    for (double R : {0.5, 2.0, 7.0}) // mass-critical: exponent 0
        CHECK(rescale_threshold(2.5, 3, 10.0 / 3.0, R) == doctest::Approx(2.5));
}

TEST_CASE("transform_solution: identity at R = 1 and exact mass scaling") {
    RadialSolution base = solve_ground_state(ProblemParams{3, 4.0, 4.0, 1.0});
    RadialSolution same = transform_solution(base, 1.0);
    CHECK(same.slope == doctest::Approx(base.slope).epsilon(1e-14));
    CHECK(same.u_max == doctest::Approx(base.u_max).epsilon(1e-14));

    RadialSolution mapped = transform_solution(base, 2.0);
    CHECK(mapped.params.lambda == doctest::Approx(1.0));
    CHECK(mapped.params.inner_radius == doctest::Approx(2.0));
    // Mass transforms by R^{N - 4/(p-2)} = 2.
    CHECK(mass(mapped).value == doctest::Approx(2.0 * mass(base).value).epsilon(1e-9));
}

TEST_CASE("insert_point keeps ordering and replaces duplicates") {
    MassCurve c = synthetic_curve({1.0, 3.0}, {5.0, 7.0});
    CurvePoint pt;
    pt.lambda = 2.0;
    pt.d = 6.0;
    c.insert_point(pt);
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[1].lambda == 2.0);
    pt.d = 6.5;
    c.insert_point(pt);
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[1].d == 6.5);
}
