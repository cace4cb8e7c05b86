#include "doctest.h"

#include <cmath>
#include <vector>

#include "exterior_gs/problem.hpp"

using namespace exgs;

TEST_CASE("validate accepts interior exponents and rejects the boundaries") {
    CHECK_NOTHROW(validate(3, 4.0, 1.0, 1.0)); // 2 < 4 < 6
    CHECK_THROWS_AS(validate(3, 6.0, 1.0, 1.0), ValidationError); // p = 2* excluded
    CHECK_NOTHROW(validate(2, 50.0, 1.0, 1.0)); // 2* = inf for N = 2
    CHECK_THROWS_AS(validate(1, 3.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(validate(3, 2.0, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(validate(3, 4.0, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(validate(3, 4.0, -2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(validate(3, 4.0, 1.0, 0.0), ValidationError);
}

TEST_CASE("validation errors carry their kind") {
    auto message_of = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const ValidationError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message_of([] { validate(1, 3.0, 1.0, 1.0); }).find("BadDimension") == 0);
    CHECK(message_of([] { validate(3, 7.0, 1.0, 1.0); }).find("BadExponent") == 0);
    CHECK(message_of([] { validate(3, 4.0, -1.0, 1.0); }).find("BadLambda") == 0);
    CHECK(message_of([] { validate(3, 4.0, 1.0, -1.0); }).find("BadRadius") == 0);
}

TEST_CASE("critical exponents") {
    auto [pc2, ts2] = critical_exponents(2);
    CHECK(pc2 == doctest::Approx(4.0));
    CHECK(std::isinf(ts2));
    auto [pc3, ts3] = critical_exponents(3);
    CHECK(pc3 == doctest::Approx(10.0 / 3.0));
    CHECK(ts3 == doctest::Approx(6.0));
    auto [pc4, ts4] = critical_exponents(4);
    CHECK(pc4 == doctest::Approx(3.0));
    CHECK(ts4 == doctest::Approx(4.0));
}

TEST_CASE("regime classification matches the case split") {
    CHECK(classify_regime(3, 10.0 / 3.0) == Regime::MassSuperOrCritical); // boundary -> (i)
    CHECK(classify_regime(2, 6.0) == Regime::TwoDimP6);
    CHECK(classify_regime(2, 3.0) == Regime::MassSubcritical);
    CHECK(classify_regime(2, 4.0) == Regime::TwoDimP4);
    CHECK(classify_regime(2, 5.0) == Regime::MassSuperOrCritical);
    CHECK(classify_regime(2, 7.0) == Regime::TwoDimPGt6);
    CHECK(classify_regime(3, 3.0) == Regime::MassSubcritical);
    CHECK(classify_regime(4, 3.0) == Regime::MassSuperOrCritical);
}

TEST_CASE("the five regimes partition the valid (N, p) set") {
    // Sweep a grid of valid pairs; classification must be total and the tag
    // must match the defining inequalities point by point.
    for (int N = 2; N <= 6; ++N) {
        const auto ce = critical_exponents(N);
        const double hi = std::isinf(ce.two_star) ? 12.0 : ce.two_star;
        for (double p = 2.0 + 1e-3; p < hi - 1e-9; p += (hi - 2.0) / 97.0) {
            const Regime r = classify_regime(N, p);
            int matched = 0;
            if (N == 2 && std::abs(p - 4.0) <= 1e-12) matched += r == Regime::TwoDimP4;
            else if (N == 2 && std::abs(p - 6.0) <= 1e-12) matched += r == Regime::TwoDimP6;
            else if (N == 2 && p > 6.0) matched += r == Regime::TwoDimPGt6;
            else if (p >= ce.p_c - ((N >= 3) ? 1e-12 : -1e-12) && (N >= 3 || p > 4.0))
                matched += r == Regime::MassSuperOrCritical;
            else matched += r == Regime::MassSubcritical;
            CAPTURE(N);
            CAPTURE(p);
            CHECK(matched == 1);
        }
        CHECK(ce.p_c < ce.two_star);
    }
}
