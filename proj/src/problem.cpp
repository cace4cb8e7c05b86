#include "exterior_gs/problem.hpp"

#include <cmath>
#include <limits>

namespace exgs {

CriticalExponents critical_exponents(int N) {
    if (N < 2) throw ValidationError("BadDimension: N must be >= 2, got " + std::to_string(N));
    CriticalExponents ce;
    ce.p_c = 2.0 + 4.0 / static_cast<double>(N);
    ce.two_star = (N == 2) ? std::numeric_limits<double>::infinity()
                           : 2.0 * N / static_cast<double>(N - 2);
    return ce;
}

ProblemParams validate(int N, double p, double lambda, double inner_radius) {
    const CriticalExponents ce = critical_exponents(N);
    if (!(p > 2.0) || !(p < ce.two_star))
        throw ValidationError("BadExponent: need 2 < p < 2* (= " +
                              (std::isinf(ce.two_star) ? std::string("inf")
                                                       : std::to_string(ce.two_star)) +
                              " for N = " + std::to_string(N) + "), got p = " + std::to_string(p));
    if (!(lambda > 0.0)) throw ValidationError("BadLambda: lambda must be > 0");
    if (!(inner_radius > 0.0)) throw ValidationError("BadRadius: inner radius must be > 0");
    return ProblemParams{N, p, lambda, inner_radius};
}

Regime classify_regime(int N, double p) {
    validate(N, p, 1.0, 1.0);
    const double p_c = critical_exponents(N).p_c;
    if (N == 2) {
        if (std::abs(p - 4.0) <= kExponentBoundaryTol) return Regime::TwoDimP4;
        if (std::abs(p - 6.0) <= kExponentBoundaryTol) return Regime::TwoDimP6;
        if (p > 6.0) return Regime::TwoDimPGt6;
        if (p > 4.0) return Regime::MassSuperOrCritical;
        return Regime::MassSubcritical;
    }
    // N >= 3: the boundary p = 2 + 4/N belongs to the super-or-critical case.
    if (p >= p_c - kExponentBoundaryTol) return Regime::MassSuperOrCritical;
    return Regime::MassSubcritical;
}

const char* regime_tag(Regime r) {
    switch (r) {
        case Regime::MassSuperOrCritical: return "MASS_SUPER_OR_CRITICAL";
        case Regime::TwoDimP6: return "TWO_D_P6";
        case Regime::TwoDimPGt6: return "TWO_D_P_GT6";
        case Regime::TwoDimP4: return "TWO_D_P4";
        case Regime::MassSubcritical: return "MASS_SUBCRITICAL";
    }
    return "UNKNOWN";
}

} // namespace exgs
