#pragma once

#include <string>

#include "exterior_gs/errors.hpp"

namespace exgs {

// One instance of -Δu + λu = u^{p-1} on the exterior of the ball of radius
// inner_radius, with zero Dirichlet data on the sphere and decay at infinity.
struct ProblemParams {
    int N = 3;                 // space dimension, N >= 2
    double p = 4.0;            // nonlinearity exponent, 2 < p < two_star(N)
    double lambda = 1.0;       // spectral parameter, > 0
    double inner_radius = 1.0; // radius of the excluded ball, > 0
};

// The five exponent regimes that control existence/multiplicity of
// normalized solutions.  Mutually exclusive and exhaustive over valid (N, p).
enum class Regime {
    MassSuperOrCritical, // N >= 3 and 2 + 4/N <= p < 2*, or N = 2 and 4 < p < 6
    TwoDimP6,            // N = 2, p = 6
    TwoDimPGt6,          // N = 2, p > 6
    TwoDimP4,            // N = 2, p = 4
    MassSubcritical,     // 2 < p < 2 + 4/N
};

struct CriticalExponents {
    double p_c;      // mass-critical exponent 2 + 4/N
    double two_star; // Sobolev-critical exponent 2N/(N-2), +inf when N = 2
};

// Tolerance for exponent values that arrive from arithmetic rather than
// direct user input; regime boundaries themselves are exact.
inline constexpr double kExponentBoundaryTol = 1e-12;

CriticalExponents critical_exponents(int N);

// Throws ValidationError (BadDimension / BadExponent / BadLambda / BadRadius).
ProblemParams validate(int N, double p, double lambda, double inner_radius = 1.0);

// Requires valid (N, p); throws the same validation errors otherwise.
Regime classify_regime(int N, double p);

// Spec-facing tag, e.g. "MASS_SUPER_OR_CRITICAL".
const char* regime_tag(Regime r);

} // namespace exgs
