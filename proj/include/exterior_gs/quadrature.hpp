#pragma once

#include <span>
#include <vector>

namespace exgs {

// Dimensionless factor H in Gamma(s, x) = e^{-x} x^s H(s, x), computed with a
// modified Lentz continued fraction.  Valid for x > s + 1 (the only regime the
// tail moments ever need; x is at least ~10 there).
double gammainc_upper_factor(double s, double x);

// Upper incomplete gamma Gamma(s, x), same domain restriction.
double gammainc_upper(double s, double x);

// ∫_{r0}^∞ e^{-beta r} r^q dr, assembled in log space so that huge tail
// amplitudes cannot overflow intermediates.  log_amp is added to the exponent:
// the return value is exp(log_amp) * ∫ e^{-beta r} r^q dr.
double exp_tail_moment(double log_amp, double beta, double q, double r0);

// Composite quadratic (Simpson-type) rule on a possibly non-uniform grid.
// Consumes points in triples; a leftover final interval is handled by the
// trapezoid rule, so grids should be built with an even interval count.
double simpson_nonuniform(std::span<const double> x, std::span<const double> f);

// Same integral with a Richardson-style error estimate from a coarsened pass.
struct GridIntegral {
    double value;
    double estimated_error;
};
GridIntegral simpson_nonuniform_with_error(std::span<const double> x, std::span<const double> f);

} // namespace exgs
