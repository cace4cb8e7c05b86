#include "exterior_gs/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace exgs {

double gammainc_upper_factor(double s, double x) {
    if (!(x > s + 1.0))
        throw std::domain_error("gammainc_upper_factor: continued fraction needs x > s + 1");
    // Lentz's method on the standard continued fraction for Gamma(s, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 4.0 * std::numeric_limits<double>::epsilon()) return h;
    }
    throw std::runtime_error("gammainc_upper_factor: continued fraction did not converge");
}

double gammainc_upper(double s, double x) {
    return std::exp(-x + s * std::log(x)) * gammainc_upper_factor(s, x);
}

double exp_tail_moment(double log_amp, double beta, double q, double r0) {
    // ∫_{r0}^∞ e^{-beta r} r^q dr = beta^{-(q+1)} Gamma(q+1, beta r0)
    //                             = e^{-beta r0} r0^{q+1} H(q+1, beta r0).
    const double s = q + 1.0;
    const double x = beta * r0;
    const double h = gammainc_upper_factor(s, x);
    const double log_val = log_amp - x + s * std::log(r0) + std::log(h);
    return std::exp(log_val);
}

namespace {

// Exact integral of the parabola through (x0,f0), (x1,f1), (x2,f2).
double parabola_integral(double x0, double x1, double x2, double f0, double f1, double f2) {
    const double h0 = x1 - x0;
    const double h1 = x2 - x1;
    const double h = h0 + h1;
    return (h / 6.0) * ((2.0 - h1 / h0) * f0 + (h * h) / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2);
}

double simpson_pass(std::span<const double> x, std::span<const double> f, std::size_t stride) {
    const std::size_t n = x.size();
    double total = 0.0;
    std::size_t i = 0;
    while (i + 2 * stride < n) {
        total += parabola_integral(x[i], x[i + stride], x[i + 2 * stride],
                                   f[i], f[i + stride], f[i + 2 * stride]);
        i += 2 * stride;
    }
    // Leftover tail: fall back to trapezoids over the remaining points.
    while (i + stride < n) {
        total += 0.5 * (x[i + stride] - x[i]) * (f[i] + f[i + stride]);
        i += stride;
    }
    if (i < n - 1) total += 0.5 * (x[n - 1] - x[i]) * (f[i] + f[n - 1]);
    return total;
}

} // namespace

double simpson_nonuniform(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size()) throw std::invalid_argument("simpson_nonuniform: size mismatch");
    if (x.size() < 2) return 0.0;
    return simpson_pass(x, f, 1);
}

GridIntegral simpson_nonuniform_with_error(std::span<const double> x, std::span<const double> f) {
    GridIntegral out{simpson_nonuniform(x, f), 0.0};
    if (x.size() >= 5) {
        const double coarse = simpson_pass(x, f, 2);
        out.estimated_error = std::abs(out.value - coarse) / 15.0;
    }
    return out;
}

} // namespace exgs
