#include "exterior_gs/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exterior_gs/quadrature.hpp"

namespace exgs {

double surface_area(int N) {
    if (N < 2) throw ValidationError("BadDimension: N must be >= 2");
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

namespace {

// ∫_{r0}^∞ exp(log_amp) e^{-beta r} r^q dr with a numeric fallback when the
// continued fraction's x > s + 1 domain is not comfortably satisfied.
double tail_moment_safe(double log_amp, double beta, double q, double r0) {
    if (std::isinf(log_amp) && log_amp < 0.0) return 0.0;
    if (beta * r0 > q + 3.0) return exp_tail_moment(log_amp, beta, q, r0);
    const int n = 4001;
    const double span = 60.0 / beta;
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
        x[i] = r0 + span * i / (n - 1);
        f[i] = std::exp(log_amp - beta * x[i] + q * std::log(x[i]));
    }
    return simpson_nonuniform(x, f);
}

struct TailSpec {
    double log_amp;
    double beta;
};

TailSpec tail_spec(const RadialSolution& sol, Integrand g) {
    const double sl = std::sqrt(sol.params.lambda);
    switch (g) {
        case Integrand::USquared: return {2.0 * sol.log_tail_coefficient, 2.0 * sl};
        case Integrand::DuSquared: return {2.0 * sol.log_tail_coefficient, 2.0 * sl};
        case Integrand::UPowP:
            return {sol.params.p * sol.log_tail_coefficient, sol.params.p * sl};
    }
    return {0.0, 0.0};
}

double tail_integral(const RadialSolution& sol, Integrand g, double j) {
    if (sol.u.empty() || !(sol.u.back() > 0.0)) return 0.0;
    const int N = sol.params.N;
    const double r0 = sol.tail_match_radius;
    const TailSpec ts = tail_spec(sol, g);
    switch (g) {
        case Integrand::USquared:
            return tail_moment_safe(ts.log_amp, ts.beta, j - (N - 1), r0);
        case Integrand::UPowP:
            return tail_moment_safe(ts.log_amp, ts.beta, j - 0.5 * sol.params.p * (N - 1), r0);
        case Integrand::DuSquared: {
            // u' = u (-sqrt(lambda) - (N-1)/(2r)) in the far field.
            const double lam = sol.params.lambda;
            const double sl = std::sqrt(lam);
            const double c1 = N - 1.0;
            return lam * tail_moment_safe(ts.log_amp, ts.beta, j - (N - 1), r0) +
                   sl * c1 * tail_moment_safe(ts.log_amp, ts.beta, j - N, r0) +
                   0.25 * c1 * c1 * tail_moment_safe(ts.log_amp, ts.beta, j - (N + 1), r0);
        }
    }
    return 0.0;
}

double integrand_value(const RadialSolution& sol, Integrand g, std::size_t i) {
    switch (g) {
        case Integrand::USquared: return sol.u[i] * sol.u[i];
        case Integrand::DuSquared: return sol.v[i] * sol.v[i];
        case Integrand::UPowP: return std::pow(std::abs(sol.u[i]), sol.params.p);
    }
    return 0.0;
}

} // namespace

QuadratureResult reduced_moment(const RadialSolution& sol, Integrand g, double j) {
    const std::size_t n = sol.r.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = integrand_value(sol, g, i) * std::pow(sol.r[i], j);
    const GridIntegral grid = simpson_nonuniform_with_error(sol.r, f);
    const double tail = tail_integral(sol, g, j);
    QuadratureResult out;
    out.value = grid.value + tail;
    out.estimated_error = grid.estimated_error;
    out.tail_fraction = (out.value != 0.0) ? std::abs(tail / out.value) : 0.0;
    return out;
}

QuadratureResult mass(const RadialSolution& sol) {
    QuadratureResult m = reduced_moment(sol, Integrand::USquared, sol.params.N - 1);
    const double c = surface_area(sol.params.N);
    m.value *= c;
    m.estimated_error *= c;
    if (m.tail_fraction > 0.01)
        throw SolverError("TailDominates: analytic tail carries " +
                          std::to_string(m.tail_fraction * 100.0) +
                          "% of the mass; r_max too small");
    return m;
}

double action(const RadialSolution& sol) {
    const int N = sol.params.N;
    const double c = surface_area(N);
    const double grad = reduced_moment(sol, Integrand::DuSquared, N - 1).value;
    const double dens = reduced_moment(sol, Integrand::USquared, N - 1).value;
    const double pow_p = reduced_moment(sol, Integrand::UPowP, N - 1).value;
    return c * (0.5 * (grad + sol.params.lambda * dens) - pow_p / sol.params.p);
}

double nehari_residual(const RadialSolution& sol) {
    const int N = sol.params.N;
    const double grad = reduced_moment(sol, Integrand::DuSquared, N - 1).value;
    const double dens = reduced_moment(sol, Integrand::USquared, N - 1).value;
    const double pow_p = reduced_moment(sol, Integrand::UPowP, N - 1).value;
    if (pow_p == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(grad + sol.params.lambda * dens - pow_p) / pow_p;
}

SampledProfile rescaled_profile(const RadialSolution& sol, int n_samples) {
    const double lam = sol.params.lambda;
    const double sl = std::sqrt(lam);
    const double scale = std::pow(lam, 1.0 / (2.0 - sol.params.p));
    double left = -std::min(sl * (sol.r_bar - sol.params.inner_radius), 40.0);
    const double right = 40.0;
    // Snap the left edge onto the sample lattice so rho = 0 is hit exactly
    // (the peak sample anchors the sup-distance checks).
    const double step = (right - left) / (n_samples - 1);
    left = -step * std::round(-left / step);
    SampledProfile out;
    out.rho.resize(n_samples);
    out.w.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double rho = left + step * i;
        out.rho[i] = rho;
        out.w[i] = scale * eval_u(sol, rho / sl + sol.r_bar);
    }
    return out;
}

double soliton_profile_distance(const RadialSolution& sol, int n_samples) {
    const SampledProfile om = rescaled_profile(sol, n_samples);
    const Soliton w(sol.params.p);
    double sup = 0.0;
    for (std::size_t i = 0; i < om.rho.size(); ++i)
        sup = std::max(sup, std::abs(om.w[i] - w(om.rho[i])));
    return sup;
}

namespace {

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / i;
    return out;
}

// ∫ u^2 (r - r_bar)^k dr, grid plus tail, the tail expanded binomially into
// pure power moments so the mass-expansion identity telescopes exactly.
double centered_u2_moment(const RadialSolution& sol, int k) {
    const std::size_t n = sol.r.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = sol.u[i] * sol.u[i] * std::pow(sol.r[i] - sol.r_bar, k);
    double value = simpson_nonuniform(sol.r, f);
    if (!sol.u.empty() && sol.u.back() > 0.0) {
        const TailSpec ts = tail_spec(sol, Integrand::USquared);
        for (int j = 0; j <= k; ++j) {
            const double m2 = tail_moment_safe(ts.log_amp, ts.beta,
                                               j - (sol.params.N - 1), sol.tail_match_radius);
            value += binomial(k, j) * std::pow(-sol.r_bar, k - j) * m2;
        }
    }
    return value;
}

} // namespace

double rescaled_moment(const RadialSolution& sol, int k) {
    const double lam = sol.params.lambda;
    const double expo = 2.0 / (2.0 - sol.params.p) + 0.5 * (k + 1);
    return std::pow(lam, expo) * centered_u2_moment(sol, k);
}

double mass_expansion_relative_deviation(const RadialSolution& sol) {
    const int N = sol.params.N;
    const double lam = sol.params.lambda;
    const double c = surface_area(N);
    double total = 0.0;
    for (int k = 0; k <= N - 1; ++k) {
        const double lam_pow = std::pow(lam, 2.0 / (sol.params.p - 2.0) - 0.5 * (k + 1));
        total += binomial(N - 1, k) * lam_pow * std::pow(sol.r_bar, N - 1 - k) *
                 rescaled_moment(sol, k);
    }
    total *= c;
    const double m = mass(sol).value;
    return std::abs(total - m) / std::abs(m);
}

RadialSolution make_profile_solution(const ProblemParams& params, std::vector<double> r,
                                     std::vector<double> u, std::vector<double> v, double slope,
                                     double tail_coefficient_log) {
    if (r.size() != u.size() || r.size() != v.size() || r.size() < 3)
        throw ValidationError("make_profile_solution: inconsistent grid");
    RadialSolution sol;
    sol.params = params;
    sol.slope = slope;
    sol.r = std::move(r);
    sol.u = std::move(u);
    sol.v = std::move(v);
    std::size_t i_max = 0;
    for (std::size_t i = 0; i < sol.u.size(); ++i)
        if (sol.u[i] > sol.u[i_max]) i_max = i;
    sol.u_max = sol.u[i_max];
    sol.r_bar = sol.r[i_max];
    if (i_max > 0 && i_max + 1 < sol.r.size()) {
        // Parabolic refinement of the maximum location.
        const double x0 = sol.r[i_max - 1], x1 = sol.r[i_max], x2 = sol.r[i_max + 1];
        const double f0 = sol.u[i_max - 1], f1 = sol.u[i_max], f2 = sol.u[i_max + 1];
        const double denom = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
        if (std::abs(denom) > 0.0) {
            const double num = (x1 - x0) * (x1 - x0) * (f1 - f2) -
                               (x1 - x2) * (x1 - x2) * (f1 - f0);
            sol.r_bar = x1 - 0.5 * num / denom;
        }
    }
    sol.tail_match_radius = sol.r.back();
    sol.log_tail_coefficient = tail_coefficient_log;
    sol.tail_coefficient = std::exp(tail_coefficient_log);
    return sol;
}

} // namespace exgs
