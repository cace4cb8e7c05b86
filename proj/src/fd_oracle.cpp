#include "exterior_gs/fd_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "exterior_gs/profile.hpp"
#include "exterior_gs/quadrature.hpp"
#include "exterior_gs/soliton.hpp"

namespace exgs {

FdGrid make_fd_grid(const ProblemParams& params, double r_bar_est, int n) {
    if (n < 200) throw ValidationError("FdGrid: need at least 200 nodes");
    const double sl = std::sqrt(params.lambda);
    // e^{-sqrt(lambda)(r_out - r_bar)} < 1e-12 wants ~28 e-foldings.
    return FdGrid{params.inner_radius, r_bar_est + 30.0 / sl, n};
}

std::vector<double> soliton_initial_guess(const ProblemParams& params, const FdGrid& grid,
                                          double r_bar_est, double amplitude_factor) {
    const Soliton w(params.p);
    const double sl = std::sqrt(params.lambda);
    const double amp = amplitude_factor * std::pow(params.lambda, 1.0 / (params.p - 2.0));
    std::vector<double> u(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.r_in + (grid.r_out - grid.r_in) * i / (grid.n - 1);
        // Ramp kills the bump's leakage through the Dirichlet wall.
        const double ramp = 1.0 - std::exp(-3.0 * sl * (r - grid.r_in));
        u[i] = amp * w(sl * (r - r_bar_est)) * std::max(ramp, 0.0);
    }
    u.front() = 0.0;
    u.back() = 0.0;
    return u;
}

namespace {

// Residual of the central-difference scheme at interior nodes.
void fd_residual(const ProblemParams& params, const FdGrid& grid, std::span<const double> u,
                 std::span<double> F) {
    const int n = grid.n;
    const double h = (grid.r_out - grid.r_in) / (n - 1);
    const double lam = params.lambda;
    for (int i = 1; i + 1 < n; ++i) {
        const double r = grid.r_in + h * i;
        const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) +
                           (params.N - 1) / r * (u[i + 1] - u[i - 1]) / (2.0 * h);
        const double absu = std::abs(u[i]);
        const double nl = (absu > 0.0) ? std::pow(absu, params.p - 2.0) * u[i] : 0.0;
        F[i] = lap - lam * u[i] + nl;
    }
    F[0] = 0.0;
    F[n - 1] = 0.0;
}

double inf_norm(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

// Thomas solve of the tridiagonal Newton system (in place on rhs).
void thomas(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
            std::vector<double>& rhs) {
    const std::size_t m = diag.size();
    for (std::size_t i = 1; i < m; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[m - 1] /= diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

} // namespace

RadialSolution fd_solve(const ProblemParams& params, const FdGrid& grid,
                        std::span<const double> initial_guess, const FdConfig& cfg) {
    validate(params.N, params.p, params.lambda, params.inner_radius);
    if (static_cast<int>(initial_guess.size()) != grid.n)
        throw ValidationError("fd_solve: guess size does not match grid");
    const int n = grid.n;
    const double h = (grid.r_out - grid.r_in) / (n - 1);
    const double lam = params.lambda;
    const double f_tol = cfg.f_tol_scale * std::pow(lam, (params.p - 1.0) / (params.p - 2.0));
    const double amp_scale = std::pow(lam, 1.0 / (params.p - 2.0));

    std::vector<double> u(initial_guess.begin(), initial_guess.end());
    u.front() = 0.0;
    u.back() = 0.0;
    std::vector<double> F(n), F_trial(n), u_trial(n);
    std::vector<double> sub(n - 2), diag(n - 2), sup(n - 2), step(n - 2);

    fd_residual(params, grid, u, F);
    double fnorm = inf_norm(F);

    for (int it = 0; it < cfg.max_newton; ++it) {
        if (fnorm < f_tol) break;
        for (int i = 1; i + 1 < n; ++i) {
            const double r = grid.r_in + h * i;
            const int k = i - 1;
            sub[k] = 1.0 / (h * h) - (params.N - 1) / (2.0 * h * r);
            sup[k] = 1.0 / (h * h) + (params.N - 1) / (2.0 * h * r);
            diag[k] = -2.0 / (h * h) - lam +
                      (params.p - 1.0) * std::pow(std::abs(u[i]), params.p - 2.0);
            step[k] = -F[i];
        }
        thomas(sub, diag, sup, step);

        // Backtracking with positivity projection.
        double alpha = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
            for (int i = 1; i + 1 < n; ++i)
                u_trial[i] = std::max(u[i] + alpha * step[i - 1], 0.0);
            u_trial.front() = 0.0;
            u_trial.back() = 0.0;
            fd_residual(params, grid, u_trial, F_trial);
            const double fn = inf_norm(F_trial);
            if (fn < (1.0 - 1e-4 * alpha) * fnorm) {
                u.swap(u_trial);
                F.swap(F_trial);
                fnorm = fn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted)
            throw SolverError("NewtonDiverged: line search stalled at ||F|| = " +
                              std::to_string(fnorm));
    }
    if (fnorm >= f_tol)
        throw SolverError("NewtonDiverged: no convergence in " + std::to_string(cfg.max_newton) +
                          " iterations");

    const double u_sup = inf_norm(u);
    if (u_sup < 1e-8 * amp_scale)
        throw SolverError("NewtonDiverged: converged to the trivial zero state");
    for (int i = 1; i + 1 < n; ++i)
        if (u[i] < 0.0)
            throw SolverError("NegativeSolution: converged state changes sign");

    // Package as a RadialSolution: v by 4th-order central differences, tail
    // fitted at the node where u falls below 1e-8 of the max.
    std::vector<double> r(n), v(n);
    for (int i = 0; i < n; ++i) r[i] = grid.r_in + h * i;
    for (int i = 2; i + 2 < n; ++i)
        v[i] = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) / (12.0 * h);
    v[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    v[1] = (u[2] - u[0]) / (2.0 * h);
    v[n - 2] = (u[n - 1] - u[n - 3]) / (2.0 * h);
    v[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);

    int i_max = 0;
    for (int i = 0; i < n; ++i)
        if (u[i] > u[i_max]) i_max = i;
    int i_cut = n - 1;
    for (int i = i_max; i < n; ++i)
        if (u[i] <= 1e-8 * u[i_max] && u[i] > 0.0) {
            i_cut = i;
            break;
        }
    if ((i_cut - 0) % 2 == 1) --i_cut; // even interval count for Simpson
    if (i_cut <= i_max) i_cut = n - 1;

    const double slope = v[0];
    std::vector<double> rr(r.begin(), r.begin() + i_cut + 1);
    std::vector<double> uu(u.begin(), u.begin() + i_cut + 1);
    std::vector<double> vv(v.begin(), v.begin() + i_cut + 1);
    const double u_m = std::max(uu.back(), 1e-300);
    const double log_tail = std::log(u_m) + std::sqrt(lam) * rr.back() +
                            0.5 * (params.N - 1) * std::log(rr.back());
    return make_profile_solution(params, std::move(rr), std::move(uu), std::move(vv), slope,
                                 log_tail);
}

RadialSolution fd_solve(const ProblemParams& params, const FdGrid& grid, const FdConfig& cfg) {
    const double sl = std::sqrt(params.lambda);
    std::string last_error;
    for (double offset : {1.5, 0.75, 3.0, 6.0}) {
        for (double amp : {1.0, 1.5, 0.7}) {
            const double rb = params.inner_radius + offset / sl;
            if (rb >= grid.r_out) continue;
            try {
                return fd_solve(params, grid, soliton_initial_guess(params, grid, rb, amp), cfg);
            } catch (const SolverError& e) {
                last_error = e.what();
            }
        }
    }
    throw SolverError("NewtonDiverged: all starting profiles failed; last: " + last_error);
}

double fd_mass(const ProblemParams& params, const FdGrid& grid, std::span<const double> u) {
    const int n = grid.n;
    const double h = (grid.r_out - grid.r_in) / (n - 1);
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
        x[i] = grid.r_in + h * i;
        f[i] = u[i] * u[i] * std::pow(x[i], params.N - 1);
    }
    return surface_area(params.N) * simpson_nonuniform(x, f);
}

CompareReport compare(const RadialSolution& a, const RadialSolution& b) {
    const auto& pa = a.params;
    const auto& pb = b.params;
    if (pa.N != pb.N || std::abs(pa.p - pb.p) > 1e-12 ||
        std::abs(pa.lambda - pb.lambda) > 1e-12 * std::abs(pa.lambda) ||
        std::abs(pa.inner_radius - pb.inner_radius) > 1e-12 * pa.inner_radius)
        throw ValidationError("ParamMismatch: solutions belong to different problems");

    const double lo = std::max(a.r.front(), b.r.front());
    const double hi = std::min(a.tail_match_radius, b.tail_match_radius);
    const int n = 4001;
    double sup_diff = 0.0, sup_a = 0.0, l2_diff = 0.0, l2_a = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = lo + (hi - lo) * i / (n - 1);
        const double ua = eval_u(a, r), ub = eval_u(b, r);
        sup_diff = std::max(sup_diff, std::abs(ua - ub));
        sup_a = std::max(sup_a, std::abs(ua));
        l2_diff += (ua - ub) * (ua - ub);
        l2_a += ua * ua;
    }
    CompareReport rep;
    rep.rel_linf = sup_diff / sup_a;
    rep.rel_l2 = std::sqrt(l2_diff / l2_a);
    const double ma = mass(a).value, mb = mass(b).value;
    rep.rel_mass_gap = std::abs(ma - mb) / std::abs(ma);
    return rep;
}

} // namespace exgs
