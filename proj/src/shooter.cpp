#include "exterior_gs/shooter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace exgs {

const char* shot_class_name(ShotClass c) {
    switch (c) {
        case ShotClass::Undershoot: return "UNDERSHOOT";
        case ShotClass::Overshoot: return "OVERSHOOT";
        case ShotClass::Converged: return "CONVERGED";
    }
    return "UNKNOWN";
}

ShotClass classify_event(const TerminationEvent& ev, const ShotOrientation& orientation) {
    switch (ev.kind) {
        case EventKind::ReachedRmaxDecayed: return ShotClass::Converged;
        case EventKind::ReachedRmaxUndecided:
            throw SolverError("UndecidedShot: trajectory reached r_max without decaying; "
                              "increase r_max");
        case EventKind::Blowup: return ShotClass::Overshoot;
        default: break;
    }
    if (ev.kind == orientation.undershoot_kind) return ShotClass::Undershoot;
    return ShotClass::Overshoot;
}

IntegratorConfig make_integrator_config(const ProblemParams& params, const ShooterConfig& cfg,
                                        double r_bar_est) {
    const double amp_scale = std::pow(params.lambda, 1.0 / (params.p - 2.0));
    const double sqrt_lambda = std::sqrt(params.lambda);
    IntegratorConfig ic;
    ic.rel_tol = cfg.rel_tol;
    ic.abs_tol_u = cfg.abs_tol_scale * amp_scale;
    ic.abs_tol_v = cfg.abs_tol_scale * amp_scale * sqrt_lambda;
    ic.r_max = r_bar_est + cfg.r_margin_efolds / sqrt_lambda;
    ic.u_blowup_cap = cfg.blowup_factor * amp_scale;
    ic.decay_threshold = cfg.decay_threshold;
    return ic;
}

namespace {

struct Probe {
    double s;
    EventKind kind;
    double r_bar; // 0 if the trajectory never turned
};

// One shot with automatic r_max enlargement on undecided trajectories.
Probe probe_slope(double s, const ProblemParams& params, IntegratorConfig ic,
                  const ShooterConfig& cfg, SolverStats& stats, double& r_bar_est) {
    const OdeState start{params.inner_radius, 0.0, s};
    RhsParams rp{params.N, params.p, params.lambda};
    for (int attempt = 0;; ++attempt) {
        IntegrationResult res = integrate(start, rp, ic);
        stats.total_ode_steps += res.n_steps;
        if (res.r_bar > 0.0) r_bar_est = std::max(r_bar_est, res.r_bar);
        if (res.event.kind != EventKind::ReachedRmaxUndecided)
            return {s, res.event.kind, res.r_bar};
        if (attempt >= cfg.max_rmax_retries)
            throw SolverError("UndecidedShot: r_max enlargement exhausted at s = " +
                              std::to_string(s));
        ++stats.rmax_retries;
        ic.r_max = params.inner_radius + 2.0 * (ic.r_max - params.inner_radius);
    }
}

bool is_failure_kind(EventKind k) {
    return k == EventKind::ZeroCrossing || k == EventKind::Turnaround ||
           k == EventKind::Blowup;
}

} // namespace

ShotClass classify_shot(double s, const ProblemParams& params, const IntegratorConfig& config,
                        const ShotOrientation& orientation) {
    if (!(s > 0.0)) throw ValidationError("InvalidSlope: boundary slope must be > 0");
    const OdeState start{params.inner_radius, 0.0, s};
    IntegrationResult res = integrate(start, RhsParams{params.N, params.p, params.lambda}, config);
    return classify_event(res.event, orientation);
}

BracketResult initial_bracket(const ProblemParams& params, const ShooterConfig& cfg,
                              std::optional<double> hint) {
    SolverStats stats;
    double r_bar_est = params.inner_radius + 3.0 / std::sqrt(params.lambda);
    IntegratorConfig ic = make_integrator_config(params, cfg, r_bar_est);

    const double s_center =
        hint.value_or(std::pow(params.lambda, 1.0 / (params.p - 2.0) + 0.5));
    if (!(s_center > 0.0)) throw ValidationError("InvalidSlope: bracket hint must be > 0");

    std::map<double, Probe> probes; // keyed by s
    auto shoot = [&](double s) -> const Probe& {
        auto it = probes.find(s);
        if (it == probes.end()) {
            Probe pr = probe_slope(s, params, ic, cfg, stats, r_bar_est);
            // A converged probe sits essentially on s*: split it into a pair
            // of nearby shots so orientation can still be established.
            it = probes.emplace(s, pr).first;
        }
        return it->second;
    };

    auto find_pair = [&](EventKind a, EventKind b) -> std::pair<const Probe*, const Probe*> {
        // Nearest adjacent pair (in s, failure kinds only) matching {a, b}.
        const Probe* prev = nullptr;
        for (const auto& [s, pr] : probes) {
            if (!is_failure_kind(pr.kind)) continue;
            if (prev && ((prev->kind == a && pr.kind == b) || (prev->kind == b && pr.kind == a)))
                return {prev, &pr};
            prev = &pr;
        }
        return {nullptr, nullptr};
    };

    int expansions = 0;
    double lo_probe = s_center, hi_probe = s_center;
    shoot(s_center);
    if (probes.begin()->second.kind == EventKind::ReachedRmaxDecayed) {
        // Jackpot probe: bracket tightly around it.
        lo_probe = s_center * (1.0 - 1e-3);
        hi_probe = s_center * (1.0 + 1e-3);
        shoot(lo_probe);
        shoot(hi_probe);
    }

    const double grow_small = 1.1, grow_big = 2.0;
    while (true) {
        // A converged probe sits on s*: tighten a pair of side probes around
        // it until their failure kinds differ.
        for (const auto& [sc, pc] : probes) {
            if (pc.kind != EventKind::ReachedRmaxDecayed) continue;
            for (double delta : {1e-3, 1e-2, 1e-1}) {
                const Probe& pl = shoot(sc * (1.0 - delta));
                const Probe& ph = shoot(sc * (1.0 + delta));
                if (is_failure_kind(pl.kind) && is_failure_kind(ph.kind) && pl.kind != ph.kind)
                    return {pl.s, ph.s, {pl.kind, ph.kind}, r_bar_est, expansions};
            }
            break;
        }

        // Accept as soon as a {ZeroCrossing, Turnaround} adjacency exists.
        auto [pa, pb] = find_pair(EventKind::ZeroCrossing, EventKind::Turnaround);
        if (pa && pb) {
            ShotOrientation ori{pa->kind, pb->kind}; // smaller s first
            return {pa->s, pb->s, ori, r_bar_est, expansions};
        }

        // A Turnaround/Blowup adjacency: hunt for the zero-crossing window
        // in between; if it is unresolvably narrow the pair itself brackets.
        auto [ta, bl] = find_pair(EventKind::Turnaround, EventKind::Blowup);
        if (ta && bl && ta->kind == EventKind::Turnaround) {
            double a = ta->s, b = bl->s;
            for (int i = 0; i < 60 && (b - a) > 1e-12 * b; ++i) {
                const double mid = 0.5 * (a + b);
                const Probe& pm = shoot(mid);
                if (pm.kind == EventKind::ZeroCrossing) break;
                if (pm.kind == EventKind::Turnaround)
                    a = mid;
                else
                    b = mid;
            }
            auto [qa, qb] = find_pair(EventKind::ZeroCrossing, EventKind::Turnaround);
            if (qa && qb) return {qa->s, qb->s, {qa->kind, qb->kind}, r_bar_est, expansions};
            return {a, b, {EventKind::Turnaround, EventKind::Blowup}, r_bar_est, expansions};
        }

        // Otherwise expand the ladder: everything on the zero-crossing/blowup
        // family pushes the window down, an all-turnaround ladder pushes up.
        if (expansions++ > cfg.max_bracket_doublings)
            throw SolverError("NoBracket: slope ladder exhausted after " +
                              std::to_string(cfg.max_bracket_doublings) + " expansions");
        bool any_turn = false, any_fall = false;
        for (const auto& [s, pr] : probes) {
            if (pr.kind == EventKind::Turnaround) any_turn = true;
            if (pr.kind == EventKind::ZeroCrossing || pr.kind == EventKind::Blowup)
                any_fall = true;
        }
        const double f = (expansions <= 6 && hint) ? grow_small : grow_big;
        if (any_fall && !any_turn) {
            lo_probe /= f;
            shoot(lo_probe);
        } else if (any_turn && !any_fall) {
            hi_probe *= f;
            shoot(hi_probe);
        } else {
            // Mixed but non-adjacent (converged probes in between): widen both.
            lo_probe /= f;
            hi_probe *= f;
            shoot(lo_probe);
            shoot(hi_probe);
        }
    }
}

namespace {

struct GridBuild {
    std::vector<double> r, u, v;
};

// Samples the dense output at cfg.samples_per_step points per accepted step.
GridBuild sample_grid(const Trajectory& traj, const OdeState& start, int per_step) {
    GridBuild g;
    g.r.push_back(start.r);
    g.u.push_back(start.u);
    g.v.push_back(start.v);
    for (const TrajectoryStep& st : traj.steps()) {
        const double h = st.r1 - st.r0;
        if (!(h > 0.0)) continue;
        for (int j = 1; j <= per_step; ++j) {
            const double r = st.r0 + h * j / per_step;
            OdeState s = traj.eval(r);
            g.r.push_back(r);
            g.u.push_back(s.u);
            g.v.push_back(s.v);
        }
    }
    return g;
}

} // namespace

RadialSolution solve_ground_state(const ProblemParams& params, const ShooterConfig& cfg,
                                  std::optional<double> hint) {
    validate(params.N, params.p, params.lambda, params.inner_radius);
    if (params.N >= 3) {
        const double two_star = critical_exponents(params.N).two_star;
        if (two_star - params.p < cfg.stiffness_guard)
            throw SolverError("StiffFailure: p within " + std::to_string(cfg.stiffness_guard) +
                              " of the Sobolev-critical exponent; integration is impractically "
                              "stiff this close to criticality");
    }

    BracketResult br = initial_bracket(params, cfg, hint);
    SolverStats stats;
    stats.bracket_expansions = br.expansions;

    IntegratorConfig ic = make_integrator_config(params, cfg, br.r_bar_est);
    ShotOrientation ori = br.orientation;

    auto classify = [&](double s) -> ShotClass {
        const OdeState start{params.inner_radius, 0.0, s};
        for (int attempt = 0;; ++attempt) {
            IntegrationResult res =
                integrate(start, RhsParams{params.N, params.p, params.lambda}, ic);
            stats.total_ode_steps += res.n_steps;
            if (res.event.kind == EventKind::ReachedRmaxUndecided) {
                if (attempt >= cfg.max_rmax_retries)
                    throw SolverError("UndecidedShot: r_max enlargement exhausted");
                ++stats.rmax_retries;
                ic.r_max = params.inner_radius + 2.0 * (ic.r_max - params.inner_radius);
                continue;
            }
            return classify_event(res.event, ori);
        }
    };

    double lo = br.s_lo, hi = br.s_hi;
    // The ladder guarantees kind(lo) != kind(hi); align sides so that lo is
    // the undershoot end.
    if (classify(lo) == ShotClass::Overshoot) std::swap(lo, hi);

    double s_star = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break; // double exhaustion
        ++stats.bisections;
        const ShotClass c = classify(mid);
        if (c == ShotClass::Converged) {
            s_star = mid;
            break;
        }
        if (c == ShotClass::Undershoot)
            lo = mid;
        else
            hi = mid;
        s_star = 0.5 * (lo + hi);
        if (std::abs(hi - lo) <= cfg.bracket_rel_width * std::abs(s_star)) break;
    }
    stats.final_bracket_width = std::abs(hi - lo) / std::abs(s_star);

    // Final trajectory at the converged slope.
    const OdeState start{params.inner_radius, 0.0, s_star};
    IntegrationResult fin = integrate(start, RhsParams{params.N, params.p, params.lambda}, ic);
    stats.total_ode_steps += fin.n_steps;
    if (!(fin.u_max > 0.0) || !(fin.r_bar > 0.0))
        throw SolverError("solve_ground_state: final trajectory has no interior maximum");

    GridBuild g = sample_grid(fin.trajectory, start, cfg.samples_per_step);

    // Cut the grid where the decaying tail stops being numerically clean:
    // strictly positive, strictly decreasing, v < 0 past the maximum.
    const double level = cfg.tail_match_level * fin.u_max;
    std::size_t i_bar = 0;
    for (std::size_t i = 1; i < g.r.size(); ++i)
        if (g.r[i] <= fin.r_bar) i_bar = i;

    // Skip the flat top: decay is established once v < 0 holds.
    std::size_t i_start = i_bar + 1;
    while (i_start + 1 < g.r.size() && !(g.v[i_start] < 0.0)) ++i_start;

    std::size_t cut = i_start;
    bool found_level = false;
    for (std::size_t i = i_start + 1; i < g.r.size(); ++i) {
        const bool clean = g.u[i] > 0.0 && g.v[i] < 0.0 && g.u[i] < g.u[i - 1];
        if (!clean) break;
        cut = i;
        if (g.u[i] <= level) {
            found_level = true;
            break;
        }
    }

    RadialSolution sol;
    sol.params = params;
    sol.slope = s_star;
    sol.r_bar = fin.r_bar;
    sol.u_max = fin.u_max;

    if (found_level) {
        // Polish the cut to the exact level crossing.
        double a = g.r[cut - 1], b = g.r[cut];
        for (int k = 0; k < 80 && (b - a) > 1e-14 * b; ++k) {
            const double m = 0.5 * (a + b);
            if (fin.trajectory.eval(m).u > level)
                a = m;
            else
                b = m;
        }
        const double rm = 0.5 * (a + b);
        OdeState sm = fin.trajectory.eval(rm);
        g.r[cut] = rm;
        g.u[cut] = sm.u;
        g.v[cut] = sm.v;
    }

    sol.r.assign(g.r.begin(), g.r.begin() + cut + 1);
    sol.u.assign(g.u.begin(), g.u.begin() + cut + 1);
    sol.v.assign(g.v.begin(), g.v.begin() + cut + 1);

    // Simpson likes an even interval count; add one dense sample if needed.
    if (sol.r.size() % 2 == 0 && sol.r.size() >= 2) {
        const double rm = 0.5 * (sol.r[sol.r.size() - 2] + sol.r.back());
        OdeState sm = fin.trajectory.eval(rm);
        sol.r.insert(sol.r.end() - 1, rm);
        sol.u.insert(sol.u.end() - 1, sm.u);
        sol.v.insert(sol.v.end() - 1, sm.v);
    }

    sol.tail_match_radius = sol.r.back();
    const double sqrt_lambda = std::sqrt(params.lambda);
    sol.log_tail_coefficient = std::log(sol.u.back()) + sqrt_lambda * sol.tail_match_radius +
                               0.5 * (params.N - 1) * std::log(sol.tail_match_radius);
    sol.tail_coefficient = std::exp(sol.log_tail_coefficient);
    sol.stats = stats;

    // Contract checks from the shape lemma and the sup-norm bound.
    for (std::size_t i = 1; i < sol.r.size(); ++i)
        if (!(sol.u[i] > 0.0))
            throw SolverError("solve_ground_state: interior grid value not positive");
    int sign_changes = 0;
    for (std::size_t i = 1; i + 1 < sol.r.size(); ++i)
        if ((sol.v[i] > 0.0) != (sol.v[i + 1] > 0.0)) ++sign_changes;
    if (sign_changes != 1)
        throw SolverError("solve_ground_state: derivative changes sign " +
                          std::to_string(sign_changes) + " times (expected exactly 1)");
    if (!(params.lambda < std::pow(sol.u_max, params.p - 2.0)))
        throw SolverError("solve_ground_state: sup-norm bound lambda < u_max^{p-2} violated");

    return sol;
}

namespace {

std::size_t locate(const std::vector<double>& xs, double x) {
    // Largest i with xs[i] <= x, clamped to [0, size-2].
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    return std::min(i, xs.size() - 2);
}

} // namespace

double eval_u(const RadialSolution& sol, double r) {
    if (r <= sol.r.front()) return sol.u.front();
    if (r >= sol.tail_match_radius) {
        const double lam = sol.params.lambda;
        return std::exp(sol.log_tail_coefficient - std::sqrt(lam) * r -
                        0.5 * (sol.params.N - 1) * std::log(r));
    }
    const std::size_t i = locate(sol.r, r);
    const double h = sol.r[i + 1] - sol.r[i];
    const double t = (r - sol.r[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * sol.u[i] + h10 * h * sol.v[i] + h01 * sol.u[i + 1] + h11 * h * sol.v[i + 1];
}

double eval_v(const RadialSolution& sol, double r) {
    if (r <= sol.r.front()) return sol.v.front();
    if (r >= sol.tail_match_radius) {
        const double lam = sol.params.lambda;
        return eval_u(sol, r) * (-std::sqrt(lam) - 0.5 * (sol.params.N - 1) / r);
    }
    const std::size_t i = locate(sol.r, r);
    const double h = sol.r[i + 1] - sol.r[i];
    const double t = (r - sol.r[i]) / h;
    const double d00 = 6 * t * (t - 1) / h, d10 = (1 - t) * (1 - 3 * t);
    const double d01 = -d00, d11 = t * (3 * t - 2);
    return d00 * sol.u[i] + d10 * sol.v[i] + d01 * sol.u[i + 1] + d11 * sol.v[i + 1];
}

} // namespace exgs
