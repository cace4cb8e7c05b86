#include "exterior_gs/curve.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace exgs {

void MassCurve::insert_point(CurvePoint pt) {
    auto it = std::lower_bound(points.begin(), points.end(), pt.lambda,
                               [](const CurvePoint& a, double l) { return a.lambda < l; });
    if (it != points.end() && std::abs(it->lambda - pt.lambda) <= 1e-12 * pt.lambda)
        *it = std::move(pt);
    else
        points.insert(it, std::move(pt));
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

double slope_scale_hint(double s_from, double lambda_from, double lambda_to, double p) {
    return s_from * std::pow(lambda_to / lambda_from, 1.0 / (p - 2.0) + 0.5);
}

CurvePoint make_point(const RadialSolution& sol) {
    CurvePoint pt;
    pt.lambda = sol.params.lambda;
    pt.d = mass(sol).value;
    pt.slope_hint = sol.slope;
    pt.r_bar = sol.r_bar;
    pt.diagnostics = run_diagnostics(sol);
    pt.action = pt.diagnostics.action;
    return pt;
}

} // namespace

MassCurve trace_curve(int N, double p, double R, double lambda_lo, double lambda_hi, int n_points,
                      const TraceConfig& cfg) {
    validate(N, p, lambda_lo, R);
    if (!(lambda_lo < lambda_hi)) throw ValidationError("trace_curve: need lambda_lo < lambda_hi");
    if (n_points < 8) throw ValidationError("trace_curve: need at least 8 points");

    MassCurve curve;
    curve.N = N;
    curve.p = p;
    curve.R = R;
    curve.lambda_lo = lambda_lo;
    curve.lambda_hi = lambda_hi;
    curve.n_points_requested = n_points;

    const std::vector<double> lambdas = log_spaced(lambda_lo, lambda_hi, n_points);

    ShooterConfig sweep_cfg = cfg.shooter;
    if (cfg.refine_pass) sweep_cfg.bracket_rel_width = 1e-6; // hints only

    // Sequential continuation pass, warm-starting each solve from its
    // neighbor's slope rescaled by the bracket heuristic.
    std::vector<std::optional<double>> hints(n_points);
    std::vector<double> sweep_slopes(n_points, 0.0);
    std::optional<double> hint;
    double hint_lambda = 0.0;
    std::vector<RadialSolution> sols(n_points);
    std::vector<std::string> errors(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double lam = lambdas[i];
        std::optional<double> h;
        if (hint) h = slope_scale_hint(*hint, hint_lambda, lam, p);
        hints[i] = h;
        try {
            ProblemParams params{N, p, lam, R};
            RadialSolution sol = solve_ground_state(params, sweep_cfg, h);
            sweep_slopes[i] = sol.slope;
            hint = sol.slope;
            hint_lambda = lam;
            if (!cfg.refine_pass) sols[i] = std::move(sol);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }

    if (cfg.refine_pass) {
        // Tightened re-solves, parallel across points.
        const int jobs = std::max(1, cfg.jobs);
        auto work = [&](int begin, int stride) {
            for (int i = begin; i < n_points; i += stride) {
                if (!errors[i].empty() && sweep_slopes[i] == 0.0) continue;
                try {
                    ProblemParams params{N, p, lambdas[i], R};
                    std::optional<double> h =
                        sweep_slopes[i] != 0.0 ? std::optional<double>(sweep_slopes[i]) : hints[i];
                    sols[i] = solve_ground_state(params, cfg.shooter, h);
                    errors[i].clear();
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        };
        if (jobs == 1) {
            work(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
            for (auto& th : pool) th.join();
        }
    }

    for (int i = 0; i < n_points; ++i) {
        if (!errors[i].empty()) {
            curve.failures.push_back({lambdas[i], "SolveFailed: " + errors[i]});
            continue;
        }
        CurvePoint pt = make_point(sols[i]);
        if (!(pt.diagnostics.nehari_res < cfg.gate_nehari) ||
            !(pt.diagnostics.pohozaev_full_res < cfg.gate_pohozaev)) {
            curve.failures.push_back(
                {lambdas[i], "DiagnosticsGate: nehari_res = " +
                                 std::to_string(pt.diagnostics.nehari_res) + ", pohozaev_res = " +
                                 std::to_string(pt.diagnostics.pohozaev_full_res)});
            continue;
        }
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

std::pair<double, double> refine_extremum(const MassCurve& curve, const TraceConfig& cfg,
                                          double lambda_rel_tol, MassFn mass_fn) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw SolverError("NoInteriorMinimum: curve has fewer than 3 points");

    // Global discrete minimum with a strict interior bracket.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].d < pts[best].d) best = i;
    if (best == 0 || best + 1 == pts.size())
        throw SolverError("NoInteriorMinimum: discrete minimum sits at the window edge");
    if (!(pts[best - 1].d > pts[best].d && pts[best + 1].d > pts[best].d))
        throw SolverError("NoInteriorMinimum: no decrease-then-increase bracket");

    if (!mass_fn) {
        mass_fn = [&curve, &cfg](double lam) {
            // Warm start from the nearest traced point.
            const auto& ps = curve.points;
            std::size_t k = 0;
            for (std::size_t i = 1; i < ps.size(); ++i)
                if (std::abs(std::log(ps[i].lambda / lam)) <
                    std::abs(std::log(ps[k].lambda / lam)))
                    k = i;
            const double hint =
                slope_scale_hint(ps[k].slope_hint, ps[k].lambda, lam, curve.p);
            ProblemParams params{curve.N, curve.p, lam, curve.R};
            return mass(solve_ground_state(params, cfg.shooter, hint)).value;
        };
    }

    // Golden section in log(lambda).
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(pts[best - 1].lambda), b = std::log(pts[best + 1].lambda);
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = mass_fn(std::exp(x1)), f2 = mass_fn(std::exp(x2));
    while (b - a > lambda_rel_tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = mass_fn(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = mass_fn(std::exp(x2));
        }
    }

    // Parabolic polish through (a, x_mid, b) in log space.
    const double xm = (f1 < f2) ? x1 : x2;
    const double fm = std::min(f1, f2);
    const double fa = mass_fn(std::exp(a)), fb = mass_fn(std::exp(b));
    double x_hat = xm;
    const double denom = (xm - a) * (fm - fb) - (xm - b) * (fm - fa);
    if (std::abs(denom) > 0.0) {
        const double num = (xm - a) * (xm - a) * (fm - fb) - (xm - b) * (xm - b) * (fm - fa);
        const double cand = xm - 0.5 * num / denom;
        if (cand > a && cand < b) x_hat = cand;
    }
    const double lambda_hat = std::exp(x_hat);
    const double eta = mass_fn(lambda_hat);
    if (eta <= fm) return {lambda_hat, eta};
    return {std::exp(xm), fm};
}

const char* threshold_kind_name(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::InteriorMin: return "INTERIOR_MIN";
        case ThresholdKind::InfAtZero: return "INF_AT_ZERO";
        case ThresholdKind::InfAtInfinity: return "INF_AT_INFINITY";
    }
    return "UNKNOWN";
}

namespace {

double loglog_slope(const std::vector<CurvePoint>& pts, std::size_t begin, std::size_t end) {
    // Least-squares slope of log d against log lambda over [begin, end).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        const double x = std::log(pts[i].lambda), y = std::log(pts[i].d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string trend_name(double slope, double thr) {
    if (slope > thr) return "increasing";
    if (slope < -thr) return "decreasing";
    return "flat";
}

} // namespace

ThresholdReport threshold(int N, double p, double R, const ThresholdConfig& cfg) {
    validate(N, p, 1.0, R);
    ThresholdReport rep;
    rep.regime = classify_regime(N, p);
    rep.window_lo = cfg.window_lo / (R * R);
    rep.window_hi = cfg.window_hi / (R * R);
    rep.curve = trace_curve(N, p, R, rep.window_lo, rep.window_hi, cfg.n_points, cfg.trace);
    const auto& pts = rep.curve.points;
    if (pts.size() < 5)
        throw SolverError("threshold: too few curve points survived (" +
                          std::to_string(pts.size()) + ")");

    const std::size_t k = std::min<std::size_t>(5, pts.size());
    rep.loglog_slope_at_zero = loglog_slope(pts, 0, k);
    rep.loglog_slope_at_infinity = loglog_slope(pts, pts.size() - k, pts.size());
    rep.trend_at_zero = trend_name(rep.loglog_slope_at_zero, cfg.trend_slope_threshold);
    rep.trend_at_infinity = trend_name(rep.loglog_slope_at_infinity, cfg.trend_slope_threshold);

    double d_min = pts.front().d;
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].d < d_min) {
            d_min = pts[i].d;
            argmin = i;
        }

    switch (rep.regime) {
        case Regime::TwoDimPGt6:
            rep.eta = 0.0;
            rep.kind = ThresholdKind::InfAtInfinity;
            return rep;
        case Regime::MassSubcritical:
            rep.eta = 0.0;
            rep.kind = ThresholdKind::InfAtZero;
            return rep;
        default: break;
    }

    try {
        auto [lambda_hat, eta] = refine_extremum(rep.curve, cfg.trace, cfg.lambda_rel_tol);
        rep.eta = eta;
        rep.lambda_hat = lambda_hat;
        rep.kind = ThresholdKind::InteriorMin;
        return rep;
    } catch (const SolverError&) {
        // No attained interior minimum inside the window: the infimum sits at
        // whichever end the discrete minimum leans toward.
        rep.eta = d_min;
        rep.kind = (argmin >= pts.size() / 2) ? ThresholdKind::InfAtInfinity
                                              : ThresholdKind::InfAtZero;
        return rep;
    }
}

CrossingReport count_solutions(const MassCurve& curve, double c, double touch_tol_rel) {
    if (!(c > 0.0)) throw ValidationError("count_solutions: need c > 0");
    const auto& pts = curve.points;
    CrossingReport rep;
    if (pts.size() < 2) return rep;

    auto side = [&](double d) -> int {
        if (std::abs(d - c) <= touch_tol_rel * c) return 0;
        return d > c ? 1 : -1;
    };

    int last_side = 0;
    bool in_touch_run = false;
    std::size_t touch_best = 0;

    auto flush_run = [&](int next_side) {
        // A touch run crossed transversally only if the sides flip across it.
        const bool flips = last_side != 0 && next_side != 0 && last_side != next_side;
        rep.crossings.push_back({pts[touch_best].lambda,
                                 flips ? CrossingKind::Transversal : CrossingKind::Tangent});
    };

    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int s = side(pts[i].d);
        if (s == 0) {
            if (!in_touch_run) {
                in_touch_run = true;
                touch_best = i;
            } else if (std::abs(pts[i].d - c) < std::abs(pts[touch_best].d - c)) {
                touch_best = i;
            }
            continue;
        }
        if (in_touch_run) {
            flush_run(s);
            in_touch_run = false;
            last_side = s;
            continue;
        }
        if (last_side != 0 && s != last_side) {
            // Transversal crossing between i-1 and i by linear interpolation.
            const double d0 = pts[i - 1].d, d1 = pts[i].d;
            const double t = (c - d0) / (d1 - d0);
            const double lam = pts[i - 1].lambda + t * (pts[i].lambda - pts[i - 1].lambda);
            rep.crossings.push_back({lam, CrossingKind::Transversal});
        }
        last_side = s;
    }
    if (in_touch_run) flush_run(0);
    return rep;
}

const char* stability_label_name(StabilityLabel s) {
    switch (s) {
        case StabilityLabel::Stable: return "STABLE";
        case StabilityLabel::Unstable: return "UNSTABLE";
        case StabilityLabel::Indeterminate: return "INDETERMINATE";
    }
    return "UNKNOWN";
}

std::vector<StabilityLabel> stability_classify(const MassCurve& curve, double tol_rel) {
    const auto& pts = curve.points;
    std::vector<StabilityLabel> out(pts.size(), StabilityLabel::Indeterminate);
    if (pts.size() < 3) return out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t lo = (i == 0) ? 0 : i - 1;
        const std::size_t hi = (i + 1 == pts.size()) ? i : i + 1;
        const double dlog = std::log(pts[hi].lambda) - std::log(pts[lo].lambda);
        const double deriv = (pts[hi].d - pts[lo].d) / dlog; // d d / d log(lambda)
        if (deriv > tol_rel * pts[i].d)
            out[i] = StabilityLabel::Stable;
        else if (deriv < -tol_rel * pts[i].d)
            out[i] = StabilityLabel::Unstable;
    }
    return out;
}

double rescale_threshold(double eta_at_r1, int N, double p, double R) {
    if (!(eta_at_r1 >= 0.0)) throw ValidationError("rescale_threshold: eta must be >= 0");
    if (!(R > 0.0)) throw ValidationError("BadRadius: R must be > 0");
    return std::pow(R, N - 4.0 / (p - 2.0)) * eta_at_r1;
}

RadialSolution transform_solution(const RadialSolution& sol, double R) {
    if (!(R > 0.0)) throw ValidationError("BadRadius: R must be > 0");
    if (std::abs(sol.params.inner_radius - 1.0) > 1e-12)
        throw ValidationError("transform_solution: source must be solved at inner radius 1");
    const double p = sol.params.p;
    const double factor = std::pow(R, 2.0 / (2.0 - p));
    RadialSolution out;
    out.params = sol.params;
    out.params.inner_radius = R;
    out.params.lambda = sol.params.lambda / (R * R);
    out.slope = factor / R * sol.slope;
    out.r.resize(sol.r.size());
    out.u.resize(sol.u.size());
    out.v.resize(sol.v.size());
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
        out.r[i] = R * sol.r[i];
        out.u[i] = factor * sol.u[i];
        out.v[i] = factor / R * sol.v[i];
    }
    out.r_bar = R * sol.r_bar;
    out.u_max = factor * sol.u_max;
    out.tail_match_radius = R * sol.tail_match_radius;
    out.log_tail_coefficient =
        std::log(factor) + sol.log_tail_coefficient + 0.5 * (sol.params.N - 1) * std::log(R);
    out.tail_coefficient = std::exp(out.log_tail_coefficient);
    out.stats = sol.stats;
    return out;
}

} // namespace exgs
