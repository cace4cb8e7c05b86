#include "exterior_gs/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exgs {

OdeDeriv rhs(const OdeState& s, const RhsParams& params) {
    const double absu = std::abs(s.u);
    const double nonlinear = (absu > 0.0) ? std::pow(absu, params.p - 2.0) * s.u : 0.0;
    double dv = params.lambda * s.u - nonlinear;
    if (params.dim > 1) dv -= (params.dim - 1) / s.r * s.v;
    return {s.v, dv};
}

double energy_autonomous(double u, double v, double p, double mu) {
    return 0.5 * v * v + std::pow(std::abs(u), p) / p - 0.5 * mu * u * u;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::ZeroCrossing: return "ZERO_CROSSING";
        case EventKind::Turnaround: return "TURNAROUND";
        case EventKind::Blowup: return "BLOWUP";
        case EventKind::ReachedRmaxDecayed: return "REACHED_RMAX_DECAYED";
        case EventKind::ReachedRmaxUndecided: return "REACHED_RMAX_UNDECIDED";
    }
    return "UNKNOWN";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Error weights (5th-order minus embedded 4th-order solution).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Hairer's dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct Y2 {
    double u, v;
};

inline Y2 deriv(double r, const Y2& y, const RhsParams& p) {
    OdeDeriv d = rhs({r, y.u, y.v}, p);
    return {d.du, d.dv};
}

inline double dense_eval(const std::array<double, 5>& c, double theta) {
    const double th1 = 1.0 - theta;
    return c[0] + theta * (c[1] + th1 * (c[2] + theta * (c[3] + th1 * c[4])));
}

// Finds theta in [lo, hi] with g(theta) = 0 by bisection on the dense output;
// g must change sign on the bracket.
template <typename G>
double bisect_theta(G&& g, double lo, double hi) {
    double glo = g(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((glo <= 0.0) == (gm <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double Trajectory::r_begin() const { return steps_.empty() ? 0.0 : steps_.front().r0; }
double Trajectory::r_end() const { return steps_.empty() ? 0.0 : steps_.back().r1; }

OdeState Trajectory::eval(double r) const {
    if (steps_.empty()) throw SolverError("Trajectory::eval on empty trajectory");
    // Binary search for the step containing r; clamp to the covered range.
    std::size_t lo = 0, hi = steps_.size() - 1;
    if (r <= steps_.front().r1) {
        lo = 0;
    } else if (r >= steps_.back().r0) {
        lo = steps_.size() - 1;
    } else {
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (steps_[mid].r1 < r)
                lo = mid + 1;
            else
                hi = mid;
        }
    }
    const TrajectoryStep& s = steps_[lo];
    const double h = s.r1 - s.r0;
    const double theta = (h > 0.0) ? std::clamp((r - s.r0) / h, 0.0, 1.0) : 0.0;
    return {r, dense_eval(s.cu, theta), dense_eval(s.cv, theta)};
}

void Trajectory::truncate_at(double r_stop) {
    while (!steps_.empty() && steps_.back().r0 >= r_stop && steps_.size() > 1) steps_.pop_back();
    if (steps_.empty()) return;
    TrajectoryStep& s = steps_.back();
    if (r_stop < s.r1) s.r1 = std::max(r_stop, s.r0);
}

IntegrationResult integrate(const OdeState& start, const RhsParams& params,
                            const IntegratorConfig& config) {
    if (!(config.r_max > start.r)) throw ValidationError("IntegratorConfig: r_max must exceed start r");
    if (!(config.rel_tol > 0.0) || !(config.abs_tol_u > 0.0) || !(config.abs_tol_v > 0.0))
        throw ValidationError("IntegratorConfig: tolerances must be positive");

    IntegrationResult out;
    out.u_max = std::max(0.0, start.u);

    double r = start.r;
    Y2 y{start.u, start.v};
    Y2 k1 = deriv(r, y, params);

    // Initial step: a small fraction of the decay length 1/sqrt(lambda).
    double h = 1e-4 / std::sqrt(std::max(params.lambda, 1e-12));
    if (config.max_step > 0.0) h = std::min(h, config.max_step);
    h = std::min(h, config.r_max - r);

    int stationary_flips = 0;           // count of v sign changes located so far
    bool have_pending_min = false;      // sub-floor turnaround candidate
    double pending_min_r = 0.0, pending_min_u = 0.0;
    bool have_pending_zero = false;     // sub-floor zero-crossing candidate
    double pending_zero_r = 0.0;
    OdeState pending_zero_state{};

    const double underflow_h = 1e-14;

    auto make_event = [&](EventKind kind, double r_ev, const OdeState& st) {
        out.trajectory.truncate_at(r_ev);
        out.event = {kind, r_ev, st};
    };

    while (true) {
        if (out.n_steps++ > config.max_steps)
            throw SolverError("MaxStepsExceeded: integrator used more than " +
                              std::to_string(config.max_steps) + " steps");
        if (h < underflow_h * std::max(1.0, std::abs(r)))
            throw SolverError("StepSizeUnderflow at r = " + std::to_string(r));

        const bool final_step = (r + h >= config.r_max);
        if (final_step) h = config.r_max - r;

        // One Dormand-Prince attempt.
        Y2 k2 = deriv(r + c2 * h, {y.u + h * a21 * k1.u, y.v + h * a21 * k1.v}, params);
        Y2 k3 = deriv(r + c3 * h,
                      {y.u + h * (a31 * k1.u + a32 * k2.u), y.v + h * (a31 * k1.v + a32 * k2.v)},
                      params);
        Y2 k4 = deriv(r + c4 * h,
                      {y.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u),
                       y.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)},
                      params);
        Y2 k5 = deriv(r + c5 * h,
                      {y.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u),
                       y.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)},
                      params);
        Y2 k6 = deriv(r + h,
                      {y.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u),
                       y.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v)},
                      params);
        Y2 y1{y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
              y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
        Y2 k7 = deriv(r + h, y1, params);

        const double err_u =
            h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
        const double err_v =
            h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
        const double sc_u = config.abs_tol_u + config.rel_tol * std::max(std::abs(y.u), std::abs(y1.u));
        const double sc_v = config.abs_tol_v + config.rel_tol * std::max(std::abs(y.v), std::abs(y1.v));
        const double err =
            std::sqrt(0.5 * ((err_u / sc_u) * (err_u / sc_u) + (err_v / sc_v) * (err_v / sc_v)));

        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // Accepted: build the continuous extension.
        TrajectoryStep step;
        step.r0 = r;
        step.r1 = r + h;
        const double du = y1.u - y.u, dv = y1.v - y.v;
        step.cu = {y.u, du, h * k1.u - du, du - h * k7.u - (h * k1.u - du),
                   h * (d1 * k1.u + d3 * k3.u + d4 * k4.u + d5 * k5.u + d6 * k6.u + d7 * k7.u)};
        step.cv = {y.v, dv, h * k1.v - dv, dv - h * k7.v - (h * k1.v - dv),
                   h * (d1 * k1.v + d3 * k3.v + d4 * k4.v + d5 * k5.v + d6 * k6.v + d7 * k7.v)};
        out.trajectory.append(step);

        auto u_at = [&](double th) { return dense_eval(step.cu, th); };
        auto v_at = [&](double th) { return dense_eval(step.cv, th); };
        auto state_at = [&](double th) -> OdeState {
            return {r + th * h, u_at(th), v_at(th)};
        };

        const double floor_u = config.event_floor_rel * out.u_max;

        // Blowup check first: the cap bounds everything else.
        if (config.u_blowup_cap > 0.0 && y1.u >= config.u_blowup_cap) {
            const double cap = config.u_blowup_cap;
            const double th = (y.u < cap)
                                  ? bisect_theta([&](double t) { return u_at(t) - cap; }, 0.0, 1.0)
                                  : 0.0;
            make_event(EventKind::Blowup, r + th * h, state_at(th));
            return out;
        }

        // Stationary points: v sign changes across the step (or interior).
        {
            const double v0 = y.v, v1 = y1.v;
            const double vm = v_at(0.5);
            double th_lo = -1.0, th_hi = -1.0;
            if ((v0 > 0.0) != (vm > 0.0)) {
                th_lo = 0.0;
                th_hi = 0.5;
            } else if ((vm > 0.0) != (v1 > 0.0)) {
                th_lo = 0.5;
                th_hi = 1.0;
            }
            if (th_lo >= 0.0 && !(v0 == 0.0 && v1 == 0.0)) {
                const double th = bisect_theta(v_at, th_lo, th_hi);
                const double u_st = u_at(th);
                ++stationary_flips;
                if (stationary_flips == 1) {
                    out.r_bar = r + th * h;
                    out.u_max = std::max(out.u_max, u_st);
                } else if (u_st > 0.0) {
                    if (u_st > floor_u) {
                        make_event(EventKind::Turnaround, r + th * h, state_at(th));
                        return out;
                    }
                    // Below the event floor: remember the candidate and fire
                    // only if the solution genuinely regrows.
                    if (!have_pending_min || u_st < pending_min_u) {
                        have_pending_min = true;
                        pending_min_r = r + th * h;
                        pending_min_u = u_st;
                    }
                }
            }
        }

        out.u_max = std::max({out.u_max, y1.u, u_at(0.5)});

        // Zero crossing from above: record the dense root, fire once the
        // trajectory has committed to negative territory (below -floor).
        {
            const double u0 = y.u, u1 = y1.u;
            const double um = u_at(0.5);
            double th_lo = -1.0, th_hi = -1.0;
            if (u0 > 0.0 && um <= 0.0) {
                th_lo = 0.0;
                th_hi = 0.5;
            } else if (um > 0.0 && u1 <= 0.0) {
                th_lo = 0.5;
                th_hi = 1.0;
            }
            if (th_lo >= 0.0 && !have_pending_zero) {
                const double th = bisect_theta(u_at, th_lo, th_hi);
                OdeState st = state_at(th);
                st.u = 0.0;
                if (st.v < 0.0) {
                    have_pending_zero = true;
                    pending_zero_r = st.r;
                    pending_zero_state = st;
                }
            } else if (th_lo < 0.0 && have_pending_zero && u1 > floor_u) {
                have_pending_zero = false; // wiggled back above the noise floor
            }
        }

        // Pending sub-floor events resolve once the trajectory commits.
        if (have_pending_zero && y1.u < -floor_u) {
            make_event(EventKind::ZeroCrossing, pending_zero_r, pending_zero_state);
            return out;
        }
        if (have_pending_min && y1.u > std::max(10.0 * pending_min_u, floor_u) && y1.v > 0.0 &&
            y1.u > 0.0) {
            make_event(EventKind::Turnaround, pending_min_r,
                       out.trajectory.eval(pending_min_r));
            return out;
        }

        r = step.r1;
        y = y1;
        k1 = k7; // FSAL

        if (final_step || r >= config.r_max) {
            const bool decayed = std::abs(y.u) <= config.decay_threshold * out.u_max;
            make_event(decayed ? EventKind::ReachedRmaxDecayed : EventKind::ReachedRmaxUndecided,
                       r, {r, y.u, y.v});
            return out;
        }

        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (config.max_step > 0.0) h = std::min(h, config.max_step);
    }
}

} // namespace exgs
