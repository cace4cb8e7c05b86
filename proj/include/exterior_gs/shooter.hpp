#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "exterior_gs/problem.hpp"
#include "exterior_gs/radial_ode.hpp"

namespace exgs {

enum class ShotClass { Undershoot, Overshoot, Converged };

const char* shot_class_name(ShotClass c);

// Probe-determined mapping between failure events and bracket sides: the
// paper fixes neither, so a ladder of trial slopes decides at runtime which
// of ZERO_CROSSING / TURNAROUND sits below s*.  BLOWUP always classifies as
// overshoot (sub-critical trajectories stay trapped well under the cap).
struct ShotOrientation {
    EventKind undershoot_kind;
    EventKind overshoot_kind;
};

struct ShooterConfig {
    double rel_tol = 1e-10;
    double abs_tol_scale = 1e-12;     // scaled by the amplitude scale lambda^{1/(p-2)}
    double bracket_rel_width = 1e-13; // bisection stop (spec requires <= 1e-12)
    int max_bisections = 200;
    int max_bracket_doublings = 200;
    double tail_match_level = 1e-8; // grid cut / tail fit at this fraction of u_max
    double decay_threshold = 1e-6;
    double blowup_factor = 10.0;    // cap = factor * lambda^{1/(p-2)}
    double r_margin_efolds = 30.0;  // r_max = r_bar_est + margin / sqrt(lambda)
    int max_rmax_retries = 8;
    int samples_per_step = 4;       // dense-output grid resolution
    double stiffness_guard = 1e-3;  // refuse when 2* - p < guard (N >= 3)
};

struct SolverStats {
    int bisections = 0;
    int bracket_expansions = 0;
    int rmax_retries = 0;
    double final_bracket_width = 0.0; // relative
    std::int64_t total_ode_steps = 0;
};

// The computed ground state: dense grid samples up to the tail-match radius,
// then an analytic far field A e^{-sqrt(lambda) r} r^{-(N-1)/2}.
struct RadialSolution {
    ProblemParams params;
    double slope = 0.0; // s* = u'(inner_radius) > 0
    std::vector<double> r, u, v;
    double r_bar = 0.0;
    double u_max = 0.0;
    double tail_coefficient = 0.0;
    double log_tail_coefficient = 0.0; // log of the above; safe at large lambda
    double tail_match_radius = 0.0;
    SolverStats stats;
};

// Maps a termination event to a bracket side; throws SolverError
// ("UndecidedShot") when the trajectory reached r_max without decaying.
ShotClass classify_event(const TerminationEvent& ev, const ShotOrientation& orientation);

// Integrates the shot at slope s and classifies it; throws ValidationError
// ("InvalidSlope") for s <= 0.
ShotClass classify_shot(double s, const ProblemParams& params, const IntegratorConfig& config,
                        const ShotOrientation& orientation);

// Builds the integrator config the shooter uses for a given problem; r_bar_est
// feeds the r_max heuristic.
IntegratorConfig make_integrator_config(const ProblemParams& params, const ShooterConfig& cfg,
                                        double r_bar_est);

// Probes a slope ladder until both failure modes appear, fixing the
// orientation; returns the bracketing pair of slopes found along the way.
struct BracketResult {
    double s_lo, s_hi;
    ShotOrientation orientation;
    double r_bar_est;
    int expansions = 0;
};
BracketResult initial_bracket(const ProblemParams& params, const ShooterConfig& cfg,
                              std::optional<double> hint = std::nullopt);

RadialSolution solve_ground_state(const ProblemParams& params, const ShooterConfig& cfg = {},
                                  std::optional<double> hint = std::nullopt);

// Cubic Hermite interpolation of u (and u') on the solution grid; uses the
// analytic tail beyond the matching radius.
double eval_u(const RadialSolution& sol, double r);
double eval_v(const RadialSolution& sol, double r);

} // namespace exgs
