#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "exterior_gs/errors.hpp"
#include "exterior_gs/problem.hpp"

namespace exgs {

// State of the radial equation u'' + ((N-1)/r) u' = lambda u - |u|^{p-2} u.
struct OdeState {
    double r = 0.0;
    double u = 0.0;
    double v = 0.0; // du/dr
};

// Coefficients the right-hand side needs.  dim = 1 removes the (N-1)/r term,
// which is how the autonomous-limit conservation tests run.
struct RhsParams {
    int dim = 3;
    double p = 4.0;
    double lambda = 1.0;
};

struct OdeDeriv {
    double du;
    double dv;
};

// du/dr = v,  dv/dr = -((N-1)/r) v + lambda u - |u|^{p-2} u.
// The nonlinearity uses the odd extension so event bracketing may step
// slightly past u = 0.
OdeDeriv rhs(const OdeState& s, const RhsParams& params);

// (1/2) v^2 + |u|^p / p - mu u^2 / 2: conserved by the autonomous equation.
double energy_autonomous(double u, double v, double p, double mu);

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol_u = 1e-12;
    double abs_tol_v = 1e-12;
    double max_step = 0.0;           // 0 = unrestricted
    double r_max = 0.0;              // required
    double u_blowup_cap = 0.0;       // required for shooting; 0 disables
    double decay_threshold = 1e-6;   // terminal |u| <= threshold * max u  => decayed
    double event_floor_rel = 1e-9;   // ignore u-events below this fraction of max u
    std::int64_t max_steps = 2000000;
};

enum class EventKind {
    ZeroCrossing,       // u hits 0 with v < 0 beyond the start
    Turnaround,         // second stationary point with u > 0
    Blowup,             // u exceeded the configured cap
    ReachedRmaxDecayed, // got to r_max with |u| below the decay threshold
    ReachedRmaxUndecided,
};

const char* event_kind_name(EventKind k);

struct TerminationEvent {
    EventKind kind;
    double r_event;
    OdeState state;
};

// One accepted Dormand-Prince step with its dense-output coefficients.
struct TrajectoryStep {
    double r0, r1;
    std::array<double, 5> cu; // continuous-extension coefficients for u
    std::array<double, 5> cv; // and for v
};

class Trajectory {
  public:
    const std::vector<TrajectoryStep>& steps() const { return steps_; }
    double r_begin() const;
    double r_end() const;
    OdeState eval(double r) const;

    void append(const TrajectoryStep& s) { steps_.push_back(s); }
    void truncate_at(double r_stop); // drop everything beyond r_stop

  private:
    std::vector<TrajectoryStep> steps_;
};

struct IntegrationResult {
    Trajectory trajectory;
    TerminationEvent event;
    double r_bar = 0.0; // first stationary point (the maximum), if any
    double u_max = 0.0; // running max of u along the trajectory
    std::int64_t n_steps = 0;
};

// Integrates from `start` until the first termination event; throws
// SolverError on step-size underflow or step-count exhaustion.
IntegrationResult integrate(const OdeState& start, const RhsParams& params,
                            const IntegratorConfig& config);

} // namespace exgs
