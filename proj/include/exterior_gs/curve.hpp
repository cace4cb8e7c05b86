#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exterior_gs/pohozaev.hpp"
#include "exterior_gs/shooter.hpp"

namespace exgs {

struct CurvePoint {
    double lambda = 0.0;
    double d = 0.0;          // mass d(lambda)
    double slope_hint = 0.0; // converged boundary slope s*
    double r_bar = 0.0;
    double action = 0.0;
    DiagnosticsReport diagnostics;
};

struct CurveFailure {
    double lambda;
    std::string message;
};

struct MassCurve {
    int N = 3;
    double p = 4.0;
    double R = 1.0;
    double lambda_lo = 0.0, lambda_hi = 0.0;
    int n_points_requested = 0;
    std::vector<CurvePoint> points; // strictly increasing lambda, gates passed
    std::vector<CurveFailure> failures;

    void insert_point(CurvePoint pt); // keeps the lambda ordering
};

struct TraceConfig {
    ShooterConfig shooter;
    double gate_nehari = 1e-6;
    double gate_pohozaev = 1e-4;
    int jobs = 1;          // parallelism of the post-continuation re-solve pass
    bool refine_pass = false;
};

// Sequential warm-started continuation over a log-spaced lambda grid.  Points
// whose diagnostics fail the gates are recorded as failures, not points.
MassCurve trace_curve(int N, double p, double R, double lambda_lo, double lambda_hi, int n_points,
                      const TraceConfig& cfg = {});

// Golden-section refinement of an interior minimum (bracket = three
// consecutive points with d decreasing then increasing), polished by a final
// parabolic fit.  mass_fn defaults to a fresh ground-state solve; tests may
// inject synthetic data.  Throws SolverError ("NoInteriorMinimum").
using MassFn = std::function<double(double)>;
std::pair<double, double> refine_extremum(const MassCurve& curve, const TraceConfig& cfg = {},
                                          double lambda_rel_tol = 1e-4, MassFn mass_fn = {});

enum class ThresholdKind { InteriorMin, InfAtZero, InfAtInfinity };
const char* threshold_kind_name(ThresholdKind k);

struct ThresholdReport {
    Regime regime;
    double eta = 0.0;
    std::optional<double> lambda_hat; // argmin when the minimum is interior
    ThresholdKind kind = ThresholdKind::InteriorMin;
    double window_lo = 0.0, window_hi = 0.0;
    double loglog_slope_at_zero = 0.0;     // fitted over the first 5 points
    double loglog_slope_at_infinity = 0.0; // fitted over the last 5 points
    std::string trend_at_zero;             // "increasing" / "decreasing" / "flat"
    std::string trend_at_infinity;
    MassCurve curve;
};

struct ThresholdConfig {
    TraceConfig trace;
    double window_lo = 1e-3, window_hi = 1e3; // at R = 1; scaled by 1/R^2
    int n_points = 25;
    double lambda_rel_tol = 1e-4;
    double trend_slope_threshold = 0.1; // |log-log slope| above this is a trend
};

ThresholdReport threshold(int N, double p, double R, const ThresholdConfig& cfg = {});

enum class CrossingKind { Transversal, Tangent };

struct Crossing {
    double lambda;
    CrossingKind kind;
};

struct CrossingReport {
    std::vector<Crossing> crossings;
    int count() const { return static_cast<int>(crossings.size()); }
};

// Level-c crossings of the piecewise-linear interpolant; a point run with
// |d - c| <= touch_tol_rel * c whose neighbors sit on the same side is
// reported as a tangency (one solution), not a transversal pair.
CrossingReport count_solutions(const MassCurve& curve, double c, double touch_tol_rel = 1e-9);

enum class StabilityLabel { Stable, Unstable, Indeterminate };
const char* stability_label_name(StabilityLabel s);

// Sign of d'(lambda) by central differences on the log grid; labels inside
// the +-tol_rel * d/lambda band are INDETERMINATE.
std::vector<StabilityLabel> stability_classify(const MassCurve& curve, double tol_rel = 1e-3);

// eta_R = R^{N - 4/(p-2)} eta_1 (exact scaling of the threshold).
double rescale_threshold(double eta_at_r1, int N, double p, double R);

// u_{lambda,R}(x) = R^{2/(2-p)} u_{lambda R^2}(x/R): maps a solution at inner
// radius 1 (parameter lambda R^2) to inner radius R (parameter lambda).
RadialSolution transform_solution(const RadialSolution& sol, double R);

} // namespace exgs
