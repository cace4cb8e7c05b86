// Python bindings for the exterior-domain ground-state laboratory.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exterior_gs/curve.hpp"
#include "exterior_gs/fd_oracle.hpp"
#include "exterior_gs/pohozaev.hpp"
#include "exterior_gs/profile.hpp"
#include "exterior_gs/soliton.hpp"

namespace py = pybind11;
using namespace exgs;

namespace {

py::dict diagnostics_dict(const DiagnosticsReport& d) {
    py::dict out;
    out["nehari_res"] = d.nehari_res;
    out["pohozaev_full_res"] = d.pohozaev_full_res;
    out["boundary_res_a18"] = d.boundary_res_a18;
    out["boundary_res_a20"] = d.boundary_res_a20;
    out["inequality_b9_slack"] = d.inequality_b9_slack;
    out["action"] = d.action;
    out["profile_distance"] = d.profile_distance;
    return out;
}

py::dict solution_dict(const RadialSolution& sol) {
    py::dict out;
    out["N"] = sol.params.N;
    out["p"] = sol.params.p;
    out["lambda"] = sol.params.lambda;
    out["inner_radius"] = sol.params.inner_radius;
    out["slope"] = sol.slope;
    out["r_bar"] = sol.r_bar;
    out["u_max"] = sol.u_max;
    out["tail_coefficient"] = sol.tail_coefficient;
    out["tail_match_radius"] = sol.tail_match_radius;
    out["mass"] = mass(sol).value;
    out["action"] = action(sol);
    out["diagnostics"] = diagnostics_dict(run_diagnostics(sol));
    return out;
}

} // namespace

PYBIND11_MODULE(exteriorgs, m) {
    m.doc() = "Ground states of -Laplace(u) + lambda u = u^{p-1} outside a ball: "
              "shooting solver, mass curves, thresholds, stability.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.def(
        "validate",
        [](int N, double p, double lam, double R) {
            ProblemParams params = validate(N, p, lam, R);
            py::dict out;
            out["N"] = params.N;
            out["p"] = params.p;
            out["lambda"] = params.lambda;
            out["inner_radius"] = params.inner_radius;
            return out;
        },
        py::arg("N"), py::arg("p"), py::arg("lam"), py::arg("R") = 1.0);

    m.def(
        "classify_regime",
        [](int N, double p) { return std::string(regime_tag(classify_regime(N, p))); },
        py::arg("N"), py::arg("p"));

    m.def(
        "critical_exponents",
        [](int N) {
            const CriticalExponents ce = critical_exponents(N);
            return py::make_tuple(ce.p_c, ce.two_star);
        },
        py::arg("N"));

    m.def("surface_area", &surface_area, py::arg("N"));
    m.def("soliton_mass_1d", &soliton_mass_1d, py::arg("p"));

    py::class_<Soliton>(m, "Soliton")
        .def(py::init<double>(), py::arg("p"))
        .def("__call__", &Soliton::value)
        .def("derivative", &Soliton::derivative)
        .def("ode_residual", &Soliton::ode_residual)
        .def("energy", &Soliton::energy)
        .def("mass_closed_form", &Soliton::mass_closed_form)
        .def_property_readonly("amplitude", &Soliton::amplitude);

    py::class_<RadialSolution>(m, "RadialSolution")
        .def_property_readonly("slope", [](const RadialSolution& s) { return s.slope; })
        .def_property_readonly("r_bar", [](const RadialSolution& s) { return s.r_bar; })
        .def_property_readonly("u_max", [](const RadialSolution& s) { return s.u_max; })
        .def_property_readonly("r", [](const RadialSolution& s) { return s.r; })
        .def_property_readonly("u", [](const RadialSolution& s) { return s.u; })
        .def("mass", [](const RadialSolution& s) { return mass(s).value; })
        .def("action", [](const RadialSolution& s) { return action(s); })
        .def("nehari_residual", [](const RadialSolution& s) { return nehari_residual(s); })
        .def("pohozaev_residual",
             [](const RadialSolution& s) { return pohozaev_full_residual(s); })
        .def("soliton_distance",
             [](const RadialSolution& s) { return soliton_profile_distance(s); })
        .def("eval_u", [](const RadialSolution& s, double r) { return eval_u(s, r); })
        .def("summary", &solution_dict);

    m.def(
        "solve",
        [](int N, double p, double lam, double R, std::optional<double> hint) {
            return solve_ground_state(validate(N, p, lam, R), ShooterConfig{}, hint);
        },
        py::arg("N"), py::arg("p"), py::arg("lam"), py::arg("R") = 1.0,
        py::arg("hint") = std::nullopt);

    m.def(
        "solve_summary",
        [](int N, double p, double lam, double R) {
            return solution_dict(solve_ground_state(validate(N, p, lam, R)));
        },
        py::arg("N"), py::arg("p"), py::arg("lam"), py::arg("R") = 1.0);

    py::class_<MassCurve>(m, "MassCurve")
        .def_property_readonly("lambdas",
                               [](const MassCurve& c) {
                                   std::vector<double> out;
                                   for (const auto& pt : c.points) out.push_back(pt.lambda);
                                   return out;
                               })
        .def_property_readonly("masses",
                               [](const MassCurve& c) {
                                   std::vector<double> out;
                                   for (const auto& pt : c.points) out.push_back(pt.d);
                                   return out;
                               })
        .def_property_readonly("n_failures",
                               [](const MassCurve& c) { return c.failures.size(); })
        .def("stability_labels",
             [](const MassCurve& c) {
                 std::vector<std::string> out;
                 for (auto l : stability_classify(c)) out.emplace_back(stability_label_name(l));
                 return out;
             })
        .def(
            "count_solutions",
            [](const MassCurve& c, double level) {
                CrossingReport rep = count_solutions(c, level);
                std::vector<std::pair<double, std::string>> crossings;
                for (const auto& cr : rep.crossings)
                    crossings.emplace_back(cr.lambda, cr.kind == CrossingKind::Transversal
                                                          ? "TRANSVERSAL"
                                                          : "TANGENT");
                return py::make_tuple(rep.count(), crossings);
            },
            py::arg("c"))
        .def("refine_extremum", [](const MassCurve& c) {
            auto [lam, eta] = refine_extremum(c);
            return py::make_tuple(lam, eta);
        });

    m.def(
        "trace_curve",
        [](int N, double p, double R, double lo, double hi, int n) {
            return trace_curve(N, p, R, lo, hi, n);
        },
        py::arg("N"), py::arg("p"), py::arg("R"), py::arg("lambda_lo"), py::arg("lambda_hi"),
        py::arg("n_points"));

    m.def(
        "threshold",
        [](int N, double p, double R) {
            ThresholdReport rep = threshold(N, p, R);
            py::dict out;
            out["regime"] = std::string(regime_tag(rep.regime));
            out["eta"] = rep.eta;
            out["kind"] = std::string(threshold_kind_name(rep.kind));
            out["window"] = py::make_tuple(rep.window_lo, rep.window_hi);
            out["trend_at_zero"] = rep.trend_at_zero;
            out["trend_at_infinity"] = rep.trend_at_infinity;
            if (rep.lambda_hat) out["lambda_hat"] = *rep.lambda_hat;
            return out;
        },
        py::arg("N"), py::arg("p"), py::arg("R") = 1.0);

    m.def("rescale_threshold", &rescale_threshold, py::arg("eta_at_r1"), py::arg("N"),
          py::arg("p"), py::arg("R"));

    m.def(
        "compare_oracle",
        [](int N, double p, double lam, double R, int fd_n) {
            ProblemParams params = validate(N, p, lam, R);
            RadialSolution shot = solve_ground_state(params);
            RadialSolution fd = fd_solve(params, make_fd_grid(params, shot.r_bar, fd_n));
            CompareReport rep = compare(shot, fd);
            py::dict out;
            out["rel_linf"] = rep.rel_linf;
            out["rel_l2"] = rep.rel_l2;
            out["rel_mass_gap"] = rep.rel_mass_gap;
            return out;
        },
        py::arg("N"), py::arg("p"), py::arg("lam"), py::arg("R") = 1.0,
        py::arg("fd_n") = 2001);
}
