// exterior-gs: command-line laboratory for the exterior-domain ground states.
//
// Subcommands: solve, curve, threshold, stability, scaling, check,
// compare-oracle.  Structured reports go to JSON, curves to CSV (17
// significant digits, byte-stable), plots to hand-emitted SVG.
// Exit codes: 0 success, 2 validation, 3 solver failure, 4 I/O.

#include <clocale>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exterior_gs/curve.hpp"
#include "exterior_gs/fd_oracle.hpp"
#include "exterior_gs/io.hpp"
#include "exterior_gs/pohozaev.hpp"
#include "exterior_gs/profile.hpp"

using json = nlohmann::ordered_json;
using namespace exgs;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
    std::string out_dir = ".";
    std::optional<int> N;
    std::optional<double> p, lambda, R, lmin, lmax;
    std::optional<int> n_points;
    std::optional<std::string> radii;
    bool svg = false;
    bool use_cache = false;
    int jobs = 1;
    int fd_n = 4001;
    double rel_tol = 1e-10;
};

void apply_config(const std::string& path, const std::string& command, Options& opt) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.contains("schema_version") || !cfg["schema_version"].is_number_integer() ||
        cfg["schema_version"].get<int>() != kSchemaVersion)
        throw ValidationError("config: schema_version " + std::to_string(kSchemaVersion) +
                              " required");

    std::vector<std::string> known = {"schema_version", "out", "jobs", "cache", "rel_tol"};
    auto add = [&known](std::initializer_list<const char*> keys) {
        for (auto* k : keys) known.emplace_back(k);
    };
    if (command == "solve" || command == "check") add({"N", "p", "lambda", "R"});
    if (command == "compare-oracle") add({"N", "p", "lambda", "R", "fd_n"});
    if (command == "curve") add({"N", "p", "R", "lmin", "lmax", "n", "svg"});
    if (command == "threshold" || command == "stability")
        add({"N", "p", "R", "lmin", "lmax", "n"});
    if (command == "scaling") add({"N", "p", "radii", "lmin", "lmax", "n"});

    for (const auto& [key, value] : cfg.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ValidationError("config: unknown field '" + key + "' for command " + command);
        if (key == "N") opt.N = value.get<int>();
        else if (key == "p") opt.p = value.get<double>();
        else if (key == "lambda") opt.lambda = value.get<double>();
        else if (key == "R") opt.R = value.get<double>();
        else if (key == "lmin") opt.lmin = value.get<double>();
        else if (key == "lmax") opt.lmax = value.get<double>();
        else if (key == "n") opt.n_points = value.get<int>();
        else if (key == "radii") opt.radii = value.get<std::string>();
        else if (key == "svg") opt.svg = value.get<bool>();
        else if (key == "out") opt.out_dir = value.get<std::string>();
        else if (key == "jobs") opt.jobs = value.get<int>();
        else if (key == "cache") opt.use_cache = value.get<bool>();
        else if (key == "rel_tol") opt.rel_tol = value.get<double>();
        else if (key == "fd_n") opt.fd_n = value.get<int>();
    }
}

template <typename T>
T require_opt(const std::optional<T>& v, const char* name) {
    if (!v) throw ValidationError(std::string("missing parameter: ") + name);
    return *v;
}

std::filesystem::path out_path(const Options& opt, const std::string& name) {
    std::filesystem::path dir(opt.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

json diagnostics_json(const DiagnosticsReport& d) {
    return json{{"nehari_res", d.nehari_res},
                {"pohozaev_full_res", d.pohozaev_full_res},
                {"boundary_res_a18", d.boundary_res_a18},
                {"boundary_res_a20", d.boundary_res_a20},
                {"inequality_b9_slack", d.inequality_b9_slack},
                {"action", d.action},
                {"profile_distance", d.profile_distance}};
}

ShooterConfig shooter_config(const Options& opt) {
    ShooterConfig cfg;
    cfg.rel_tol = opt.rel_tol;
    return cfg;
}

std::string solution_stem(const ProblemParams& params) {
    return std::to_string(params.N) + "_" + num_token(params.p) + "_" +
           num_token(params.lambda) + "_" + num_token(params.inner_radius);
}

json solution_json(const RadialSolution& sol, const QuadratureResult& m,
                   const DiagnosticsReport& diag) {
    json grid_r = json::array(), grid_u = json::array(), grid_v = json::array();
    const std::size_t stride = std::max<std::size_t>(1, sol.r.size() / 4000);
    for (std::size_t i = 0; i < sol.r.size(); i += stride) {
        grid_r.push_back(sol.r[i]);
        grid_u.push_back(sol.u[i]);
        grid_v.push_back(sol.v[i]);
    }
    return json{{"schema_version", kSchemaVersion},
                {"params",
                 {{"N", sol.params.N},
                  {"p", sol.params.p},
                  {"lambda", sol.params.lambda},
                  {"inner_radius", sol.params.inner_radius}}},
                {"slope", sol.slope},
                {"r_bar", sol.r_bar},
                {"u_max", sol.u_max},
                {"mass", m.value},
                {"mass_tail_fraction", m.tail_fraction},
                {"action", diag.action},
                {"diagnostics", diagnostics_json(diag)},
                {"tail_coefficient", sol.tail_coefficient},
                {"tail_match_radius", sol.tail_match_radius},
                {"solver_stats",
                 {{"bisections", sol.stats.bisections},
                  {"bracket_expansions", sol.stats.bracket_expansions},
                  {"rmax_retries", sol.stats.rmax_retries},
                  {"final_bracket_width", sol.stats.final_bracket_width},
                  {"total_ode_steps", sol.stats.total_ode_steps}}},
                {"grid", {{"r", grid_r}, {"u", grid_u}, {"v", grid_v}}}};
}

int cmd_solve(const Options& opt) {
    ProblemParams params = validate(require_opt(opt.N, "N"), require_opt(opt.p, "p"),
                                    require_opt(opt.lambda, "lambda"), opt.R.value_or(1.0));
    RadialSolution sol = solve_ground_state(params, shooter_config(opt));
    QuadratureResult m = mass(sol);
    DiagnosticsReport diag = run_diagnostics(sol);
    const auto path = out_path(opt, "solution_" + solution_stem(params) + ".json");
    write_text(path, solution_json(sol, m, diag).dump(2) + "\n");
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_check(const Options& opt) {
    ProblemParams params = validate(require_opt(opt.N, "N"), require_opt(opt.p, "p"),
                                    require_opt(opt.lambda, "lambda"), opt.R.value_or(1.0));
    RadialSolution sol = solve_ground_state(params, shooter_config(opt));
    DiagnosticsReport diag = run_diagnostics(sol);
    const double expansion_dev = mass_expansion_relative_deviation(sol);
    json rep{{"schema_version", kSchemaVersion},
             {"params",
              {{"N", params.N},
               {"p", params.p},
               {"lambda", params.lambda},
               {"inner_radius", params.inner_radius}}},
             {"diagnostics", diagnostics_json(diag)},
             {"mass_expansion_relative_deviation", expansion_dev},
             {"c8_slack", c8_slack(sol)},
             {"gates",
              {{"nehari", diag.nehari_res < 1e-6},
               {"pohozaev_full", diag.pohozaev_full_res < 1e-4},
               {"boundary_a18", diag.boundary_res_a18 < 1e-4},
               {"boundary_a20", diag.boundary_res_a20 < 1e-4},
               {"mass_expansion", expansion_dev < 1e-8}}}};
    const auto path = out_path(opt, "check_" + solution_stem(params) + ".json");
    write_text(path, rep.dump(2) + "\n");
    std::cerr << "wrote " << path.string() << "\n";
    bool all = true;
    for (const auto& [k, v] : rep["gates"].items()) all = all && v.get<bool>();
    return all ? 0 : 3;
}

// ---- curve -------------------------------------------------------------

std::string curve_cache_key(int N, double p, double R, const TraceConfig& cfg) {
    std::string key = "N=" + std::to_string(N) + "|p=" + fmt17(p) + "|R=" + fmt17(R) +
                      "|rel_tol=" + fmt17(cfg.shooter.rel_tol) +
                      "|abs_scale=" + fmt17(cfg.shooter.abs_tol_scale) +
                      "|bracket=" + fmt17(cfg.shooter.bracket_rel_width) +
                      "|tail=" + fmt17(cfg.shooter.tail_match_level) +
                      "|gates=" + fmt17(cfg.gate_nehari) + "," + fmt17(cfg.gate_pohozaev);
    return fnv1a_hex(key);
}

json point_json(const CurvePoint& pt) {
    return json{{"lambda", pt.lambda},    {"d", pt.d},
                {"slope", pt.slope_hint}, {"r_bar", pt.r_bar},
                {"action", pt.action},    {"diagnostics", diagnostics_json(pt.diagnostics)}};
}

CurvePoint point_from_json(const json& j) {
    CurvePoint pt;
    pt.lambda = j.at("lambda").get<double>();
    pt.d = j.at("d").get<double>();
    pt.slope_hint = j.at("slope").get<double>();
    pt.r_bar = j.at("r_bar").get<double>();
    pt.action = j.at("action").get<double>();
    const json& d = j.at("diagnostics");
    pt.diagnostics.nehari_res = d.at("nehari_res").get<double>();
    pt.diagnostics.pohozaev_full_res = d.at("pohozaev_full_res").get<double>();
    pt.diagnostics.boundary_res_a18 = d.at("boundary_res_a18").get<double>();
    pt.diagnostics.boundary_res_a20 = d.at("boundary_res_a20").get<double>();
    pt.diagnostics.inequality_b9_slack = d.at("inequality_b9_slack").get<double>();
    pt.diagnostics.action = d.at("action").get<double>();
    pt.diagnostics.profile_distance = d.at("profile_distance").get<double>();
    return pt;
}

MassCurve traced_curve(const Options& opt, int N, double p, double R, double lmin, double lmax,
                       int n) {
    TraceConfig cfg;
    cfg.shooter = shooter_config(opt);
    cfg.jobs = opt.jobs;
    cfg.refine_pass = opt.jobs > 1;

    std::filesystem::path cache_path;
    json cache = json::object();
    if (opt.use_cache) {
        cache_path = out_path(opt, "cache_curve_" + curve_cache_key(N, p, R, cfg) + ".json");
        if (std::filesystem::exists(cache_path)) {
            std::ifstream in(cache_path);
            try {
                in >> cache;
            } catch (const json::exception&) {
                cache = json::object();
            }
        }
        if (!cache.is_object()) cache = json::object();
    }

    MassCurve curve;
    int reused = 0;
    if (opt.use_cache && cache.contains("points")) {
        curve.N = N;
        curve.p = p;
        curve.R = R;
        curve.lambda_lo = lmin;
        curve.lambda_hi = lmax;
        curve.n_points_requested = n;
        std::vector<double> missing;
        const double la = std::log(lmin), lb = std::log(lmax);
        for (int i = 0; i < n; ++i) {
            double lam = std::exp(la + (lb - la) * i / (n - 1));
            if (i == 0) lam = lmin;
            if (i == n - 1) lam = lmax;
            const std::string key = fmt17(lam);
            if (cache["points"].contains(key)) {
                curve.insert_point(point_from_json(cache["points"][key]));
                ++reused;
            } else {
                missing.push_back(lam);
            }
        }
        for (double lam : missing) {
            ProblemParams params{N, p, lam, R};
            std::optional<double> hint;
            for (const auto& pt : curve.points)
                if (pt.lambda < lam)
                    hint = pt.slope_hint * std::pow(lam / pt.lambda, 1.0 / (p - 2.0) + 0.5);
            try {
                RadialSolution sol = solve_ground_state(params, cfg.shooter, hint);
                CurvePoint pt;
                pt.lambda = lam;
                pt.d = mass(sol).value;
                pt.slope_hint = sol.slope;
                pt.r_bar = sol.r_bar;
                pt.diagnostics = run_diagnostics(sol);
                pt.action = pt.diagnostics.action;
                curve.insert_point(pt);
            } catch (const std::exception& e) {
                curve.failures.push_back({lam, std::string("SolveFailed: ") + e.what()});
            }
        }
        std::cerr << "cache: reused " << reused << "/" << n << " points\n";
    } else {
        curve = trace_curve(N, p, R, lmin, lmax, n, cfg);
        if (opt.use_cache) std::cerr << "cache: reused 0/" << n << " points\n";
    }

    if (opt.use_cache) {
        json pts = json::object();
        for (const auto& pt : curve.points) pts[fmt17(pt.lambda)] = point_json(pt);
        json fresh{{"schema_version", kSchemaVersion},
                   {"key", {{"N", N}, {"p", p}, {"R", R}}},
                   {"points", pts}};
        write_text(cache_path, fresh.dump(2) + "\n");
    }
    return curve;
}

std::string curve_csv(const MassCurve& curve, const std::vector<StabilityLabel>& labels) {
    std::string csv = "lambda,d,slope,r_bar,action,nehari_res,pohozaev_res,stability_label\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const CurvePoint& pt = curve.points[i];
        csv += fmt17(pt.lambda) + "," + fmt17(pt.d) + "," + fmt17(pt.slope_hint) + "," +
               fmt17(pt.r_bar) + "," + fmt17(pt.action) + "," +
               fmt17(pt.diagnostics.nehari_res) + "," + fmt17(pt.diagnostics.pohozaev_full_res) +
               "," + stability_label_name(labels[i]) + "\n";
    }
    return csv;
}

std::string curve_svg(const MassCurve& curve) {
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& pt : curve.points) {
        const double x = std::log10(pt.lambda), y = std::log10(pt.d);
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (y1 - y0 < 1e-6) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1) << "\" y2=\""
        << py(y0) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x0) << "\" y2=\""
        << py(y1) << "\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d) {
        svg << "<line x1=\"" << px(d) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(d) << "\" y2=\""
            << py(y0) + 6 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(d) << "\" y=\"" << py(y0) + 22
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d) {
        svg << "<line x1=\"" << px(x0) - 6 << "\" y1=\"" << py(d) << "\" x2=\"" << px(x0)
            << "\" y2=\"" << py(d) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px(x0) - 10 << "\" y=\"" << py(d) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    svg << "<text x=\"" << (ml + (W - ml - mr) / 2) << "\" y=\"" << H - 10
        << "\" font-size=\"13\" text-anchor=\"middle\">lambda (log)</text>\n";
    svg << "<text x=\"16\" y=\"" << (mt + (H - mt - mb) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (mt + (H - mt - mb) / 2) << ")\">d(lambda) (log)</text>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& pt : curve.points)
        svg << px(std::log10(pt.lambda)) << "," << py(std::log10(pt.d)) << " ";
    svg << "\"/>\n";
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        if (curve.points[i].d < curve.points[best].d) best = i;
    svg << "<circle cx=\"" << px(std::log10(curve.points[best].lambda)) << "\" cy=\""
        << py(std::log10(curve.points[best].d))
        << "\" r=\"4\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

int cmd_curve(const Options& opt) {
    const int N = require_opt(opt.N, "N");
    const double p = require_opt(opt.p, "p");
    const double R = opt.R.value_or(1.0);
    const double lmin = require_opt(opt.lmin, "lmin");
    const double lmax = require_opt(opt.lmax, "lmax");
    const int n = require_opt(opt.n_points, "n");
    validate(N, p, lmin, R);

    MassCurve curve = traced_curve(opt, N, p, R, lmin, lmax, n);
    const auto labels = stability_classify(curve);
    const std::string stem =
        "curve_" + std::to_string(N) + "_" + num_token(p) + "_" + num_token(R);
    const auto csv_path = out_path(opt, stem + ".csv");
    write_text(csv_path, curve_csv(curve, labels));
    std::cerr << "wrote " << csv_path.string() << "\n";
    for (const auto& f : curve.failures)
        std::cerr << "note: lambda = " << fmt17(f.lambda) << " failed: " << f.message << "\n";
    if (opt.svg && !curve.points.empty()) {
        const auto svg_path = out_path(opt, stem + ".svg");
        write_text(svg_path, curve_svg(curve));
        std::cerr << "wrote " << svg_path.string() << "\n";
    }
    return curve.failures.empty() ? 0 : 3;
}

json threshold_json(const ThresholdReport& rep) {
    json out{{"schema_version", kSchemaVersion},
             {"regime", regime_tag(rep.regime)},
             {"eta", rep.eta},
             {"kind", threshold_kind_name(rep.kind)},
             {"window", {rep.window_lo, rep.window_hi}},
             {"loglog_slope_at_zero", rep.loglog_slope_at_zero},
             {"loglog_slope_at_infinity", rep.loglog_slope_at_infinity},
             {"trend_at_zero", rep.trend_at_zero},
             {"trend_at_infinity", rep.trend_at_infinity},
             {"trend_note", "trends classify |log-log slope| > 0.1 over the 5 end points"}};
    if (rep.lambda_hat) out["lambda_hat"] = *rep.lambda_hat;
    return out;
}

int cmd_threshold(const Options& opt) {
    const int N = require_opt(opt.N, "N");
    const double p = require_opt(opt.p, "p");
    const double R = opt.R.value_or(1.0);
    ThresholdConfig cfg;
    cfg.trace.shooter = shooter_config(opt);
    cfg.trace.jobs = opt.jobs;
    cfg.trace.refine_pass = opt.jobs > 1;
    if (opt.lmin) cfg.window_lo = *opt.lmin * R * R; // threshold() rescales by 1/R^2
    if (opt.lmax) cfg.window_hi = *opt.lmax * R * R;
    if (opt.n_points) cfg.n_points = *opt.n_points;
    ThresholdReport rep = threshold(N, p, R, cfg);
    const auto path = out_path(opt, "threshold_" + std::to_string(N) + "_" + num_token(p) + "_" +
                                        num_token(R) + ".json");
    write_text(path, threshold_json(rep).dump(2) + "\n");
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_stability(const Options& opt) {
    const int N = require_opt(opt.N, "N");
    const double p = require_opt(opt.p, "p");
    const double R = opt.R.value_or(1.0);
    const double lmin = opt.lmin.value_or(1e-3);
    const double lmax = opt.lmax.value_or(1e3);
    const int n = opt.n_points.value_or(25);
    validate(N, p, lmin, R);

    MassCurve curve = traced_curve(opt, N, p, R, lmin, lmax, n);
    const auto labels = stability_classify(curve);
    json pts = json::array();
    int flips = 0;
    StabilityLabel prev = StabilityLabel::Indeterminate;
    bool have_prev = false;
    std::optional<double> flip_lambda;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        pts.push_back({{"lambda", curve.points[i].lambda},
                       {"d", curve.points[i].d},
                       {"label", stability_label_name(labels[i])}});
        if (labels[i] == StabilityLabel::Indeterminate) continue;
        if (have_prev && labels[i] != prev) {
            ++flips;
            flip_lambda = curve.points[i].lambda;
        }
        prev = labels[i];
        have_prev = true;
    }
    json rep{{"schema_version", kSchemaVersion},
             {"regime", regime_tag(classify_regime(N, p))},
             {"points", pts},
             {"sign_flips", flips}};
    if (flip_lambda) rep["flip_lambda"] = *flip_lambda;
    const auto path = out_path(opt, "stability_" + std::to_string(N) + "_" + num_token(p) + "_" +
                                        num_token(R) + ".json");
    write_text(path, rep.dump(2) + "\n");
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_scaling(const Options& opt) {
    const int N = require_opt(opt.N, "N");
    const double p = require_opt(opt.p, "p");
    std::vector<double> radii;
    {
        std::stringstream ss(require_opt(opt.radii, "radii"));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) radii.push_back(std::stod(tok));
    }
    if (radii.empty()) throw ValidationError("missing parameter: radii");

    ThresholdConfig cfg;
    cfg.trace.shooter = shooter_config(opt);
    cfg.trace.jobs = opt.jobs;
    cfg.trace.refine_pass = opt.jobs > 1;
    if (opt.lmin) cfg.window_lo = *opt.lmin;
    if (opt.lmax) cfg.window_hi = *opt.lmax;
    if (opt.n_points) cfg.n_points = *opt.n_points;

    ThresholdReport base = threshold(N, p, 1.0, cfg);
    std::string csv = "R,eta_direct,eta_rescaled_from_R1,ratio,kind\n";
    for (double R : radii) {
        ThresholdReport rep = (R == 1.0) ? base : threshold(N, p, R, cfg);
        const double predicted = rescale_threshold(base.eta, N, p, R);
        csv += fmt17(R) + "," + fmt17(rep.eta) + "," + fmt17(predicted) + "," +
               fmt17(rep.eta / predicted) + "," + threshold_kind_name(rep.kind) + "\n";
    }
    const auto path =
        out_path(opt, "scaling_" + std::to_string(N) + "_" + num_token(p) + ".csv");
    write_text(path, csv);
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_compare_oracle(const Options& opt) {
    ProblemParams params = validate(require_opt(opt.N, "N"), require_opt(opt.p, "p"),
                                    require_opt(opt.lambda, "lambda"), opt.R.value_or(1.0));
    RadialSolution shot = solve_ground_state(params, shooter_config(opt));
    FdGrid grid = make_fd_grid(params, shot.r_bar, opt.fd_n);
    RadialSolution fd = fd_solve(params, grid);
    CompareReport rep = compare(shot, fd);
    json out{{"schema_version", kSchemaVersion},
             {"params",
              {{"N", params.N},
               {"p", params.p},
               {"lambda", params.lambda},
               {"inner_radius", params.inner_radius}}},
             {"rel_linf", rep.rel_linf},
             {"rel_l2", rep.rel_l2},
             {"rel_mass_gap", rep.rel_mass_gap},
             {"shooting", {{"slope", shot.slope}, {"mass", mass(shot).value}}},
             {"fd", {{"nodes", grid.n}, {"r_out", grid.r_out}, {"mass", mass(fd).value}}}};
    const auto path = out_path(opt, "compare_" + solution_stem(params) + ".json");
    write_text(path, out.dump(2) + "\n");
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"exterior-gs: ground states, mass curves, and thresholds on the exterior "
                 "of a ball"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path;

    CLI::App* solve = app.add_subcommand("solve", "compute one ground state");
    CLI::App* curve = app.add_subcommand("curve", "trace the mass curve d(lambda)");
    CLI::App* thresh = app.add_subcommand("threshold", "locate the existence threshold eta");
    CLI::App* stab = app.add_subcommand("stability", "classify orbital stability along d");
    CLI::App* scal = app.add_subcommand("scaling", "thresholds across inner radii");
    CLI::App* check = app.add_subcommand("check", "identity suite on one solve");
    CLI::App* cmp = app.add_subcommand("compare-oracle", "shooting vs finite differences");

    for (CLI::App* sub : {solve, curve, thresh, stab, scal, check, cmp}) {
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--jobs", opt.jobs, "parallel refinement workers");
        sub->add_flag("--cache", opt.use_cache, "reuse cached curve points");
        sub->add_option("--rel-tol", opt.rel_tol, "integrator relative tolerance");
        sub->add_option("-N,--dim", opt.N, "space dimension");
        sub->add_option("-p,--exponent", opt.p, "nonlinearity exponent");
    }
    for (CLI::App* sub : {solve, check, cmp}) {
        sub->add_option("--lambda", opt.lambda, "spectral parameter");
        sub->add_option("-R,--radius", opt.R, "inner radius (default 1)");
    }
    for (CLI::App* sub : {curve, thresh, stab}) {
        sub->add_option("-R,--radius", opt.R, "inner radius (default 1)");
        sub->add_option("--lmin", opt.lmin, "lambda window lower edge");
        sub->add_option("--lmax", opt.lmax, "lambda window upper edge");
        sub->add_option("-n,--points", opt.n_points, "number of continuation points");
    }
    curve->add_flag("--svg", opt.svg, "emit a log-log SVG plot");
    scal->add_option("--radii", opt.radii, "comma-separated inner radii");
    scal->add_option("--lmin", opt.lmin, "lambda window lower edge (at R = 1)");
    scal->add_option("--lmax", opt.lmax, "lambda window upper edge (at R = 1)");
    scal->add_option("-n,--points", opt.n_points, "continuation points per radius");
    cmp->add_option("--fd-n", opt.fd_n, "finite-difference node count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    try {
        if (!config_path.empty()) {
            Options from_file;
            apply_config(config_path, command, from_file);
            auto keep_flag = [&](const char* flag) {
                const CLI::Option* o = sub->get_option_no_throw(flag);
                return o != nullptr && o->count() > 0;
            };
            if (!keep_flag("--dim") && from_file.N) opt.N = from_file.N;
            if (!keep_flag("--exponent") && from_file.p) opt.p = from_file.p;
            if (!keep_flag("--lambda") && from_file.lambda) opt.lambda = from_file.lambda;
            if (!keep_flag("--radius") && from_file.R) opt.R = from_file.R;
            if (!keep_flag("--lmin") && from_file.lmin) opt.lmin = from_file.lmin;
            if (!keep_flag("--lmax") && from_file.lmax) opt.lmax = from_file.lmax;
            if (!keep_flag("--points") && from_file.n_points) opt.n_points = from_file.n_points;
            if (!keep_flag("--radii") && from_file.radii) opt.radii = from_file.radii;
            if (!keep_flag("--out")) opt.out_dir = from_file.out_dir;
            if (!keep_flag("--jobs")) opt.jobs = from_file.jobs;
            if (!keep_flag("--rel-tol")) opt.rel_tol = from_file.rel_tol;
            if (!keep_flag("--cache") && from_file.use_cache) opt.use_cache = true;
            if (!keep_flag("--fd-n")) opt.fd_n = from_file.fd_n;
            if (!keep_flag("--svg") && from_file.svg) opt.svg = true;
        }

        if (command == "solve") return cmd_solve(opt);
        if (command == "curve") return cmd_curve(opt);
        if (command == "threshold") return cmd_threshold(opt);
        if (command == "stability") return cmd_stability(opt);
        if (command == "scaling") return cmd_scaling(opt);
        if (command == "check") return cmd_check(opt);
        if (command == "compare-oracle") return cmd_compare_oracle(opt);
        throw ValidationError("unknown command: " + command);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
