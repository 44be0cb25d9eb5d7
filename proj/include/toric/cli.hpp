#pragma once

/**
 * @file cli.hpp
 * @brief Subcommand dispatch for the toricctl tool.
 *
 * Subcommands: validate <file>, plot <file> -o out.svg, morse --xi a,b
 * [-o csv], reeb --k K --x3 X [--t T --dt D] [-o csv], forms check,
 * example cp2cp2 [-o out.svg]. Exit codes: 0 pass, 1 validation failure,
 * 2 usage error. All outputs are deterministic for fixed inputs and flags.
 */

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toric/assembly.hpp"
#include "toric/checks.hpp"
#include "toric/morse.hpp"
#include "toric/polygon_io.hpp"
#include "toric/report.hpp"
#include "toric/svg.hpp"

namespace toric::cli {

namespace detail {

inline bool write_file(const std::string& path, const std::string& data, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    f << data;
    return true;
}

inline std::string orbit_str(const OrbitLabel& l) {
    switch (l.kind) {
        case OrbitKind::free_t2: return "free-T2";
        case OrbitKind::fixed: return "fixed";
        case OrbitKind::circle: return "circle " + str(l.stabilizer);
    }
    return "?";
}

}  // namespace detail

inline int cmd_validate(const std::string& file, std::ostream& out) {
    Report r;
    r.add("file", file);
    FoldedPolygon poly;
    try {
        poly = load_polygon(file);
    } catch (const ParseError& e) {
        r.add("parse_error", e.what());
        r.add("verdict", false);
        out << r.str();
        return 1;
    } catch (const std::exception& e) {
        r.add("error", e.what());
        r.add("verdict", false);
        out << r.str();
        return 1;
    }
    FoldedReport rep = validate_folded_polygon(poly);
    r.add("loops", poly.loops.size());
    r.add("corners", rep.corners);
    r.add("folds", rep.folds);
    r.add("euler_characteristic", euler_characteristic(poly));
    for (std::size_t i = 0; i < rep.errors.size(); ++i)
        r.add("error." + std::to_string(i), rep.errors[i]);
    r.add("verdict", rep.pass);
    out << r.str();
    return rep.pass ? 0 : 1;
}

inline int cmd_plot(const std::string& file, const std::string& output, std::ostream& out,
                    std::ostream& err) {
    FoldedPolygon poly;
    try {
        poly = load_polygon(file);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    std::string svg = render_image(poly);
    if (!detail::write_file(output, svg, err)) return 1;
    Report r;
    r.add("file", file);
    r.add("output", output);
    r.add("bytes", svg.size());
    out << r.str();
    return 0;
}

inline int cmd_morse(double a, double b, const std::string& csv, std::ostream& out,
                     std::ostream& err) {
    if (a == 0 && b == 0) {
        err << "error: --xi must be nonzero\n";
        return 2;
    }
    MorseReport rep = analyze({a, b});
    Report r;
    r.add("xi", "(" + fmt_double(a) + ", " + fmt_double(b) + ")");
    r.add("critical_set", rep.critical_set == CriticalSet::circle
                              ? "circle {x=y=z=0}"
                              : "line {x=y=0}");
    r.add("morse_bott", rep.is_morse_bott ? "true" : "false");
    std::ostringstream hs;
    hs << "[[" << fmt_double(rep.hessian_at_origin(0, 0)) << ", "
       << fmt_double(rep.hessian_at_origin(0, 1)) << ", "
       << fmt_double(rep.hessian_at_origin(0, 2)) << "], ["
       << fmt_double(rep.hessian_at_origin(1, 0)) << ", "
       << fmt_double(rep.hessian_at_origin(1, 1)) << ", "
       << fmt_double(rep.hessian_at_origin(1, 2)) << "], ["
       << fmt_double(rep.hessian_at_origin(2, 0)) << ", "
       << fmt_double(rep.hessian_at_origin(2, 1)) << ", "
       << fmt_double(rep.hessian_at_origin(2, 2)) << "]]";
    r.add("hessian_at_origin", hs.str());
    if (rep.is_morse_bott) {
        r.add("signature", "(" + std::to_string(rep.n_negative) + "-, " +
                               std::to_string(rep.n_positive) + "+)");
        auto image = separatrix({a, b}, 200);
        r.add("separatrix_samples", image.size());
        r.add("separatrix_origin_slope", separatrix_origin_slope(image));
        if (!csv.empty()) {
            std::string data = "p1,p2\n";
            for (const auto& pt : image)
                data += fmt_double(pt[0]) + "," + fmt_double(pt[1]) + "\n";
            if (!detail::write_file(csv, data, err)) return 1;
            r.add("csv", csv);
        }
    } else {
        r.add("normal_eigenvalue_z_below", rep.normal_eigen_below);
        r.add("normal_eigenvalue_z_above", rep.normal_eigen_above);
        r.add("degeneracy", "normal Hessian changes sign at z=0");
    }
    out << r.str();
    return 0;
}

inline int cmd_reeb(double k, double x3, double t_end, double dt, const std::string& csv,
                    std::ostream& out, std::ostream& err) {
    ReebState s0;
    try {
        s0 = ReebState::from_x3(x3, k);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    FlowResult res = integrate_flow(s0, t_end, dt);
    std::string data = "t,x1,x2,x3,theta,r2,drift\n";
    for (const auto& row : res.trajectory)
        data += fmt_double(row.t) + "," + fmt_double(row.state.x1) + "," +
                fmt_double(row.state.x2) + "," + fmt_double(row.state.x3) + "," +
                fmt_double(row.state.theta) + "," + fmt_double(row.state.r2()) + "," +
                fmt_double(row.drift) + "\n";
    if (csv.empty()) {
        out << data;
    } else {
        if (!detail::write_file(csv, data, err)) return 1;
        Report r;
        r.add("csv", csv);
        r.add("steps", res.trajectory.size() - 1);
        r.add("max_drift_x3", res.max_drift_x3);
        r.add("max_drift_r2", res.max_drift_r2);
        out << r.str();
    }
    return 0;
}

inline int cmd_forms_check(std::ostream& out) {
    SuiteResult res = run_forms_suite();
    out << res.report.str();
    return res.pass ? 0 : 1;
}

inline int cmd_example_cp2cp2(const std::string& svg_path, int samples, std::ostream& out,
                              std::ostream& err) {
    AssembledExample e = build_cp2cp2_example();
    Report r;
    r.add("example", "cp2cp2");
    r.add("charts", e.charts.size());
    r.add("overlaps", e.overlaps.size());
    FoldedReport v = validate_folded_polygon(e.polygon);
    r.add("polygon_valid", v.pass);
    int chi = euler_characteristic(e.polygon);
    r.add("corner_count", chi);
    bool ok = v.pass && chi == 4;

    auto reports = run_overlap_checks(e, samples);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& o = reports[i];
        std::string key = "overlap." + std::to_string(i);
        r.add(key + ".pair", o.chart_a + "/" + o.chart_b);
        r.add(key + ".strip", o.strip_name);
        r.add(key + ".checked", o.checked);
        r.add(key + ".skipped", o.skipped);
        r.add(key + ".form_defect", o.max_form_defect);
        r.add(key + ".moment_defect", o.max_moment_defect);
        r.add(key + ".verdict", o.pass);
        ok = ok && o.pass;
    }

    PatchReport patch = patch_topology_report(e);
    r.add("patch.bottom_edge", detail::orbit_str(patch.bottom_edge));
    r.add("patch.fold_edge", detail::orbit_str(patch.fold_edge));
    r.add("patch.directions_primitive", patch.directions_primitive);
    r.add("patch.unimodular_pair", patch.unimodular_pair);
    r.add("patch.standard_factors", patch.standard_factors);
    ok = ok && patch.directions_primitive && patch.unimodular_pair && patch.standard_factors;

    std::string svg = render_image(e.polygon);
    if (!detail::write_file(svg_path, svg, err)) return 1;
    r.add("svg", svg_path);
    r.add("verdict", ok);
    out << r.str();
    return ok ? 0 : 1;
}

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"folded Delzant polygons and near-symplectic toric local models"};
    app.name("toricctl");
    app.require_subcommand(1);

    std::string file, output, csv, xi_text = "1,0";
    double k = 1.0, x3 = 0.0, t_end = 10.0, dt = 1e-3;
    int samples = 10000;

    auto* validate = app.add_subcommand("validate", "validate a polygon file");
    validate->add_option("file", file, "polygon file")->required();

    auto* plot = app.add_subcommand("plot", "render a polygon file to SVG");
    plot->add_option("file", file, "polygon file")->required();
    plot->add_option("-o,--output", output, "output SVG path")->required();

    auto* morse = app.add_subcommand("morse", "Morse-Bott analysis of a moment component");
    morse->add_option("--xi", xi_text, "component direction a,b")->required();
    morse->add_option("-o,--output", csv, "separatrix CSV path");

    auto* reeb = app.add_subcommand("reeb", "integrate the Reeb flow on the boundary");
    reeb->add_option("--k", k, "sphere level r^2 + x3^2 = k")->required();
    reeb->add_option("--x3", x3, "initial x3")->required();
    reeb->add_option("--t", t_end, "integration time (default 10)");
    reeb->add_option("--dt", dt, "time step (default 1e-3)");
    reeb->add_option("-o,--output", csv, "trajectory CSV path (default stdout)");

    auto* forms = app.add_subcommand("forms", "local model form checks");
    forms->require_subcommand(1);
    auto* forms_check = forms->add_subcommand("check", "run the invariant suite");

    auto* example = app.add_subcommand("example", "worked examples");
    example->require_subcommand(1);
    auto* cp2cp2 = example->add_subcommand("cp2cp2", "assemble and verify CP^2 # CP^2");
    cp2cp2->add_option("-o,--output", output, "output SVG path");
    cp2cp2->add_option("--samples", samples, "overlap samples per strip (default 10000)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    if (*validate) return cmd_validate(file, out);
    if (*plot) return cmd_plot(file, output, out, err);
    if (*morse) {
        double a = 0, b = 0;
        char comma = 0;
        std::istringstream ss(xi_text);
        if (!(ss >> a >> comma >> b) || comma != ',') {
            err << "error: --xi expects 'a,b'\n";
            return 2;
        }
        return cmd_morse(a, b, csv, out, err);
    }
    if (*reeb) return cmd_reeb(k, x3, t_end, dt, csv, out, err);
    if (*forms_check) return cmd_forms_check(out);
    if (*cp2cp2)
        return cmd_example_cp2cp2(output.empty() ? "cp2cp2.svg" : output, samples, out, err);
    return 2;
}

}  // namespace toric::cli
