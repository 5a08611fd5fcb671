#include "openup/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "openup/errors.hpp"
#include "openup/json_io.hpp"
#include "openup/solver_config.hpp"

namespace openup {

namespace {

using io::Json;

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    Json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("input document must be a JSON object");
    if (doc.contains("schema") && doc.at("schema") != 1)
        throw ValidationError("unsupported schema version (expected 1)");
    return doc;
}

SolverConfig solver_config_from(const RunConfig& rc) {
    SolverConfig cfg;
    cfg.rng_seed = rc.seed;
    cfg.num_starts = rc.starts;
    cfg.workers = rc.workers;
    if (rc.tol_newton) cfg.newton_tol = *rc.tol_newton;
    if (rc.tol_dedup) cfg.dedup_radius = *rc.tol_dedup;
    cfg.validate();
    return cfg;
}

std::string with_extension(const std::string& path, const std::string& ext) {
    const std::size_t slash = path.find_last_of('/');
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + ext;
    return path.substr(0, dot) + "." + ext;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << contents;
}

bool wants(const RunConfig& rc, const std::string& kind) {
    return std::find(rc.emit.begin(), rc.emit.end(), kind) != rc.emit.end();
}

void emit_json(const RunConfig& rc, const Json& doc, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (rc.output_path.empty())
        out << text;
    else if (wants(rc, "json"))
        write_file(rc.output_path, text);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string curves_to_csv(std::span<const BoundaryCurve> curves) {
    std::string csv = "curve,index,re,im\n";
    for (std::size_t c = 0; c < curves.size(); ++c)
        for (std::size_t i = 0; i < curves[c].points.size(); ++i)
            csv += std::to_string(c) + "," + std::to_string(i) + "," +
                   format_double(curves[c].points[i].real()) + "," +
                   format_double(curves[c].points[i].imag()) + "\n";
    return csv;
}

std::string render_svg(const ArcSet& arcs, std::span<const BoundaryCurve> curves,
                       std::span<const Complex> critical_points) {
    Box box;
    for (const Arc& a : arcs.arcs) box.expand(bounding_box(a.samples));
    for (const BoundaryCurve& c : curves) box.expand(bounding_box(c.points));
    for (const Complex& z : critical_points) box.expand(z);
    const Box view = box.inflated(0.05 * std::max(1.0, box.diameter()));
    const double scale = std::max(view.width(), view.height());

    auto mapped = [&](Complex z) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", (z.real() - view.xmin) / scale,
                      (view.ymax - z.imag()) / scale);
        return std::string(buf);
    };

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"640\" height=\"640\">\n"
        "  <style>\n"
        "    .arc { stroke: #c0392b; fill: none; stroke-width: 0.004; }\n"
        "    .boundary { stroke: #2c6fbb; fill: none; stroke-width: 0.004; }\n"
        "    .critpt { fill: #222222; }\n"
        "  </style>\n";
    for (const Arc& a : arcs.arcs) {
        svg += "  <polyline class=\"arc\" points=\"";
        for (std::size_t i = 0; i < a.samples.size(); ++i)
            svg += (i ? " " : "") + mapped(a.samples[i]);
        svg += "\"/>\n";
    }
    for (const BoundaryCurve& c : curves) {
        svg += "  <polygon class=\"boundary\" points=\"";
        for (std::size_t i = 0; i < c.points.size(); ++i) svg += (i ? " " : "") + mapped(c.points[i]);
        svg += "\"/>\n";
    }
    for (const Complex& z : critical_points) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  <circle class=\"critpt\" cx=\"%.6f\" cy=\"%.6f\" r=\"0.006\"/>\n",
                      (z.real() - view.xmin) / scale, (view.ymax - z.imag()) / scale);
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

int run_critpts(const RunConfig& rc, const Json& in, std::ostream& out, std::ostream& err) {
    const CriticalPointSpec spec = io::critpts_spec_from_json(in.contains("spec") ? in.at("spec") : in);
    const SolverConfig cfg = solver_config_from(rc);
    const auto solutions = solve_critical_points(spec, cfg);

    Json doc;
    doc["schema"] = 1;
    doc["command"] = "critpts";
    doc["spec"] = io::to_json(spec);
    doc["seed"] = rc.seed;
    doc["starts"] = rc.starts;
    Json list = Json::array();
    for (const auto& sol : solutions) {
        Json entry = io::to_json(sol.map);
        entry["residual"] = sol.residual;
        list.push_back(entry);
    }
    doc["solutions"] = list;
    emit_json(rc, doc, out);
    if (!rc.output_path.empty())
        for (std::size_t i = 0; i < solutions.size(); ++i)
            out << "solution " << i << ": residual=" << format_double(solutions[i].residual)
                << " verified=yes\n";
    if (wants(rc, "csv") || wants(rc, "svg")) err << "note: csv/svg emission applies to openup results only\n";
    return 0;
}

int run_critvals(const RunConfig& rc, const Json& in, std::ostream& out, std::ostream& err) {
    const CriticalValueSpec spec = io::critvals_spec_from_json(in.contains("spec") ? in.at("spec") : in);
    const SolverConfig cfg = solver_config_from(rc);
    const auto solutions = solve_critical_values(spec, cfg);

    Json doc;
    doc["schema"] = 1;
    doc["command"] = "critvals";
    doc["spec"] = io::to_json(spec);
    doc["seed"] = rc.seed;
    doc["starts"] = rc.starts;
    Json list = Json::array();
    for (const auto& sol : solutions) {
        Json entry = io::to_json(sol.map);
        entry["nodes"] = io::complex_list_to_json(sol.nodes);
        entry["residual"] = sol.residual;
        list.push_back(entry);
    }
    doc["solutions"] = list;
    emit_json(rc, doc, out);
    if (!rc.output_path.empty())
        for (std::size_t i = 0; i < solutions.size(); ++i)
            out << "solution " << i << ": residual=" << format_double(solutions[i].residual)
                << " verified=yes\n";
    if (wants(rc, "csv") || wants(rc, "svg")) err << "note: csv/svg emission applies to openup results only\n";
    return 0;
}

int run_openup(const RunConfig& rc, const Json& in, std::ostream& out, std::ostream&) {
    const ArcSet arcs = io::arcset_from_json(in.contains("spec") ? in.at("spec") : in);
    const SolverConfig cfg = solver_config_from(rc);
    const OpenUpResult result = open_up(arcs, cfg);

    Json doc;
    doc["schema"] = 1;
    doc["command"] = "openup";
    doc["spec"] = io::to_json(arcs);
    doc["seed"] = rc.seed;
    doc["starts"] = rc.starts;
    doc["map"] = io::to_json(result.map);
    doc["nodes"] = io::complex_list_to_json(result.nodes);
    Json curves = Json::array();
    for (const BoundaryCurve& c : result.boundary_curves) curves.push_back(io::complex_list_to_json(c.points));
    doc["boundary_curves"] = curves;
    doc["correspondence"] = result.correspondence;
    doc["report"] = io::to_json(result.report);
    Json cands = Json::array();
    for (const auto& cand : result.candidates) {
        Json entry = io::to_json(cand.map);
        entry["residual"] = cand.residual;
        entry["selected"] = cand.selected;
        entry["failure"] = cand.failure;
        cands.push_back(entry);
    }
    doc["candidates"] = cands;
    emit_json(rc, doc, out);

    if (!rc.output_path.empty()) {
        if (wants(rc, "csv")) write_file(with_extension(rc.output_path, "csv"), curves_to_csv(result.boundary_curves));
        if (wants(rc, "svg"))
            write_file(with_extension(rc.output_path, "svg"),
                       render_svg(arcs, result.boundary_curves, result.nodes));
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& cand = result.candidates[i];
            out << "candidate " << i << ": residual=" << format_double(cand.residual) << " "
                << (cand.selected ? "selected" : cand.failure) << "\n";
        }
        out << "open-up verified: all checks pass\n";
    }
    return 0;
}

int run_verify(const RunConfig& rc, const Json& in, std::ostream& out, std::ostream&) {
    const Json& spec_doc = in.contains("spec") ? in.at("spec") : in;

    std::vector<RationalMap> maps;
    if (in.contains("solutions")) {
        for (const auto& s : in.at("solutions")) maps.push_back(io::map_from_json(s));
    } else if (in.contains("map")) {
        maps.push_back(io::map_from_json(in.at("map")));
    } else {
        throw ValidationError("verify input needs a \"map\" object or a \"solutions\" list");
    }
    if (maps.empty()) throw ValidationError("verify input contains no maps");

    Json doc;
    doc["schema"] = 1;
    doc["command"] = "verify";
    Json reports = Json::array();
    bool all_pass = true;
    std::string kind;

    if (spec_doc.contains("eta")) {
        kind = "critpts";
        const CriticalPointSpec spec = io::critpts_spec_from_json(spec_doc);
        for (const RationalMap& map : maps) {
            const auto report = verify_critical_points(map, spec);
            all_pass = all_pass && report.pass;
            reports.push_back(io::to_json(report));
        }
    } else if (spec_doc.contains("zeta")) {
        kind = "critvals";
        const CriticalValueSpec spec = io::critvals_spec_from_json(spec_doc);
        for (const RationalMap& map : maps) {
            const auto report = verify_critical_values(map, spec);
            all_pass = all_pass && report.pass;
            reports.push_back(io::to_json(report));
        }
    } else if (spec_doc.contains("arcs")) {
        kind = "openup";
        const ArcSet arcs = io::arcset_from_json(spec_doc);
        for (const RationalMap& map : maps) {
            Json entry;
            try {
                std::vector<BoundaryCurve> curves;
                for (const Arc& arc : arcs.arcs) curves.push_back(trace_boundary(map, arc));
                const OpenUpReport report = verify_open_up(map, arcs, curves);
                all_pass = all_pass && report.pass();
                entry = io::to_json(report);
            } catch (const BranchJump& e) {
                all_pass = false;
                entry["pass"] = false;
                entry["trace_error"] = e.what();
            }
            reports.push_back(entry);
        }
    } else {
        throw ValidationError("verify input needs \"eta\", \"zeta\", or \"arcs\" (possibly under \"spec\")");
    }

    doc["kind"] = kind;
    doc["pass"] = all_pass;
    doc["reports"] = reports;
    emit_json(rc, doc, out);
    if (!rc.output_path.empty())
        for (std::size_t i = 0; i < reports.size(); ++i)
            out << "report " << i << " (" << kind
                << "): " << (reports[i].value("pass", false) ? "pass" : "FAIL") << "\n";
    return all_pass ? 0 : 2;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation: return 1;
        case ErrorKind::NoSolution: return 2;
        case ErrorKind::Numerical: return 3;
    }
    return 3;
}

void report_error(std::ostream& err, const std::string& type, const std::string& message) {
    Json j;
    j["schema"] = 1;
    j["error"] = Json{{"type", type}, {"message", message}};
    err << j.dump() << "\n";
}

}  // namespace

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    try {
        for (const std::string& kind : rc.emit)
            if (kind != "json" && kind != "csv" && kind != "svg")
                throw ValidationError("unknown emit kind: " + kind);
        const Json in = load_document(rc.input_path);
        if (rc.command == "critpts") return run_critpts(rc, in, out, err);
        if (rc.command == "critvals") return run_critvals(rc, in, out, err);
        if (rc.command == "openup") return run_openup(rc, in, out, err);
        if (rc.command == "verify") return run_verify(rc, in, out, err);
        throw ValidationError("unknown command: " + rc.command);
    } catch (const Error& e) {
        report_error(err, e.name(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report_error(err, "InternalError", e.what());
        return 3;
    }
}

}  // namespace openup
