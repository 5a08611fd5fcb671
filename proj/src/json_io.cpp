#include "openup/json_io.hpp"

#include "openup/errors.hpp"

namespace openup::io {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const Complex& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

Polynomial poly_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected a polynomial as an array of [re, im] pairs");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(complex_from_json(c));
    return Polynomial(std::move(coeffs));
}

Json to_json(const RationalMap& map) {
    Json j;
    j["P"] = to_json(map.P);
    j["Q"] = to_json(map.Q);
    return j;
}

RationalMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("P") || !j.contains("Q"))
        throw ValidationError("expected a map object with \"P\" and \"Q\"");
    return RationalMap::create(poly_from_json(j.at("P")), poly_from_json(j.at("Q")));
}

std::vector<Complex> complex_list_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string("expected \"") + what + "\" to be an array");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(complex_from_json(v));
    return out;
}

Json complex_list_to_json(std::span<const Complex> values) {
    Json arr = Json::array();
    for (const Complex& v : values) arr.push_back(to_json(v));
    return arr;
}

namespace {

void check_n_field(const Json& j, std::size_t list_size, const char* what) {
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer()) throw ValidationError("\"n\" must be an integer");
        if (j.at("n").get<long>() * 2 != static_cast<long>(list_size))
            throw ValidationError(std::string("\"n\" is inconsistent with the length of \"") + what + "\"");
    }
}

}  // namespace

Json to_json(const CriticalPointSpec& spec) {
    Json j;
    j["n"] = spec.n;
    j["eta"] = complex_list_to_json(spec.points);
    return j;
}

CriticalPointSpec critpts_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("eta")) throw ValidationError("critpts spec needs an \"eta\" list");
    auto pts = complex_list_from_json(j.at("eta"), "eta");
    check_n_field(j, pts.size(), "eta");
    return CriticalPointSpec::create(std::move(pts));
}

Json to_json(const CriticalValueSpec& spec) {
    Json j;
    j["n"] = spec.n;
    j["zeta"] = complex_list_to_json(spec.values);
    return j;
}

CriticalValueSpec critvals_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("zeta")) throw ValidationError("critvals spec needs a \"zeta\" list");
    auto vals = complex_list_from_json(j.at("zeta"), "zeta");
    check_n_field(j, vals.size(), "zeta");
    return CriticalValueSpec::create(std::move(vals));
}

Json to_json(const ArcSet& arcs) {
    Json list = Json::array();
    for (const Arc& a : arcs.arcs) list.push_back(complex_list_to_json(a.samples));
    Json j;
    j["arcs"] = list;
    return j;
}

ArcSet arcset_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("arcs") || !j.at("arcs").is_array())
        throw ValidationError("openup spec needs an \"arcs\" list");
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) arcs.push_back(Arc::create(complex_list_from_json(a, "arcs[i]")));
    return ArcSet::create(std::move(arcs));
}

Json to_json(const CriticalPointReport& report) {
    Json j;
    j["pass"] = report.pass;
    j["hausdorff_distance"] = report.hausdorff_distance;
    j["wronskian_degree"] = report.wronskian_degree;
    j["multiplicities_simple"] = report.multiplicities_simple;
    j["computed"] = complex_list_to_json(report.computed);
    return j;
}

Json to_json(const CriticalValueReport& report) {
    Json j;
    j["pass"] = report.pass;
    j["matching_distance"] = report.matching_distance;
    j["nodes_simple"] = report.nodes_simple;
    j["computed_values"] = complex_list_to_json(report.computed_values);
    return j;
}

Json to_json(const OpenUpReport& report) {
    Json fibers;
    fibers["pass"] = report.endpoint_fibers.pass;
    Json entries = Json::array();
    for (const auto& e : report.endpoint_fibers.endpoints) {
        Json entry;
        entry["value"] = to_json(e.value);
        entry["pass"] = e.pass;
        entry["distinct_points"] = e.distinct_points;
        entry["double_points"] = e.double_points;
        entries.push_back(entry);
    }
    fibers["endpoints"] = entries;

    Json j;
    j["pass"] = report.pass();
    j["endpoint_fibers"] = fibers;
    j["curves_simple_disjoint"] = report.curves_simple_disjoint;
    j["exterior_single_valued"] = report.exterior_single_valued;
    j["probe_count"] = report.probe_count;
    j["probe_failures"] = report.probe_failures;
    j["infinity_fixed"] = report.infinity_fixed;
    return j;
}

}  // namespace openup::io
