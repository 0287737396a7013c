#include "dualmink/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dualmink::io {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

double as_double(const json& j, const std::string& field) {
    if (!j.is_number()) throw ParseError("field '" + field + "' must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ParseError("field '" + field + "' must be an integer");
    return j.get<int>();
}

const json& member(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

std::vector<double> as_vector(const json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError("field '" + field + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(as_double(x, field));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
    if (!out) throw ParseError("write failed for " + path);
}

void append_array(std::string& s, const std::vector<double>& v) {
    s += '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    s += ']';
}

std::string quoted(const std::string& s) {
    json j = s; // reuse the vendored escaping rather than hand-rolling it
    return j.dump();
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Polytope read_body(const std::string& path) {
    const json j = load_json(path);
    const int dim = as_int(member(j, "dim"), "dim");
    const json& jn = member(j, "normals");
    const json& jh = member(j, "supports");
    if (!jn.is_array()) throw ParseError("field 'normals' must be an array");
    std::vector<Direction> normals;
    normals.reserve(jn.size());
    for (const auto& row : jn) {
        const std::vector<double> v = as_vector(row, "normals");
        normals.emplace_back(std::span<const double>(v));
    }
    const std::vector<double> h = as_vector(jh, "supports");
    return Polytope(dim, normals, h);
}

std::string body_to_json(const Polytope& P) {
    std::string s = "{\n  \"dim\": " + std::to_string(P.dim()) + ",\n  \"normals\": [\n";
    for (int i = 0; i < P.facet_count(); ++i) {
        std::vector<double> row(P.dim());
        for (int d = 0; d < P.dim(); ++d) row[d] = P.normals()[i][d];
        s += "    ";
        append_array(s, row);
        s += (i + 1 < P.facet_count()) ? ",\n" : "\n";
    }
    s += "  ],\n  \"supports\": ";
    append_array(s, std::vector<double>(P.supports().begin(), P.supports().end()));
    s += "\n}\n";
    return s;
}

void write_body(const std::string& path, const Polytope& P) {
    write_text(path, body_to_json(P));
}

DiscreteMeasure read_measure(const std::string& path) {
    const json j = load_json(path);
    const int dim = as_int(member(j, "dim"), "dim");
    const json& ja = member(j, "atoms");
    if (!ja.is_array()) throw ParseError("field 'atoms' must be an array");
    std::vector<DiscreteMeasure::Atom> atoms;
    atoms.reserve(ja.size());
    for (const auto& a : ja) {
        const std::vector<double> v = as_vector(member(a, "v"), "v");
        const double w = as_double(member(a, "w"), "w");
        atoms.push_back({Direction(std::span<const double>(v)), w});
    }
    return DiscreteMeasure(dim, atoms);
}

std::string measure_to_json(const DiscreteMeasure& mu) {
    std::string s = "{\n  \"dim\": " + std::to_string(mu.dim()) + ",\n  \"atoms\": [\n";
    const auto& atoms = mu.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) {
        std::vector<double> v(mu.dim());
        for (int d = 0; d < mu.dim(); ++d) v[d] = atoms[i].v[d];
        s += "    { \"v\": ";
        append_array(s, v);
        s += ", \"w\": " + format_double(atoms[i].w) + " }";
        s += (i + 1 < atoms.size()) ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

void write_measure(const std::string& path, const DiscreteMeasure& mu) {
    write_text(path, measure_to_json(mu));
}

std::string report_to_json(const SolverReport& r) {
    std::string s = "{\n";
    s += "  \"status\": " + quoted(to_string(r.status)) + ",\n";
    s += "  \"iterations\": " + std::to_string(r.iterations) + ",\n";
    s += "  \"residual\": " + format_double(r.residual) + ",\n";
    s += "  \"phi_trace\": ";
    append_array(s, r.phi_trace);
    s += ",\n";
    s += "  \"bound_M\": " + format_double(r.bound_M) + ",\n";
    s += "  \"bound_satisfied\": " + std::string(r.bound_satisfied ? "true" : "false") + ",\n";
    s += "  \"start_index\": " + std::to_string(r.start_index) + "\n}\n";
    return s;
}

void write_report(const std::string& path, const SolverReport& r) {
    write_text(path, report_to_json(r));
}

std::string rule_to_json(const QuadratureRule& rule) {
    std::string s = "{\n  \"dim\": " + std::to_string(rule.dim) + ",\n";
    s += "  \"ux\": ";
    append_array(s, rule.ux);
    s += ",\n  \"uy\": ";
    append_array(s, rule.uy);
    if (rule.dim == 3) {
        s += ",\n  \"uz\": ";
        append_array(s, rule.uz);
    }
    s += ",\n  \"w\": ";
    append_array(s, rule.w);
    s += ",\n  \"cell\": [";
    for (size_t i = 0; i < rule.cell.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(rule.cell[i]);
    }
    s += "],\n  \"mixed_area\": " + format_double(rule.mixed_area);
    s += ",\n  \"depth_cap_hits\": " + std::to_string(rule.depth_cap_hits) + "\n}\n";
    return s;
}

std::string manifest_to_json(const RunManifest& m) {
    std::string s = "{\n";
    s += "  \"command\": " + quoted(m.command) + ",\n";
    s += "  \"inputs\": {";
    for (size_t i = 0; i < m.inputs.size(); ++i) {
        if (i) s += ", ";
        s += quoted(m.inputs[i].first) + ": " + quoted(m.inputs[i].second);
    }
    s += "},\n  \"config\": {";
    for (size_t i = 0; i < m.config.size(); ++i) {
        if (i) s += ", ";
        s += quoted(m.config[i].first) + ": " + quoted(m.config[i].second);
    }
    s += "},\n  \"version\": " + quoted(m.version) + ",\n";
    s += "  \"seed\": " + std::to_string(m.seed) + ",\n";
    s += "  \"timings_sec\": {";
    for (size_t i = 0; i < m.timings_sec.size(); ++i) {
        if (i) s += ", ";
        s += quoted(m.timings_sec[i].first) + ": " + format_double(m.timings_sec[i].second);
    }
    s += "}\n}\n";
    return s;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    write_text(path, manifest_to_json(m));
}

} // namespace dualmink::io
