#pragma once

#include <string>

#include "dualmink/direction.hpp"
#include "dualmink/geometry.hpp"
#include "dualmink/quadrature.hpp"
#include "dualmink/solver.hpp"

namespace dualmink::io {

// JSON readers/writers. Numbers are emitted with 17 significant digits so
// parsing returns the identical bits. Supports and weights therefore round
// trip bit-exactly; normal components can move by one ulp because Direction
// re-normalizes on construction. Readers throw dualmink::Error subclasses
// with a message naming the offending field; malformed JSON raises
// ParseError.

struct ParseError : Error {
    using Error::Error;
};

/// { "dim": n, "normals": [[...], ...], "supports": [...] }
Polytope read_body(const std::string& path);
std::string body_to_json(const Polytope& P);
void write_body(const std::string& path, const Polytope& P);

/// { "dim": n, "atoms": [ { "v": [...], "w": ... }, ... ] }
DiscreteMeasure read_measure(const std::string& path);
std::string measure_to_json(const DiscreteMeasure& mu);
void write_measure(const std::string& path, const DiscreteMeasure& mu);

/// { "status": ..., "iterations": ..., "residual": ..., "phi_trace": [...],
///   "bound_M": ..., "bound_satisfied": ... }
std::string report_to_json(const SolverReport& r);
void write_report(const std::string& path, const SolverReport& r);

/// Quadrature rule dump (debugging aid): nodes, weights, cells, error data.
std::string rule_to_json(const QuadratureRule& rule);

/// Reproducibility record of one CLI run: exact command line, input
/// paths, effective config, library version, seed, wall times.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // role -> path
    std::vector<std::pair<std::string, std::string>> config;  // key -> value
    std::string version;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> timings_sec;  // phase -> seconds
};

std::string manifest_to_json(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);

/// Shared formatting helper: shortest 17-significant-digit decimal.
std::string format_double(double x);

} // namespace dualmink::io
