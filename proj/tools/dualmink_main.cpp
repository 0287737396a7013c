#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dualmink/dual_measure.hpp"
#include "dualmink/errors.hpp"
#include "dualmink/geometry.hpp"
#include "dualmink/io.hpp"
#include "dualmink/kernels.hpp"
#include "dualmink/oracle.hpp"
#include "dualmink/quadrature.hpp"
#include "dualmink/solver.hpp"
#include "../src/rng.hpp"

namespace {

constexpr const char* kVersion = "dualmink 0.1.0";

// Exit codes shared by all subcommands:
//   0 success, 1 bad arguments or unreadable input, 2 invalid measure,
//   3 not converged / residual above tolerance, 4 invalid body,
//   5 shape mismatch, 6 internal limit or unexpected failure.
enum ExitCode {
    kOk = 0,
    kBadInput = 1,
    kInvalidMeasure = 2,
    kNotConverged = 3,
    kInvalidBody = 4,
    kShapeMismatch = 5,
    kInternal = 6,
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        const std::string a = argv[i];
        if (a.find(' ') != std::string::npos)
            s += '"' + a + '"';
        else
            s += a;
    }
    return s;
}

void add_env_config(dualmink::io::RunManifest& m) {
    m.version = kVersion;
    m.config.emplace_back("simd", dualmink::kern::active_impl().name);
    if (const char* v = std::getenv("DUALMINK_SIMD"))
        m.config.emplace_back("DUALMINK_SIMD", v);
    if (const char* v = std::getenv("DUALMINK_THREADS"))
        m.config.emplace_back("DUALMINK_THREADS", v);
}

int quad_level_for(int dim, int quad_level) {
    return (dim == 3 && quad_level == 0) ? 4 : quad_level;
}

struct SolveArgs {
    std::string measure_path, out_path, report_path;
    dualmink::SolverConfig cfg;
};

int run_solve(const SolveArgs& a, const std::string& cmdline) {
    using namespace dualmink;
    io::RunManifest man;
    man.command = cmdline;
    man.seed = a.cfg.seed;
    man.inputs.emplace_back("measure", a.measure_path);
    man.config.emplace_back("q", io::format_double(a.cfg.q));
    man.config.emplace_back("tol", io::format_double(a.cfg.tol));
    man.config.emplace_back("max_iter", std::to_string(a.cfg.max_iter));
    man.config.emplace_back("quad_level", std::to_string(a.cfg.quad_level));
    man.config.emplace_back("starts", std::to_string(a.cfg.starts));
    add_env_config(man);

    auto t0 = Clock::now();
    const DiscreteMeasure mu = io::read_measure(a.measure_path);
    man.timings_sec.emplace_back("read", seconds_since(t0));

    t0 = Clock::now();
    SolverReport rep;
    const std::optional<Polytope> body = solve(mu, a.cfg, rep);
    man.timings_sec.emplace_back("solve", seconds_since(t0));

    if (rep.status == SolverStatus::InvalidMeasure) {
        std::cerr << "error: measure is concentrated in a closed hemisphere; "
                     "the inverse problem has no solution\n";
        return kInvalidMeasure;
    }

    t0 = Clock::now();
    io::write_body(a.out_path, *body);
    const std::string report_path =
        a.report_path.empty() ? a.out_path + ".report.json" : a.report_path;
    io::write_report(report_path, rep);
    man.timings_sec.emplace_back("write", seconds_since(t0));
    io::write_manifest(a.out_path + ".manifest.json", man);

    std::cout << "status: " << to_string(rep.status) << "\n"
              << "iterations: " << rep.iterations << "\n"
              << "residual: " << io::format_double(rep.residual) << "\n"
              << "bound_M: " << io::format_double(rep.bound_M)
              << (rep.bound_satisfied ? " (satisfied)" : " (violated)") << "\n";
    return rep.status == SolverStatus::Converged ? kOk : kNotConverged;
}

struct MeasureArgs {
    std::string body_path, out_path;
    double q = -1.0;
    int quad_level = 0;
};

int run_measure(const MeasureArgs& a, const std::string& cmdline) {
    using namespace dualmink;
    io::RunManifest man;
    man.command = cmdline;
    man.inputs.emplace_back("body", a.body_path);
    man.config.emplace_back("q", io::format_double(a.q));
    man.config.emplace_back("quad_level", std::to_string(a.quad_level));
    add_env_config(man);

    auto t0 = Clock::now();
    const Polytope P = io::read_body(a.body_path);
    man.timings_sec.emplace_back("read", seconds_since(t0));

    t0 = Clock::now();
    const QuadratureRule rule = build_rule(P.dim(), quad_level_for(P.dim(), a.quad_level), P);
    const DualCurvature c = dual_curvature(P, a.q, rule);
    std::vector<DiscreteMeasure::Atom> atoms;
    for (int i = 0; i < P.facet_count(); ++i)
        if (c.masses[i] > 0.0) atoms.push_back({P.normals()[i], c.masses[i]});
    const DiscreteMeasure mu(P.dim(), atoms);
    man.timings_sec.emplace_back("compute", seconds_since(t0));

    t0 = Clock::now();
    io::write_measure(a.out_path, mu);
    man.timings_sec.emplace_back("write", seconds_since(t0));
    io::write_manifest(a.out_path + ".manifest.json", man);

    std::cout << "total mass: " << io::format_double(c.total) << "\n"
              << "atoms: " << mu.size() << "\n"
              << "rule error: " << io::format_double(c.rule_error) << "\n";
    return kOk;
}

struct CheckArgs {
    std::string body_path, measure_path;
    double q = -1.0;
    double tol = 1e-6;
    int quad_level = 0;
};

int run_check(const CheckArgs& a) {
    using namespace dualmink;
    const Polytope P = io::read_body(a.body_path);
    const DiscreteMeasure mu = io::read_measure(a.measure_path);
    const QuadratureRule rule = build_rule(P.dim(), quad_level_for(P.dim(), a.quad_level), P);
    const double res = residual(mu, P, a.q, rule);
    const double vol = dual_volume(P, a.q, rule);
    bool sat = false;
    const double M = bound_check(P, mu.total_mass(), a.q, &sat);
    std::cout << "residual: " << io::format_double(res) << "\n"
              << "tolerance: " << io::format_double(a.tol)
              << (res <= a.tol ? " (ok)" : " (exceeded)") << "\n"
              << "mass gap: " << io::format_double(std::fabs(vol - mu.total_mass())) << "\n"
              << "bound_M: " << io::format_double(M) << (sat ? " (satisfied)" : " (violated)")
              << "\n";
    return res <= a.tol ? kOk : kNotConverged;
}

struct GenArgs {
    std::string kind, out_path;
    int dim = 2;
    int count = 8;
    uint64_t seed = 1;
    bool symmetric = false;
};

int run_gen(const GenArgs& a, const std::string& cmdline) {
    using namespace dualmink;
    io::RunManifest man;
    man.command = cmdline;
    man.seed = a.seed;
    man.config.emplace_back("kind", a.kind);
    man.config.emplace_back("dim", std::to_string(a.dim));
    man.config.emplace_back("count", std::to_string(a.count));
    man.config.emplace_back("symmetric", a.symmetric ? "true" : "false");
    add_env_config(man);

    const int pairs = a.count / 2;
    if (a.symmetric && a.count % 2 != 0) {
        std::cerr << "error: --symmetric requires an even --count\n";
        return kBadInput;
    }

    auto directions_for = [&](int n, uint64_t s) {
        std::vector<double> soa;
        sample_directions(a.dim, n, s, soa);
        std::vector<Direction> dirs;
        dirs.reserve(a.symmetric ? 2 * n : n);
        for (int j = 0; j < n; ++j) {
            std::vector<double> v(a.dim);
            for (int d = 0; d < a.dim; ++d) v[d] = soa[static_cast<size_t>(d) * n + j];
            dirs.emplace_back(std::span<const double>(v));
            if (a.symmetric) {
                for (double& x : v) x = -x;
                dirs.emplace_back(std::span<const double>(v));
            }
        }
        return dirs;
    };

    const auto t0 = Clock::now();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const uint64_t s = rng::derive_seed(a.seed, static_cast<uint64_t>(attempt));
        std::mt19937_64 g(rng::derive_seed(s, 0x57));
        try {
            if (a.kind == "body") {
                const auto dirs = directions_for(a.symmetric ? pairs : a.count, s);
                std::vector<double> h(dirs.size());
                if (a.symmetric) {
                    for (size_t i = 0; i < h.size(); i += 2)
                        h[i] = h[i + 1] = rng::uniform(g, 0.8, 1.2);
                } else {
                    for (double& x : h) x = rng::uniform(g, 0.8, 1.2);
                }
                const Polytope P(a.dim, dirs, h);
                if (P.active_facet_count() != P.facet_count()) continue;
                man.timings_sec.emplace_back("generate", seconds_since(t0));
                io::write_body(a.out_path, P);
                io::write_manifest(a.out_path + ".manifest.json", man);
                std::cout << "facets: " << P.facet_count()
                          << " vertices: " << P.vertex_count() << "\n";
                return kOk;
            }
            const auto dirs = directions_for(a.symmetric ? pairs : a.count, s);
            std::vector<DiscreteMeasure::Atom> atoms;
            for (size_t i = 0; i < dirs.size(); ++i) {
                if (a.symmetric && (i % 2 != 0)) {
                    atoms.push_back({dirs[i], atoms.back().w});
                } else {
                    atoms.push_back({dirs[i], rng::uniform(g, 0.5, 1.5)});
                }
            }
            const DiscreteMeasure mu(a.dim, atoms);
            if (!hemisphere_check(mu)) continue;
            man.timings_sec.emplace_back("generate", seconds_since(t0));
            io::write_measure(a.out_path, mu);
            io::write_manifest(a.out_path + ".manifest.json", man);
            std::cout << "atoms: " << mu.size()
                      << " mass: " << io::format_double(mu.total_mass()) << "\n";
            return kOk;
        } catch (const Error&) {
            // Degenerate draw (duplicate directions, unbounded shape); retry
            // with the next derived seed.
            continue;
        }
    }
    std::cerr << "error: could not generate a valid " << a.kind << " in 1000 attempts\n";
    return kInternal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual quermassintegrals, dual curvature measures, and the "
                 "inverse (dual Minkowski) problem for negative indices"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    const std::string cmdline = join_argv(argc, argv);

    SolveArgs sa;
    auto* solve_cmd =
        app.add_subcommand("solve", "Recover a polytope from a discrete measure");
    solve_cmd->add_option("--measure", sa.measure_path, "Input measure JSON")->required();
    solve_cmd->add_option("--q", sa.cfg.q, "Index q (must be < 0)")
        ->required()
        ->check(CLI::Range(-100.0, -1e-9));
    solve_cmd->add_option("--out", sa.out_path, "Output body JSON")->required();
    solve_cmd->add_option("--report", sa.report_path,
                          "Solver report path (default <out>.report.json)");
    solve_cmd->add_option("--tol", sa.cfg.tol, "Residual tolerance")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-iter", sa.cfg.max_iter, "Iteration cap")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--quad-level", sa.cfg.quad_level, "Quadrature level")
        ->check(CLI::Range(0, 24));
    solve_cmd->add_option("--starts", sa.cfg.starts, "Multi-start count")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", sa.cfg.seed, "Seed for start perturbations");

    MeasureArgs ma;
    auto* measure_cmd =
        app.add_subcommand("measure", "Dual curvature measure of a body");
    measure_cmd->add_option("--body", ma.body_path, "Input body JSON")->required();
    measure_cmd->add_option("--q", ma.q, "Index q")->required();
    measure_cmd->add_option("--out", ma.out_path, "Output measure JSON")->required();
    measure_cmd->add_option("--quad-level", ma.quad_level, "Quadrature level")
        ->check(CLI::Range(0, 24));

    CheckArgs ca;
    auto* check_cmd =
        app.add_subcommand("check", "Verify a body against a measure");
    check_cmd->add_option("--body", ca.body_path, "Body JSON")->required();
    check_cmd->add_option("--measure", ca.measure_path, "Measure JSON")->required();
    check_cmd->add_option("--q", ca.q, "Index q (must be < 0)")
        ->required()
        ->check(CLI::Range(-100.0, -1e-9));
    check_cmd->add_option("--tol", ca.tol, "Residual tolerance")->check(CLI::PositiveNumber);
    check_cmd->add_option("--quad-level", ca.quad_level, "Quadrature level")
        ->check(CLI::Range(0, 24));

    GenArgs ga;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random body or measure");
    gen_cmd->add_option("--kind", ga.kind, "body or measure")
        ->required()
        ->check(CLI::IsMember({"body", "measure"}));
    gen_cmd->add_option("--dim", ga.dim, "Dimension")->check(CLI::Range(2, 8));
    gen_cmd->add_option("--count", ga.count, "Facet/atom count")->check(CLI::Range(3, 4096));
    gen_cmd->add_option("--seed", ga.seed, "Seed");
    gen_cmd->add_flag("--symmetric", ga.symmetric, "Origin-symmetric output");
    gen_cmd->add_option("--out", ga.out_path, "Output JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kBadInput;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(sa, cmdline);
        if (measure_cmd->parsed()) return run_measure(ma, cmdline);
        if (check_cmd->parsed()) return run_check(ca);
        if (gen_cmd->parsed()) {
            if (ga.kind == "body" && ga.dim > 3) {
                std::cerr << "error: body generation supports dim 2 and 3\n";
                return kBadInput;
            }
            return run_gen(ga, cmdline);
        }
    } catch (const dualmink::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const dualmink::InvalidMeasure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidMeasure;
    } catch (const dualmink::ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kShapeMismatch;
    } catch (const dualmink::InvalidBody& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidBody;
    } catch (const dualmink::UnboundedWulff& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidBody;
    } catch (const dualmink::NonConvexData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidBody;
    } catch (const dualmink::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
