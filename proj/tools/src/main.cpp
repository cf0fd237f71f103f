#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "pwa/errors.hpp"
#include "pwa/explorer/certify.hpp"
#include "pwa/explorer/experiments.hpp"
#include "pwa/explorer/io.hpp"
#include "pwa/explorer/theta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertification = 1;
constexpr int kExitUsage = 2;

struct OrbitArgs {
    std::string theta = "pi/11";
    std::vector<std::string> seeds;
    long iters = 100000;
    std::string out = "orbit";
    std::string format = "csv";
    std::string raster = "2000x2000";
    double gamma = 0.5;
};

struct CirclesArgs {
    int k = 3;
    int n_max = 10;
    std::string out = "circles";
    double tol = 1e-8;
    std::string table;
};

struct ScanArgs {
    std::vector<std::string> thetas;
    int seeds_per_theta = 4;
    long iters = 10000;
    std::string out = "scan.csv";
};

std::pair<int, int> parse_raster(const std::string& token) {
    const auto x = token.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("--raster expects WxH, got \"" + token + "\"");
    }
    try {
        return {std::stoi(token.substr(0, x)), std::stoi(token.substr(x + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("--raster expects WxH, got \"" + token + "\"");
    }
}

int cmd_orbit(const OrbitArgs& args) {
    pwa::explorer::ExperimentSpec spec;
    spec.theta = pwa::explorer::parse_theta(args.theta);
    std::vector<std::string> tokens = args.seeds;
    if (tokens.empty()) tokens = {"0.92,0.5", "0.95,0.5", "0.97,0.5"};
    for (const auto& tok : tokens) spec.seeds.push_back(pwa::explorer::parse_seed(tok));
    spec.iterations = args.iters;
    spec.out_prefix = args.out;
    spec.emit_csv = args.format == "csv" || args.format == "both";
    spec.emit_ppm = args.format == "ppm" || args.format == "both";
    std::tie(spec.raster_width, spec.raster_height) = parse_raster(args.raster);
    spec.gamma = args.gamma;

    const auto summary = pwa::explorer::run_orbit(spec);
    for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
        std::printf("seed %zu (%g, %g): radius range [%.6f, %.6f]\n", i, spec.seeds[i].x,
                    spec.seeds[i].y, summary.min_radius[i], summary.max_radius[i]);
    }
    for (const auto& f : summary.files) std::printf("wrote %s\n", f.c_str());
    return kExitOk;
}

int cmd_circles(const CirclesArgs& args) {
    if (!args.table.empty()) {
        const auto rows = pwa::explorer::solve_theta_k_table(3, 8);
        pwa::explorer::write_theta_k_csv(args.table, rows);
        std::printf("wrote %s (K = 3..8)\n", args.table.c_str());
    }
    const auto rows = pwa::explorer::run_circles(args.k, args.n_max, args.out);
    bool all_ok = true;
    for (const auto& row : rows) {
        std::printf("Gamma_%d^%d: %d vertices, rho = %.17g, closure = %.3g, %s\n", row.K, row.N,
                    row.vertices, row.rho, row.closure_residual,
                    row.certified ? "certified" : "NOT CERTIFIED");
        all_ok = all_ok && row.certified && row.closure_residual < args.tol;
    }
    return all_ok ? kExitOk : kExitCertification;
}

int cmd_scan(const ScanArgs& args) {
    std::vector<double> thetas;
    for (const auto& tok : args.thetas) thetas.push_back(pwa::explorer::parse_theta(tok));
    if (thetas.empty()) {
        throw std::invalid_argument("scan: at least one --theta required");
    }
    const auto rows = pwa::explorer::run_scan(thetas, args.seeds_per_theta, args.iters);
    pwa::explorer::write_scan_csv(args.out, rows);
    std::printf("wrote %s (%zu rows)\n", args.out.c_str(), rows.size());
    int failures = 0;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::fprintf(stderr, "row theta=%.6g seed=(%g,%g): %s\n", row.theta, row.seed.x,
                         row.seed.y, row.error.c_str());
            ++failures;
        } else if (!row.within_bound) {
            std::fprintf(stderr, "row theta=%.6g seed=(%g,%g): rho %.6g exceeds 1/4 - theta/pi\n",
                         row.theta, row.seed.x, row.seed.y, row.rho);
            ++failures;
        }
    }
    return failures == 0 ? kExitOk : kExitCertification;
}

int cmd_certify(const std::string& out_dir) {
    const auto results = pwa::explorer::run_certification({out_dir});
    const bool ok = pwa::explorer::print_certification(std::cout, results);
    return ok ? kExitOk : kExitCertification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"batch explorer for a piecewise affine, area-preserving square map"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    OrbitArgs orbit_args;
    auto* orbit = app.add_subcommand("orbit", "iterate seeds and emit CSV / PPM ensembles");
    orbit->add_option("--theta", orbit_args.theta, "angle: decimal, pi/<n> or <m>pi/<n>");
    orbit->add_option("--seed", orbit_args.seeds, "seed \"x,y\" or \"random:<rng-seed>\" (repeatable)");
    orbit->add_option("--iters", orbit_args.iters, "iterations per seed");
    orbit->add_option("--out", orbit_args.out, "output path prefix");
    orbit->add_option("--format", orbit_args.format, "csv, ppm or both")
        ->check(CLI::IsMember({"csv", "ppm", "both"}));
    orbit->add_option("--raster", orbit_args.raster, "raster size WxH");
    orbit->add_option("--gamma", orbit_args.gamma, "display exponent for the density raster");

    CirclesArgs circles_args;
    auto* circles = app.add_subcommand("circles", "solve theta_K and emit certified circles");
    circles->add_option("--k", circles_args.k, "number of hyperbolic steps K (>= 3)");
    circles->add_option("--n-max", circles_args.n_max, "emit Gamma_K^N for N = 0..n-max");
    circles->add_option("--out", circles_args.out, "output path prefix");
    circles->add_option("--tol", circles_args.tol, "closure tolerance for certification");
    circles->add_option("--table", circles_args.table, "also write the theta_K table (K = 3..8)");

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "rotation-number survey over angles and seeds");
    scan->add_option("--theta", scan_args.thetas, "angle token (repeatable)");
    scan->add_option("--seeds-per-theta", scan_args.seeds_per_theta, "random seeds per angle");
    scan->add_option("--iters", scan_args.iters, "iterations per orbit");
    scan->add_option("--out", scan_args.out, "output CSV path");

    std::string certify_out = ".";
    auto* certify = app.add_subcommand("certify", "run the full certification suite");
    certify->add_option("--out", certify_out, "directory for figure artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (orbit->parsed()) return cmd_orbit(orbit_args);
        if (circles->parsed()) return cmd_circles(circles_args);
        if (scan->parsed()) return cmd_scan(scan_args);
        if (certify->parsed()) return cmd_certify(certify_out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCertification;
    }
    return kExitUsage;
}
