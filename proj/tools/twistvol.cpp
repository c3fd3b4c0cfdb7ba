// twistvol command-line front end.
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "twistvol/checks.hpp"
#include "twistvol/io.hpp"
#include "twistvol/partition.hpp"
#include "twistvol/potential.hpp"

using namespace twistvol;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int n = 2;
    double tol = 1e-11;
    int max_iter = 200;
    std::vector<double> hbars;
    std::string points = "auto";
    std::string halfwidth = "auto";
    std::string x = "0,0";
    std::string format;
    double hbar_start = 0.2;
    double hbar_end = 0.025;
    int steps = 4;
};

void check_hbar(double h) {
    if (!(h > 0.0 && h <= 0.25)) throw UsageError(fmt::format("hbar {} outside (0, 1/4]", h));
}

double parse_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError(fmt::format("malformed {}: '{}'", what, s));
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError(fmt::format("malformed {}: '{}'", what, s));
    return v;
}

cplx parse_x(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--x expects re,im");
    return {parse_double(s.substr(0, comma), "--x"), parse_double(s.substr(comma + 1), "--x")};
}

ContourPolicy parse_policy(const Config& c) {
    ContourPolicy pol;
    if (c.points != "auto") {
        const double v = parse_double(c.points, "--points");
        if (v < 2 || v != std::floor(v) || v > 1e6) throw UsageError("--points must be an integer >= 2 or 'auto'");
        pol.points = static_cast<int>(v);
    }
    if (c.halfwidth != "auto") {
        pol.halfwidth = parse_double(c.halfwidth, "--halfwidth");
        if (pol.halfwidth <= 0) throw UsageError("--halfwidth must be positive or 'auto'");
    }
    return pol;
}

void set_threads() {
    const char* env = std::getenv("TWISTVOL_THREADS");
    if (!env) return;
    const std::string s(env);
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v < 1) throw UsageError("TWISTVOL_THREADS must be a positive integer");
    omp_set_num_threads(static_cast<int>(v));
}

int cmd_info(const Config& c) {
    const TwistKnotSpec spec = build_spec(c.n);
    const Triangulation ideal = build_ideal(spec);
    const Triangulation h = build_h(spec);
    const KernelData kd = kernel_data(spec);
    if (c.format == "text") {
        fmt::print("n = {} ({}), p = {}\n", spec.n, spec.odd() ? "odd" : "even", spec.p);
        fmt::print("ideal: {} tetrahedra, {} edges, {} faces\n", ideal.tets.size(), ideal.num_edges, ideal.num_faces);
        fmt::print("H: {} tetrahedra, {} edges, {} faces\n", h.tets.size(), h.num_edges, h.num_faces);
        std::string signs;
        for (const auto& t : h.tets) signs += fmt::format(" {}{}", t.label, t.sign > 0 ? '+' : '-');
        fmt::print("signs:{}\n", signs);
        fmt::print("2Q =\n");
        for (int i = 0; i < kd.q_twice.rows(); ++i) {
            std::string row;
            for (int j = 0; j < kd.q_twice.cols(); ++j) row += fmt::format(" {:3d}", kd.q_twice(i, j));
            fmt::print("{}\n", row);
        }
        std::string w;
        for (int i = 0; i < kd.w_pi.size(); ++i) w += fmt::format(" {}", kd.w_pi[i]);
        fmt::print("W / pi ={}\n", w);
        return 0;
    }
    ojson j;
    j["n"] = spec.n;
    j["p"] = spec.p;
    j["parity"] = spec.odd() ? "odd" : "even";
    j["ideal"] = triangulation_to_json(ideal);
    j["h"] = triangulation_to_json(h);
    j["h"]["knot_edge"] = h.knot_edge;
    ojson q = ojson::array();
    for (int r = 0; r < kd.q_twice.rows(); ++r) {
        ojson row = ojson::array();
        for (int k = 0; k < kd.q_twice.cols(); ++k) row.push_back(0.5 * kd.q_twice(r, k));
        q.push_back(row);
    }
    j["Q"] = q;
    std::vector<double> w;
    for (int i = 0; i < kd.w_pi.size(); ++i) w.push_back(kd.w_vector()[i]);
    j["W"] = w;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_solve(const Config& c) {
    SolverOptions opt;
    opt.tol = c.tol;
    opt.max_iter = c.max_iter;
    const CompleteStructure cs = maximize_volume(build_spec(c.n), opt);
    std::cout << complete_structure_to_json(cs).dump(2) << "\n";
    return 0;
}

int cmd_potential(const Config& c) {
    const CompleteStructure cs = maximize_volume(build_spec(c.n));
    const cplx S = potential_S(cs.spec, cs.y0);
    const cplx det = hess_S(cs.spec, cs.y0).determinant();
    ojson j;
    j["n"] = c.n;
    j["grad_norm"] = grad_S(cs.spec, cs.y0).norm();
    j["det_hess"] = {det.real(), det.imag()};
    j["re_S"] = S.real();
    j["minus_volume"] = -cs.volume;
    j["discrepancy"] = S.real() + cs.volume;
    j["forms_discrepancy"] = std::abs(S - potential_S_rewritten(cs.spec, cs.y0));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_partition(const Config& c) {
    const ContourPolicy pol = parse_policy(c);
    const cplx x = parse_x(c.x);
    const CompleteStructure cs = maximize_volume(build_spec(c.n));
    std::vector<PartitionResult> rows;
    for (double h : c.hbars) rows.push_back(evaluate_Jfrak(cs, h, x, make_contour(cs, h, pol)));
    if (c.format == "csv") {
        std::cout << kSweepCsvHeader << "\n";
        for (const auto& r : rows) std::cout << partition_csv_row(cs.spec, r) << "\n";
        return 0;
    }
    ojson out = ojson::array();
    for (const auto& r : rows) out.push_back(partition_result_to_json(cs.spec, r));
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const Config& c) {
    const ContourPolicy pol = parse_policy(c);
    std::vector<double> hs;
    for (int i = 0; i < c.steps; ++i)
        hs.push_back(c.hbar_start * std::pow(c.hbar_end / c.hbar_start, static_cast<double>(i) / (c.steps - 1)));
    hs.back() = c.hbar_end;
    const CompleteStructure cs = maximize_volume(build_spec(c.n));
    const SweepResult s = volume_sweep(cs, hs, pol);
    std::cout << kSweepCsvHeader << "\n";
    for (const auto& r : s.rows) std::cout << partition_csv_row(cs.spec, r) << "\n";
    std::cout << fmt::format("# fit volume_gap = slope * hbar*log(1/hbar) + intercept: slope={:.17g} intercept={:.17g}\n",
                             s.slope, s.intercept);
    return 0;
}

int cmd_check(const Config& c) {
    bool all = true;
    for (const auto& r : run_checks(c.n)) {
        fmt::print("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twist knot triangulations, hyperbolic volumes and state integrals"};
    app.require_subcommand(1);
    Config c;

    auto add_n = [&](CLI::App* s) { s->add_option("--n", c.n, "twist knot index (n >= 2)")->required(); };

    auto* info = app.add_subcommand("info", "triangulation summary");
    add_n(info);
    c.format = "json";
    info->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));

    auto* solve = app.add_subcommand("solve", "complete hyperbolic structure as JSON");
    add_n(solve);
    solve->add_option("--tol", c.tol)->check(CLI::PositiveNumber);
    solve->add_option("--max-iter", c.max_iter)->check(CLI::PositiveNumber);
    solve->add_option("--format", c.format)->check(CLI::IsMember({"json"}));

    auto* pot = app.add_subcommand("potential", "saddle point report");
    add_n(pot);

    auto* part = app.add_subcommand("partition", "evaluate the state integral");
    add_n(part);
    part->add_option("--hbar", c.hbars, "comma separated list")->required()->delimiter(',');
    part->add_option("--points", c.points, "points per axis or 'auto'");
    part->add_option("--halfwidth", c.halfwidth, "axis half-width or 'auto'");
    part->add_option("--x", c.x, "re,im");
    part->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));

    auto* sweep = app.add_subcommand("sweep", "CSV sweep over geometrically spaced hbar");
    add_n(sweep);
    sweep->add_option("--hbar-start", c.hbar_start)->required();
    sweep->add_option("--hbar-end", c.hbar_end)->required();
    sweep->add_option("--steps", c.steps)->required();
    sweep->add_option("--points", c.points);
    sweep->add_option("--halfwidth", c.halfwidth);

    auto* check = app.add_subcommand("check", "property checks for one n");
    add_n(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        set_threads();
        if (c.n < 2) throw UsageError("--n must be at least 2");
        for (double h : c.hbars) check_hbar(h);
        if (*sweep) {
            check_hbar(c.hbar_start);
            check_hbar(c.hbar_end);
            if (c.steps < 2) throw UsageError("--steps must be at least 2");
            if (!(c.hbar_end < c.hbar_start)) throw UsageError("--hbar-end must be below --hbar-start");
        }
        if (*part || *sweep) {
            parse_policy(c);
            parse_x(c.x);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*info) return cmd_info(c);
        if (*solve) return cmd_solve(c);
        if (*pot) return cmd_potential(c);
        if (*part) return cmd_partition(c);
        if (*sweep) return cmd_sweep(c);
        return cmd_check(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
