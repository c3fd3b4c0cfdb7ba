// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "twistvol/angles.hpp"
#include "twistvol/partition.hpp"
#include "twistvol/potential.hpp"
#include "twistvol/qdilog.hpp"

using namespace twistvol;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

struct Outcome {
    bool pass;
    std::string detail;
};

const double kVolumes[] = {2.02988321, 2.82812208, 3.16396322, 3.33174423, 3.42720524, 3.48666014,
                           3.52619599, 3.55381991, 3.57388254, 3.588913917, 3.600467262};
constexpr double kWhitehead = 3.6638623767088;

Eigen::VectorXd random_shape(int tets, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd v(3 * tets);
    for (int t = 0; t < tets; ++t) {
        double x = u(rng), y = u(rng);
        if (x > y) std::swap(x, y);
        v.segment<3>(3 * t) << pi * x, pi * (y - x), pi * (1 - y);
    }
    return v;
}

Outcome golden_volumes() {
    double worst = 0;
    for (int n = 2; n <= 12; ++n)
        worst = std::max(worst, std::abs(maximize_volume(build_spec(n)).volume - kVolumes[n - 2]));
    return {worst <= 1e-6, fmt::format("max |Vol - table| = {:.2e}", worst)};
}

Outcome whitehead_trend() {
    std::vector<double> v;
    for (int n : {20, 40, 80}) v.push_back(maximize_volume(build_spec(n)).volume);
    const bool ok = v[0] < v[1] && v[1] < v[2] && v[2] < kWhitehead;
    return {ok, fmt::format("Vol(20, 40, 80) = {:.10f}, {:.10f}, {:.10f}; limit {:.10f}", v[0], v[1], v[2], kWhitehead)};
}

Outcome complete_structure() {
    double glue = 0, grad = 0, re = 0, hol = 0;
    for (int n = 2; n <= 12; ++n) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        glue = std::max(glue, gluing_residual(cs.spec, cs.shapes).cwiseAbs().maxCoeff());
        grad = std::max(grad, grad_S(cs.spec, cs.y0).norm());
        re = std::max(re, std::abs(potential_S(cs.spec, cs.y0).real() + cs.volume));
        const auto [mu, lambda] = holonomies(cs.spec, cs.angles);
        hol = std::max({hol, std::abs(mu), std::abs(lambda)});
    }
    const bool ok = glue <= 1e-9 && grad <= 1e-9 && re <= 1e-6 && hol <= 1e-9;
    return {ok, fmt::format("gluing {:.1e}, |grad S| {:.1e}, |Re S + Vol| {:.1e}, |mu|,|lambda| {:.1e}", glue, grad, re,
                            hol)};
}

Outcome n2_angles() {
    const CompleteStructure cs = maximize_volume(build_spec(2));
    Eigen::VectorXd expect(9);
    expect << pi / 6, 2 * pi / 3, pi / 6, pi / 6, pi / 6, 2 * pi / 3, pi / 6, 2 * pi / 3, pi / 6;
    const double d = (cs.angles - expect).cwiseAbs().maxCoeff();
    return {d <= 1e-8, fmt::format("max deviation {:.1e}", d)};
}

Outcome weight_identity() {
    std::mt19937_64 rng(12345);
    double worst = 0;
    for (int n = 2; n <= 10; ++n) {
        const auto spec = build_spec(n);
        for (int i = 0; i < 1000; ++i)
            worst = std::max(worst, weight_identity_residual(spec, random_shape(spec.tet_count_ideal, rng)).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-12, fmt::format("max residual {:.1e} over 9000 shape structures", worst)};
}

Outcome tau_identity() {
    double worst = 0;
    for (int n = 2; n <= 10; ++n) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        Eigen::VectorXd tau(3 * cs.spec.tet_count_h);
        tau << cs.angles, 0.0, 0.0, pi;
        worst = std::max(worst, (tau_weight_vector(cs.spec, tau) - kernel_data(cs.spec).w_vector()).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-9, fmt::format("max |W(tau0) - W_n| = {:.1e}", worst)};
}

Outcome qdilog_suite() {
    std::mt19937_64 rng(777);
    double inv = 0, uni = 0, fe = 0, asym = 0;
    for (double b : {0.3, 0.7, 1.0}) {
        const QdilogParams prm = QdilogParams::from_b(b);
        const double sw = strip_halfwidth(b);
        const cplx c0 = std::exp(I * pi * (b * b + 1 / (b * b)) / 12.0);
        std::uniform_real_distribution<double> re(-3.0, 3.0), im(-0.9, 0.9), far(15.0, 20.0);
        for (int i = 0; i < 200; ++i) {
            const cplx z(re(rng), im(rng) * sw);
            inv = std::max(inv, std::abs(phi_b(z, prm) * phi_b(-z, prm) / (c0 * std::exp(I * pi * z * z)) - 1.0));
            uni = std::max(uni, std::abs(std::conj(phi_b(z, prm)) * phi_b(std::conj(z), prm) - 1.0));
            const cplx w(z.real(), z.imag() * (sw - b / 2) / sw * 0.95);
            const cplx lhs = phi_b(w - I * b / 2.0, prm);
            const cplx rhs = (1.0 + std::exp(2 * pi * b * w)) * phi_b(w + I * b / 2.0, prm);
            fe = std::max(fe, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            const double d = 0.5 * im(rng) * sw;
            const cplx zl(-far(rng), d), zr(far(rng), d);
            asym = std::max({asym, std::abs(phi_b(zl, prm) - 1.0),
                             std::abs(phi_b(zr, prm) / (c0 * std::exp(I * pi * zr * zr)) - 1.0)});
        }
    }
    const cplx y(-1.0, pi / 2);
    auto dev = [&](double b) {
        const cplx cl = -I / (2 * pi * b * b) * dilog(-std::exp(y));
        return std::abs((log_phi_scaled(y, QdilogParams::from_b(b)) - cl).real());
    };
    const double ratio = dev(0.1) / dev(0.05);
    const bool ok = inv <= 1e-8 && uni <= 1e-8 && fe <= 1e-8 && asym <= 1e-8 && ratio >= 3.5 && ratio <= 4.5;
    return {ok, fmt::format("inversion {:.1e}, unitarity {:.1e}, functional eq. {:.1e}, asymptotics {:.1e}, "
                            "semiclassical ratio {:.3f}",
                            inv, uni, fe, asym, ratio)};
}

Outcome potential_numerics() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> re(-2.0, 2.0), frac(0.1, 0.9);
    double gw = 0, hw = 0, forms = 0;
    const double h = 1e-6;
    for (int n : {2, 3, 5}) {
        const auto spec = build_spec(n);
        const auto sg = y_signs(spec);
        for (int i = 0; i < 100; ++i) {
            VectorXc y(spec.p + 2);
            for (int j = 0; j < y.size(); ++j) y[j] = cplx(re(rng), -sg[j] * pi * frac(rng));
            forms = std::max(forms, std::abs(potential_S(spec, y) - potential_S_rewritten(spec, y)));
            const VectorXc g = grad_S(spec, y);
            const MatrixXc H = hess_S(spec, y);
            for (int j = 0; j < y.size(); ++j) {
                VectorXc yp = y, ym = y;
                yp[j] += h;
                ym[j] -= h;
                const cplx fd = (potential_S(spec, yp) - potential_S(spec, ym)) / (2 * h);
                gw = std::max(gw, std::abs(fd - g[j]) / std::max(1.0, std::abs(g[j])));
                const VectorXc col = (grad_S(spec, yp) - grad_S(spec, ym)) / (2 * h);
                hw = std::max(hw, (col - H.col(j)).norm() / std::max(1.0, H.col(j).norm()));
            }
        }
    }
    const bool ok = gw <= 1e-5 && hw <= 1e-4 && forms <= 1e-10;
    return {ok, fmt::format("grad rel {:.1e}, Hess rel {:.1e}, forms {:.1e}", gw, hw, forms)};
}

Outcome partition_consistency() {
    double grid = 0, shift = 0, resc = 0;
    PartitionOptions quick;
    quick.estimate_error = false;
    for (int n : {2, 3}) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        for (double hb : {0.2, 0.1, 0.05}) {
            const ContourSpec c = make_contour(cs, hb);
            const PartitionResult r = evaluate_Jfrak(cs, hb, 0.0, c);
            grid = std::max(grid, r.quadrature_error / r.abs_value);
            for (int j = 0; j < c.d0.size(); ++j)
                for (double s : {-0.05, 0.05}) {
                    ContourSpec moved = c;
                    moved.d0[j] += s;
                    shift = std::max(shift, std::abs(std::exp(log_Jfrak(cs.spec, hb, 0.0, moved, quick)) / r.value - 1.0));
                }
            const double lj = log_J(cs.spec, hb, c).real();
            resc = std::max(resc, std::abs(std::exp(lj - r.log_abs) / (2 * pi * std::sqrt(hb)) - 1.0));
        }
    }
    const bool ok = grid <= 1e-6 && shift <= 1e-6 && resc <= 1e-6;
    return {ok, fmt::format("grid doubling {:.1e}, contour shift {:.1e}, J/Jfrak rescaling {:.1e}", grid, shift, resc)};
}

Outcome volume_trend() {
    const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
    bool ok = true;
    std::string detail;
    for (int n : {2, 3}) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        const SweepResult s = volume_sweep(cs, hs);
        std::vector<double> g, gj;
        for (const auto& r : s.rows) {
            g.push_back(r.volume_gap);
            // same rows through |J| = 2 pi sqrt(hbar) |Jfrak|
            gj.push_back(r.volume_gap + 2 * pi * r.hbar * std::log(2 * pi * std::sqrt(r.hbar)));
        }
        const bool mono = std::abs(g[1]) > std::abs(g[2]) && std::abs(g[2]) > std::abs(g[3]);
        const bool icpt = std::abs(s.intercept) <= 0.05;
        ok = ok && mono && icpt;
        const auto fj = fit_gap(hs, gj);
        detail += fmt::format("{}n={}: gaps {:+.4f} {:+.4f} {:+.4f} {:+.4f}, intercept {:+.3f} (J: intercept {:+.3f})",
                              detail.empty() ? "" : "; ", n, g[0], g[1], g[2], g[3], s.intercept, fj.second);
    }
    return {ok, detail};
}

Outcome combinatorics() {
    int bad = 0;
    for (int n = 2; n <= 20; ++n) {
        const auto spec = build_spec(n);
        const int p = spec.p;
        const Triangulation x = build_ideal(spec), y = build_h(spec);
        bool ok = static_cast<int>(x.tets.size()) == p + 3 && x.num_edges == p + 3 && x.num_faces == 2 * p + 6 &&
                  x.pairing_is_involution() && static_cast<int>(y.tets.size()) == p + 4 &&
                  y.num_edges == p + 5 && y.num_faces == 2 * p + 8 && y.pairing_is_involution();
        const auto mx = x.edge_multiplicity(), my = y.edge_multiplicity();
        for (int e = 0; e < x.num_edges; ++e) ok = ok && mx[e] >= 1;
        for (int e = 0; e < y.num_edges; ++e) ok = ok && my[e] >= 1;
        ok = ok && my[y.knot_edge] == 1;
        bad += !ok;
    }
    return {bad == 0, fmt::format("{} of 19 knots fail the count/involution checks", bad)};
}

}  // namespace

int main(int argc, char** argv) {
    const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    struct Criterion {
        const char* name;
        double limit;  // seconds, <= 0 for none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {"golden volumes n=2..12", 5, golden_volumes},
        {"Whitehead-limit trend", 5, whitehead_trend},
        {"complete-structure characterization", 0, complete_structure},
        {"n=2 closed-form angles", 0, n2_angles},
        {"weight identity", 0, weight_identity},
        {"tau-identity", 0, tau_identity},
        {"quantum dilogarithm suite", 30, qdilog_suite},
        {"potential-function numerics", 0, potential_numerics},
        {"partition-function consistency", 180, partition_consistency},
        {"volume-conjecture trend", 600, volume_trend},
        {"triangulation combinatorics n=2..20", 0, combinatorics},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (all[i].limit > 0 && secs > all[i].limit) {
            o.pass = false;
            o.detail += fmt::format("; over the {:.0f} s budget", all[i].limit);
        }
        failed += !o.pass;
        fmt::print("{} [{:2}] {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail, secs);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", all.size() - failed, all.size());
    return strict && failed > 0 ? 1 : 0;
}
