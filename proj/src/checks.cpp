#include "twistvol/checks.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "twistvol/angles.hpp"
#include "twistvol/potential.hpp"
#include "twistvol/qdilog.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult make(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok, std::move(detail)};
}

CheckResult check_ideal(const TwistKnotSpec& spec) {
    const Triangulation t = build_ideal(spec);
    const auto mult = t.edge_multiplicity();
    bool covered = true;
    for (int e = 0; e < t.num_edges; ++e) covered = covered && mult[e] >= 1;
    const bool ok = static_cast<int>(t.tets.size()) == spec.p + 3 && t.num_edges == spec.p + 3 &&
                    t.num_faces == 2 * spec.p + 6 && t.pairing_is_involution() && covered;
    return make("triangulation.ideal", ok,
                fmt::format("{} tetrahedra, {} edges, {} faces", t.tets.size(), t.num_edges, t.num_faces));
}

CheckResult check_h(const TwistKnotSpec& spec) {
    const Triangulation t = build_h(spec);
    const auto mult = t.edge_multiplicity();
    bool covered = true;
    for (int e = 0; e < t.num_edges; ++e) covered = covered && mult[e] >= 1;
    int k_in_z = 0;
    for (int e : t.tets.back().edges) k_in_z += e == t.knot_edge;
    const bool ok = static_cast<int>(t.tets.size()) == spec.p + 4 && t.num_edges == spec.p + 5 &&
                    t.num_faces == 2 * spec.p + 8 && t.pairing_is_involution() && covered &&
                    mult[t.knot_edge] == 1 && k_in_z == 1;
    return make("triangulation.h", ok,
                fmt::format("{} tetrahedra, {} edges, {} faces, knot edge multiplicity {}", t.tets.size(),
                            t.num_edges, t.num_faces, mult[t.knot_edge]));
}

}  // namespace

Eigen::VectorXd random_shape_structure(int tets, std::mt19937_64& rng) {
    std::exponential_distribution<double> ex(1.0);
    Eigen::VectorXd v(3 * tets);
    for (int t = 0; t < tets; ++t) {
        const double e0 = ex(rng), e1 = ex(rng), e2 = ex(rng);
        const double s = e0 + e1 + e2;
        v[3 * t] = kPi * e0 / s;
        v[3 * t + 1] = kPi * e1 / s;
        v[3 * t + 2] = kPi - v[3 * t] - v[3 * t + 1];
    }
    return v;
}

std::vector<CheckResult> run_checks(int n) {
    const TwistKnotSpec spec = build_spec(n);
    const int p = spec.p;
    std::vector<CheckResult> out;
    out.push_back(check_ideal(spec));
    out.push_back(check_h(spec));

    std::mt19937_64 rng(20240601u + n);
    double sum_err = 0.0, id_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::VectorXd a = random_shape_structure(spec.tet_count_ideal, rng);
        sum_err = std::max(sum_err, std::abs(edge_weights(spec, a).sum() - 2.0 * (p + 3) * kPi));
        id_err = std::max(id_err, weight_identity_residual(spec, a).cwiseAbs().maxCoeff());
    }
    out.push_back(make("weights.sum", sum_err <= 1e-12, fmt::format("max deviation {:.3g}", sum_err)));
    out.push_back(make("weights.identity", id_err <= 1e-12, fmt::format("max residual {:.3g}", id_err)));

    const double eps = std::min(0.1, eps_max(spec) / 4);
    const Eigen::VectorXd a0 = initial_structure(spec, eps);
    const double bal = balancing_residual(spec, a0).cwiseAbs().maxCoeff();
    const bool interior = (a0.array() > 0).all() && (a0.array() < kPi).all();
    out.push_back(make("angles.initial", bal <= 1e-12 && interior,
                       fmt::format("eps {:.4g}, balancing residual {:.3g}", eps, bal)));

    const PolytopeChart chart = polytope_chart(spec);
    const double ann = (angle_constraint_matrix(spec) * chart.tangent_basis).cwiseAbs().maxCoeff();
    const double orth = (chart.tangent_basis.transpose() * chart.tangent_basis -
                         Eigen::MatrixXd::Identity(chart.dim(), chart.dim())).cwiseAbs().maxCoeff();
    out.push_back(make("angles.chart", chart.dim() == p + 4 && ann <= 1e-12 && orth <= 1e-12,
                       fmt::format("dimension {}, annihilation {:.3g}", chart.dim(), ann)));

    const CompleteStructure cs = maximize_volume(spec);
    const double glue = gluing_residual(spec, cs.shapes).cwiseAbs().maxCoeff();
    const auto [mu, lambda] = holonomies(spec, cs.angles);
    out.push_back(make("solver.complete",
                       glue <= 1e-9 && std::abs(mu) <= 1e-9 && std::abs(lambda) <= 1e-9 && cs.grad_norm <= 1e-11,
                       fmt::format("volume {:.10f}, {} iterations, gluing residual {:.3g}, mu {:.3g}, lambda {:.3g}",
                                   cs.volume, cs.iterations, glue, mu, lambda)));

    const double gs = grad_S(spec, cs.y0).norm();
    const cplx S = potential_S(spec, cs.y0);
    const double forms = std::abs(S - potential_S_rewritten(spec, cs.y0));
    const double det = std::abs(hess_S(spec, cs.y0).determinant());
    out.push_back(make("potential.saddle",
                       gs <= 1e-9 && std::abs(S.real() + cs.volume) <= 1e-6 && forms <= 1e-10 && det >= 1e-6,
                       fmt::format("|grad S| {:.3g}, Re S + Vol {:.3g}, |det Hess| {:.6g}", gs,
                                   S.real() + cs.volume, det)));

    Eigen::VectorXd tau(3 * (p + 4));
    tau << cs.angles, 0.0, 0.0, kPi;
    const double tw = (tau_weight_vector(spec, tau) - kernel_data(spec).w_vector()).cwiseAbs().maxCoeff();
    Eigen::VectorXd hw = h_edge_weights(spec, tau);
    const double k_weight = hw[hw.size() - 1];
    hw.conservativeResize(hw.size() - 1);
    const double hw_err = (hw.array() - 2.0 * kPi).abs().maxCoeff();
    out.push_back(make("tau.identity", tw <= 1e-9 && std::abs(k_weight) <= 1e-12 && hw_err <= 1e-9,
                       fmt::format("|W(tau) - W_n| {:.3g}, H-weights off 2pi by {:.3g}", tw, hw_err)));

    const QdilogParams prm = QdilogParams::from_hbar(0.1);
    const double b = prm.b;
    const cplx phi0 = phi_b(0.0, prm);
    const double ph = std::abs(phi0 - std::exp(cplx(0.0, kPi * (b * b + 1.0 / (b * b)) / 24.0)));
    out.push_back(make("qdilog.origin", ph <= 1e-9, fmt::format("|Phi_b(0) - exp(i pi (b^2+b^-2)/24)| {:.3g}", ph)));
    return out;
}

}  // namespace twistvol
