#include "twistvol/solver.hpp"

#include <cmath>
#include <numbers>

#include "twistvol/angles.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryFraction = 0.05;
constexpr double kArmijo = 1e-4;

double min_angle(const Eigen::VectorXd& a) { return a.minCoeff(); }

// Largest step along d keeping every angle >= fraction * current minimum.
double max_step(const Eigen::VectorXd& a, const Eigen::VectorXd& d) {
    const double floor = kBoundaryFraction * min_angle(a);
    double s = 1.0;
    for (long i = 0; i < a.size(); ++i)
        if (d[i] < 0.0) s = std::min(s, (a[i] - floor) / -d[i]);
    return s;
}

double volume_at(const Eigen::VectorXd& a) {
    double v = 0.0;
    for (long i = 0; i < a.size(); ++i) v += lobachevsky(a[i]);
    return v;
}

}  // namespace

CompleteStructure maximize_volume(const TwistKnotSpec& spec, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("maximize_volume: tol must be positive");
    const PolytopeChart chart = polytope_chart(spec);
    const Eigen::MatrixXd& T = chart.tangent_basis;
    Eigen::VectorXd t = opts.start ? *opts.start : Eigen::VectorXd::Zero(chart.dim());
    if (t.size() != chart.dim()) throw DimensionError("maximize_volume: start has wrong dimension");
    Eigen::VectorXd alpha = chart.point(t);
    if (min_angle(alpha) <= 0.0 || alpha.maxCoeff() >= kPi)
        throw DomainError("maximize_volume: start point is not interior");

    int it = 0;
    double gnorm = 0.0;
    for (;; ++it) {
        const VolumeValue vv = volume_functional(spec, alpha);
        if (vv.any_unbounded() || min_angle(alpha) < kBoundaryAttraction)
            throw NumericalError("boundary attraction");
        const Eigen::VectorXd g = T.transpose() * vv.gradient;
        gnorm = g.norm();
        if (gnorm <= opts.tol) break;
        if (it >= opts.max_iter)
            throw NonConvergenceError("maximize_volume: no convergence within " +
                                          std::to_string(opts.max_iter) + " iterations",
                                      alpha, gnorm);

        Eigen::VectorXd curv = (-alpha.array().cos() / alpha.array().sin()).matrix();
        const Eigen::MatrixXd negH = -(T.transpose() * curv.asDiagonal() * T);
        Eigen::LLT<Eigen::MatrixXd> llt(negH);
        Eigen::VectorXd dir = llt.info() == Eigen::Success ? Eigen::VectorXd(llt.solve(g)) : g;
        if (g.dot(dir) <= 0.0) dir = g;

        bool moved = false;
        for (int attempt = 0; attempt < 2 && !moved; ++attempt) {
            const Eigen::VectorXd da = T * dir;
            double s = max_step(alpha, da);
            // close to the optimum the volume is flat to rounding, take the step as is
            if (gnorm < 1e-7 && s == 1.0) {
                t += dir;
                moved = true;
                break;
            }
            const double v0 = vv.value;
            const double slope = g.dot(dir);
            for (int k = 0; k < 60; ++k, s *= 0.5) {
                const Eigen::VectorXd trial = alpha + s * da;
                if (volume_at(trial) >= v0 + kArmijo * s * slope) {
                    t += s * dir;
                    moved = true;
                    break;
                }
            }
            dir = g;  // gradient fallback
        }
        if (!moved)
            throw NonConvergenceError("maximize_volume: line search failed", alpha, gnorm);
        alpha = chart.point(t);
    }
    if (min_angle(alpha) < kBoundaryAttraction) throw NumericalError("boundary attraction");

    CompleteStructure cs;
    cs.spec = spec;
    cs.angles = alpha;
    cs.volume = volume_at(alpha);
    cs.iterations = it;
    cs.grad_norm = gnorm;
    cs.shapes = angles_to_shapes(spec, alpha);
    cs.y0 = shapes_to_y(spec, cs.shapes);
    return cs;
}

VectorXc angles_to_shapes(const TwistKnotSpec& spec, const Eigen::VectorXd& angles) {
    if (angles.size() != 3 * spec.tet_count_ideal)
        throw DimensionError("angles_to_shapes: wrong angle vector length");
    if ((angles.array() <= 0.0).any() || (angles.array() >= kPi).any())
        throw DomainError("angles_to_shapes: boundary angle");
    const Triangulation tri = build_ideal(spec);
    VectorXc z(spec.tet_count_ideal);
    for (int t = 0; t < spec.tet_count_ideal; ++t) {
        const double a = angles[3 * t], b = angles[3 * t + 1], c = angles[3 * t + 2];
        const double m = tri.tets[t].sign > 0 ? std::log(std::sin(c) / std::sin(b))
                                              : std::log(std::sin(b) / std::sin(c));
        z[t] = std::exp(cplx(m, a));
    }
    return z;
}

VectorXc gluing_residual(const TwistKnotSpec& spec, const VectorXc& z) {
    if (z.size() != spec.tet_count_ideal) throw DimensionError("gluing_residual: wrong shape count");
    const Triangulation tri = build_ideal(spec);
    const int p = spec.p;
    // Log of the shape parameter sitting on angle slot (a, b, c)
    auto log_param = [&](int t, int slot) -> cplx {
        const cplx zt = z[t];
        if (slot == 0) return std::log(zt);
        const bool pos = tri.tets[t].sign > 0;
        const bool prime = (slot == 2) == pos;  // positive: c -> z', negative: b -> z'
        return std::log(prime ? shape_prime(zt) : shape_dprime(zt));
    };
    VectorXc sums = VectorXc::Zero(p + 3);
    for (int t = 0; t < spec.tet_count_ideal; ++t)
        for (int e = 0; e < 6; ++e) sums[tri.tets[t].edges[e]] += log_param(t, kEdgeAngle[e]);
    const AngleIndex ai{p};
    VectorXc r(p + 5);
    const cplx two_pi_i(0.0, 2.0 * kPi);
    r[0] = sums[EdgeIds{p}.s()] - two_pi_i;
    for (int j = 0; j <= p + 1; ++j) r[1 + j] = sums[j] - two_pi_i;
    r[p + 3] = z[ai.tet_V()] - z[ai.tet_U()];
    r[p + 4] = std::log(shape_dprime(z[ai.tet_W()])) - std::log(z[ai.tet_U()]);
    return r;
}

std::vector<int> y_signs(const TwistKnotSpec& spec) {
    const Triangulation tri = build_ideal(spec);
    const AngleIndex ai{spec.p};
    std::vector<int> s;
    for (int k = 1; k <= spec.p; ++k) s.push_back(tri.tets[ai.tet_T(k)].sign);
    s.push_back(tri.tets[ai.tet_U()].sign);
    s.push_back(tri.tets[ai.tet_W()].sign);
    return s;
}

VectorXc shapes_to_y(const TwistKnotSpec& spec, const VectorXc& z) {
    if (z.size() != spec.tet_count_ideal) throw DimensionError("shapes_to_y: wrong shape count");
    const AngleIndex ai{spec.p};
    const auto sg = y_signs(spec);
    std::vector<int> idx;
    for (int k = 1; k <= spec.p; ++k) idx.push_back(ai.tet_T(k));
    idx.push_back(ai.tet_U());
    idx.push_back(ai.tet_W());
    VectorXc y(spec.p + 2);
    for (int j = 0; j < spec.p + 2; ++j)
        y[j] = static_cast<double>(sg[j]) * (std::log(z[idx[j]]) - cplx(0.0, kPi));
    return y;
}

}  // namespace twistvol
