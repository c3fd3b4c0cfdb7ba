#include "twistvol/angles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {
constexpr double kPi = std::numbers::pi;
}

AngleVector::AngleVector(const TwistKnotSpec& spec, Eigen::VectorXd values, bool extended)
    : spec_(spec), values_(std::move(values)), extended_(extended) {
    const long tets = extended ? spec.tet_count_h : spec.tet_count_ideal;
    if (values_.size() != 3 * tets)
        throw DimensionError("angle vector: expected " + std::to_string(3 * tets) + " entries, got " +
                             std::to_string(values_.size()));
    for (long i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]) || values_[i] < 0.0 || values_[i] > kPi)
            throw DomainError("angle vector: entry " + std::to_string(i) + " outside [0, pi]");
    for (long t = 0; t < tets; ++t) {
        const double s = values_.segment(3 * t, 3).sum();
        if (std::abs(s - kPi) > kTripleSumTol * 10)
            throw DomainError("angle vector: triple " + std::to_string(t) + " does not sum to pi");
    }
}

bool AngleVector::is_shape_structure() const {
    return (values_.array() > 0.0).all() && (values_.array() < kPi).all();
}

Eigen::VectorXd balancing_residual(const TwistKnotSpec& spec, const Eigen::VectorXd& angles) {
    const Eigen::VectorXd w = edge_weights(spec, angles);
    // omega_0 is dropped: it follows from the others and the triple sums
    Eigen::VectorXd r(spec.p + 2);
    r[0] = w[0] - 2.0 * kPi;
    for (int j = 1; j <= spec.p + 1; ++j) r[j] = w[1 + j] - 2.0 * kPi;
    return r;
}

double eps_max(const TwistKnotSpec& spec) {
    const int p = spec.p;
    if (p == 0) return std::numeric_limits<double>::infinity();
    const double pp = static_cast<double>(p);
    double m = kPi / (pp * pp);  // c_p = eps p^2 < pi
    // tower rows j <= p-1: b_j = pi - eps (j^2 + 1) > 0, tightest at j = p-1
    if (p >= 2) m = std::min(m, kPi / ((pp - 1) * (pp - 1) + 1));
    const double q = pp * pp + 2 * pp - 1;
    const double r = (pp - 1) * (pp - 1);
    if (spec.odd()) {
        m = std::min(m, kPi / q);                      // a_p > 0
        if (p >= 2) m = std::min(m, kPi / r);          // b_p > 0
        m = std::min(m, kPi / (3 * pp * pp));          // c_U = pi/6 - eps p^2/2 > 0
    } else {
        m = std::min(m, 1.5 * kPi / q);                // a_p > 0
        if (p >= 2) m = std::min(m, 0.5 * kPi / r);    // b_p > 0
        m = std::min(m, 2.0 * kPi / (pp * pp));        // b_U = 2pi/3 - eps p^2/3 > 0
        m = std::min(m, 0.5 * kPi / (pp * pp));        // c_U = pi/12 - eps p^2/6 > 0
    }
    return m;
}

Eigen::VectorXd initial_structure(const TwistKnotSpec& spec, double eps) {
    if (!(eps > 0.0) || !(eps < eps_max(spec)))
        throw DomainError("initial structure: eps outside (0, eps_max)");
    const int p = spec.p;
    const AngleIndex ai{p};
    Eigen::VectorXd x(3 * (p + 3));
    auto set = [&](int tet, double a, double b, double c) {
        x[ai.a(tet)] = a;
        x[ai.b(tet)] = b;
        x[ai.c(tet)] = c;
    };
    for (int j = 1; j <= p - 1; ++j) set(ai.tet_T(j), eps, kPi - eps * (j * j + 1), eps * j * j);
    const double p2 = static_cast<double>(p) * p;
    const double q = p2 + 2.0 * p - 1.0;
    const double r = (p - 1.0) * (p - 1.0);
    if (spec.odd()) {
        if (p >= 1) set(ai.tet_T(p), kPi / 2 - eps * q / 2, kPi / 2 - eps * r / 2, eps * p2);
        const double u0 = kPi / 2 + eps * p2 / 2, u1 = kPi / 3, u2 = kPi / 6 - eps * p2 / 2;
        set(ai.tet_U(), u0, u1, u2);
        set(ai.tet_V(), u0, u1, u2);
        set(ai.tet_W(), u1, u2, u0);  // (c_W, a_W, b_W) = (u0, u1, u2)
    } else {
        if (p >= 1) set(ai.tet_T(p), 3 * kPi / 4 - eps * q / 2, kPi / 4 - eps * r / 2, eps * p2);
        const double u0 = kPi / 4 + eps * p2 / 2, u1 = 2 * kPi / 3 - eps * p2 / 3,
                     u2 = kPi / 12 - eps * p2 / 6;
        set(ai.tet_U(), u0, u1, u2);
        set(ai.tet_V(), u0, u2, u1);  // (a_V, c_V, b_V)
        set(ai.tet_W(), u2, u1, u0);  // (c_W, b_W, a_W)
    }
    return x;
}

Eigen::VectorXd n2_complete_structure() {
    Eigen::VectorXd x(9);
    x << kPi / 6, 2 * kPi / 3, kPi / 6,   // U
         kPi / 6, kPi / 6, 2 * kPi / 3,   // V
         kPi / 6, 2 * kPi / 3, kPi / 6;   // W
    return x;
}

Eigen::MatrixXd angle_constraint_matrix(const TwistKnotSpec& spec) {
    const int tets = spec.tet_count_ideal;
    const int dim = 3 * tets;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(tets + spec.p + 3, dim);
    for (int t = 0; t < tets; ++t) A.block(t, 3 * t, 1, 3).setOnes();
    // edge_weights is linear, so its columns are the images of unit vectors
    for (int i = 0; i < dim; ++i)
        A.block(tets, i, spec.p + 3, 1) = edge_weights(spec, Eigen::VectorXd::Unit(dim, i));
    return A;
}

PolytopeChart polytope_chart(const TwistKnotSpec& spec) {
    PolytopeChart chart;
    chart.base_point = initial_structure(spec, std::min(0.1, eps_max(spec) / 4));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(angle_constraint_matrix(spec));
    lu.setThreshold(1e-10);
    const Eigen::MatrixXd kernel = lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    chart.tangent_basis =
        qr.householderQ() * Eigen::MatrixXd::Identity(kernel.rows(), kernel.cols());
    return chart;
}

}  // namespace twistvol
