#include <doctest.h>

#include "common.hpp"
#include "twistvol/angles.hpp"
#include "twistvol/potential.hpp"
#include "twistvol/solver.hpp"

using namespace twistvol;
using testing_util::pi;

namespace {

// Table of the first twist knots.
const double kVolumes[] = {2.02988321, 2.82812208, 3.16396322, 3.33174423, 3.42720524, 3.48666014,
                           3.52619599, 3.55381991, 3.57388254, 3.588913917, 3.600467262};

Eigen::Vector3d triple(const Eigen::VectorXd& a, int t) { return a.segment<3>(3 * t); }

}  // namespace

TEST_CASE("golden volumes") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const CompleteStructure cs = maximize_volume(build_spec(n));
        CHECK(std::abs(cs.volume - kVolumes[n - 2]) <= 1e-6);
        CHECK(cs.grad_norm <= 1e-10);
        CHECK(cs.angles.minCoeff() > 0);
        CHECK(cs.angles.maxCoeff() < pi);
        CHECK(balancing_residual(cs.spec, cs.angles).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("closed forms for n = 2 and n = 3") {
    const CompleteStructure c2 = maximize_volume(build_spec(2));
    CHECK((c2.angles - n2_complete_structure()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(c2.shapes[0] - c2.shapes[1]) < 1e-9);
    const CompleteStructure c3 = maximize_volume(build_spec(3));
    const Eigen::Vector3d u = triple(c3.angles, 0);
    CHECK(std::abs(u[0] + 3 * u[2] - pi) < 1e-9);
}

TEST_CASE("symmetric maximizer emerges") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const CompleteStructure cs = maximize_volume(build_spec(n));
        const int p = cs.spec.p;
        const Eigen::Vector3d U = triple(cs.angles, p), V = triple(cs.angles, p + 1), W = triple(cs.angles, p + 2);
        if (cs.spec.odd()) {
            CHECK((U - V).cwiseAbs().maxCoeff() < 1e-8);
            CHECK((W - Eigen::Vector3d(U[1], U[2], U[0])).cwiseAbs().maxCoeff() < 1e-8);
        } else {
            CHECK((V - Eigen::Vector3d(U[0], U[2], U[1])).cwiseAbs().maxCoeff() < 1e-8);
            CHECK((W - Eigen::Vector3d(U[2], U[1], U[0])).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("unique maximizer from random starts") {
    for (int n : {4, 7}) {
        const auto spec = build_spec(n);
        const CompleteStructure ref = maximize_volume(spec);
        const PolytopeChart chart = polytope_chart(spec);
        std::mt19937_64 rng(n);
        std::normal_distribution<double> g(0.0, 1.0);
        int used = 0;
        while (used < 20) {
            Eigen::VectorXd t(chart.dim());
            for (int i = 0; i < t.size(); ++i) t[i] = 0.3 * g(rng);
            if (chart.point(t).minCoeff() <= 0.01) continue;
            SolverOptions opt;
            opt.start = t;
            const CompleteStructure cs = maximize_volume(spec, opt);
            CHECK((cs.angles - ref.angles).cwiseAbs().maxCoeff() < 1e-8);
            ++used;
        }
    }
}

TEST_CASE("iteration budget") {
    SolverOptions opt;
    opt.max_iter = 1;
    try {
        maximize_volume(build_spec(9), opt);
        FAIL("expected non-convergence");
    } catch (const NonConvergenceError& e) {
        CHECK(e.last_iterate.size() > 0);
        CHECK(e.last_grad_norm > 0);
    }
    SolverOptions bad;
    bad.tol = -1;
    CHECK_THROWS_AS(maximize_volume(build_spec(3), bad), DomainError);
}

TEST_CASE("angles to shapes") {
    const auto spec = build_spec(3);  // U, V, W all negative
    Eigen::VectorXd a(9);
    a << pi / 2, pi / 4, pi / 4, pi / 3, pi / 3, pi / 3, 0.5, 1.0, pi - 1.5;
    const VectorXc z = angles_to_shapes(spec, a);
    CHECK(std::abs(z[0] - cplx(0, 1)) < 1e-15);
    const auto even = build_spec(2);  // U positive
    const VectorXc ze = angles_to_shapes(even, a);
    CHECK(std::abs(ze[0] - cplx(0, 1)) < 1e-15);

    // arguments of (z, z', z'') reproduce the angles, with z' <-> c for positive and b for negative
    std::mt19937_64 rng(8);
    for (int n : {6, 7}) {
        const auto s = build_spec(n);
        const auto sg = build_ideal(s).tets;
        for (int i = 0; i < 50; ++i) {
            const Eigen::VectorXd x = testing_util::random_shape(s.tet_count_ideal, rng, 0.01);
            const VectorXc zz = angles_to_shapes(s, x);
            for (int t = 0; t < s.tet_count_ideal; ++t) {
                const bool pos = sg[t].sign > 0;
                CHECK(std::abs(std::arg(zz[t]) - x[3 * t]) < 1e-10);
                CHECK(std::abs(std::arg(shape_prime(zz[t])) - x[3 * t + (pos ? 2 : 1)]) < 1e-10);
                CHECK(std::abs(std::arg(shape_dprime(zz[t])) - x[3 * t + (pos ? 1 : 2)]) < 1e-10);
            }
        }
    }
    Eigen::VectorXd edge = a;
    edge.head(3) << 0.0, pi / 2, pi / 2;
    CHECK_THROWS_AS(angles_to_shapes(spec, edge), DomainError);
}

TEST_CASE("gluing residuals") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const CompleteStructure cs = maximize_volume(build_spec(n));
        CHECK(gluing_residual(cs.spec, cs.shapes).cwiseAbs().maxCoeff() <= 1e-9);
        for (int t = 0; t < cs.shapes.size(); ++t) {
            VectorXc z = cs.shapes;
            z[t] += 0.01;
            CHECK(gluing_residual(cs.spec, z).cwiseAbs().maxCoeff() >= 1e-3);
        }
    }
    const auto s2 = build_spec(2);
    CHECK(gluing_residual(s2, angles_to_shapes(s2, n2_complete_structure())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("y coordinates") {
    const auto s3 = build_spec(3);
    const auto s2 = build_spec(2);
    // n = 3: U negative; n = 2: U positive
    VectorXc z = VectorXc::Constant(3, cplx(0, 1));
    CHECK(std::abs(shapes_to_y(s3, z)[0] - cplx(0, pi / 2)) < 1e-15);
    CHECK(std::abs(shapes_to_y(s2, z)[0] - cplx(0, -pi / 2)) < 1e-15);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5, 5), v(1e-3, 5);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const cplx w(u(rng), v(rng));
        for (int s : {1, -1}) {
            const cplx y = static_cast<double>(s) * (std::log(w) - cplx(0, pi));
            worst = std::max(worst, std::abs(y_to_shape(y, s) - w) / std::abs(w));
        }
    }
    CHECK(worst < 1e-14);

    for (int n = 2; n <= 12; ++n) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        CHECK(in_band(cs.spec, cs.y0));
        CHECK((shapes_to_y(cs.spec, cs.shapes) - cs.y0).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("critical point equivalence") {
    for (int n : {2, 3, 6, 7}) {
        const CompleteStructure cs = maximize_volume(build_spec(n));
        CHECK(grad_S(cs.spec, shapes_to_y(cs.spec, cs.shapes)).norm() <= 1e-9);
        VectorXc z = cs.shapes;
        z[0] *= std::polar(1.02, 0.01);
        CHECK(gluing_residual(cs.spec, z).cwiseAbs().maxCoeff() > 1e-4);
        CHECK(grad_S(cs.spec, shapes_to_y(cs.spec, z)).norm() > 1e-4);
    }
}

TEST_CASE("holonomies and tau identity at the maximizer") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const CompleteStructure cs = maximize_volume(build_spec(n));
        const auto [mu, lambda] = holonomies(cs.spec, cs.angles);
        CHECK(std::abs(mu) <= 1e-9);
        CHECK(std::abs(lambda) <= 1e-9);
        Eigen::VectorXd tau(3 * cs.spec.tet_count_h);
        tau << cs.angles, 0.0, 0.0, pi;
        const Eigen::VectorXd w = tau_weight_vector(cs.spec, tau);
        CHECK((w - kernel_data(cs.spec).w_vector()).cwiseAbs().maxCoeff() <= 1e-9);
        Eigen::VectorXd hw = h_edge_weights(cs.spec, tau);
        CHECK(std::abs(hw[hw.size() - 1]) < 1e-15);
        CHECK((hw.head(hw.size() - 1).array() - 2 * pi).abs().maxCoeff() <= 1e-9);
    }
}
