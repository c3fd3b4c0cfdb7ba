#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace twistvol {

enum class Parity { odd, even };

struct TwistKnotSpec {
    int n = 0;
    Parity parity = Parity::odd;
    int p = 0;
    int tet_count_ideal = 0;
    int tet_count_h = 0;

    bool odd() const { return parity == Parity::odd; }
    // number of angle coordinates on the ideal triangulation
    int angle_dim() const { return 3 * tet_count_ideal; }
};

TwistKnotSpec build_spec(int n);

// Tetrahedron edges are listed in the order 01, 02, 03, 12, 13, 23.
// Opposite edges carry the same dihedral angle: 01/23 -> a, 02/13 -> b, 03/12 -> c.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<int, 6> kEdgeAngle{0, 1, 2, 2, 1, 0};

struct TetrahedronRecord {
    std::string label;
    int sign = 1;
    // face k is the face opposite vertex k; entry = (peer tetrahedron, peer face)
    std::array<std::pair<int, int>, 4> faces{};
    std::array<int, 6> edges{};
};

// Quotient edge identifiers: e_j -> j for j = 0..p+1, then s, d, K.
struct EdgeIds {
    int p = 0;
    int e(int j) const { return j; }
    int s() const { return p + 2; }
    int d() const { return p + 3; }
    int K() const { return p + 4; }
    std::string name(int id) const;
};

struct Triangulation {
    TwistKnotSpec spec;
    bool h_triangulation = false;
    std::vector<TetrahedronRecord> tets;
    int num_edges = 0;
    int num_faces = 0;
    int knot_edge = -1;  // only for H-triangulations

    EdgeIds ids() const { return EdgeIds{spec.p}; }
    // multiplicity of each edge identifier over all tetrahedron edges
    std::vector<int> edge_multiplicity() const;
    // true when the face pairing is a fixed-point-free involution
    bool pairing_is_involution() const;
};

Triangulation build_ideal(const TwistKnotSpec& spec);
Triangulation build_h(const TwistKnotSpec& spec);

// Weights ordered (s, 0, 1, ..., p+1). Angles: 3(p+3) entries.
Eigen::VectorXd edge_weights(const TwistKnotSpec& spec, const Eigen::VectorXd& angles);
// Weights ordered (s, d, 0, 1, ..., p+1, K). Angles: 3(p+4) entries, Z last.
Eigen::VectorXd h_edge_weights(const TwistKnotSpec& spec, const Eigen::VectorXd& ext_angles);

// A linear form sum_i coeff_i * angle_i over the 3(p+3) angle coordinates.
struct LinearForm {
    std::vector<std::pair<int, double>> terms;
    double apply(const Eigen::VectorXd& angles) const;
};

// Index helpers for the angle vector (T_1..T_p, U, V, W[, Z]).
struct AngleIndex {
    int p = 0;
    int tet_T(int k) const { return k - 1; }
    int tet_U() const { return p; }
    int tet_V() const { return p + 1; }
    int tet_W() const { return p + 2; }
    int tet_Z() const { return p + 3; }
    int a(int tet) const { return 3 * tet; }
    int b(int tet) const { return 3 * tet + 1; }
    int c(int tet) const { return 3 * tet + 2; }
};

struct KernelData {
    // exact entries: q = q_twice / 2, w = w_pi * pi
    Eigen::MatrixXi q_twice;        // (p+2)x(p+2), index (1..p, U, W)
    Eigen::MatrixXi q_tilde_twice;  // (p+3)x(p+3), index (1..p, U, V, W)
    Eigen::VectorXi w_pi;           // (p+2)
    LinearForm mu;
    LinearForm lambda;

    Eigen::MatrixXd q_matrix() const;
    Eigen::MatrixXd q_tilde_matrix() const;
    Eigen::VectorXd w_vector() const;
};

KernelData kernel_data(const TwistKnotSpec& spec);

// 2 Q~ Gamma~(alpha) + C~(alpha) minus its expression through edge weights and lambda.
Eigen::VectorXd weight_identity_residual(const TwistKnotSpec& spec, const Eigen::VectorXd& shape);

// Left side 2 Q~ Gamma~ + C~ of the weight identity.
Eigen::VectorXd weight_identity_lhs(const TwistKnotSpec& spec, const Eigen::VectorXd& shape);

std::pair<double, double> holonomies(const TwistKnotSpec& spec, const Eigen::VectorXd& angles);

// 2 Q Gamma(tau) + C(tau) +/- c_V e_U, from the X_n part of an extended angle vector.
Eigen::VectorXd tau_weight_vector(const TwistKnotSpec& spec, const Eigen::VectorXd& ext_angles);

}  // namespace twistvol
