#pragma once

#include <Eigen/Dense>

#include "twistvol/triangulation.hpp"

namespace twistvol {

// Dihedral angles (a, b, c) per tetrahedron, ordered T_1..T_p, U, V, W (and Z when extended).
class AngleVector {
public:
    // Rejects wrong lengths, triples not summing to pi, and entries outside [0, pi].
    AngleVector(const TwistKnotSpec& spec, Eigen::VectorXd values, bool extended = false);

    const TwistKnotSpec& spec() const { return spec_; }
    const Eigen::VectorXd& values() const { return values_; }
    bool extended() const { return extended_; }
    // all entries in the open interval (0, pi)
    bool is_shape_structure() const;

private:
    TwistKnotSpec spec_;
    Eigen::VectorXd values_;
    bool extended_ = false;
};

inline constexpr double kTripleSumTol = 1e-12;

// Balancing residuals (E_s, E_1, ..., E_{p+1}), each weight minus 2 pi.
Eigen::VectorXd balancing_residual(const TwistKnotSpec& spec, const Eigen::VectorXd& angles);

// Largest eps for which the explicit starting structure stays strictly inside. +inf when p = 0.
double eps_max(const TwistKnotSpec& spec);

Eigen::VectorXd initial_structure(const TwistKnotSpec& spec, double eps);

// Closed-form complete structure for n = 2.
Eigen::VectorXd n2_complete_structure();

struct PolytopeChart {
    Eigen::VectorXd base_point;
    Eigen::MatrixXd tangent_basis;  // orthonormal columns

    Eigen::VectorXd point(const Eigen::VectorXd& t) const { return base_point + tangent_basis * t; }
    int dim() const { return static_cast<int>(tangent_basis.cols()); }
};

// Rows: per-tetrahedron angle sums, then one row per ideal edge (s, 0, ..., p+1).
Eigen::MatrixXd angle_constraint_matrix(const TwistKnotSpec& spec);

PolytopeChart polytope_chart(const TwistKnotSpec& spec);

}  // namespace twistvol
