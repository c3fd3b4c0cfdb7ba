#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "twistvol/errors.hpp"
#include "twistvol/special.hpp"
#include "twistvol/triangulation.hpp"

namespace twistvol {

using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

struct CompleteStructure {
    TwistKnotSpec spec;
    Eigen::VectorXd angles;
    VectorXc shapes;  // one per tetrahedron of X_n
    VectorXc y0;      // p+2 entries, V dropped
    double volume = 0.0;
    int iterations = 0;
    double grad_norm = 0.0;
};

struct SolverOptions {
    double tol = 1e-11;
    int max_iter = 200;
    // chart coordinates of the starting point; empty means the chart base point
    std::optional<Eigen::VectorXd> start;
};

// Thrown when the iteration budget runs out; carries the last iterate.
class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, Eigen::VectorXd last, double grad_norm)
        : NumericalError(what), last_iterate(std::move(last)), last_grad_norm(grad_norm) {}
    Eigen::VectorXd last_iterate;
    double last_grad_norm;
};

inline constexpr double kBoundaryAttraction = 1e-7;

CompleteStructure maximize_volume(const TwistKnotSpec& spec, const SolverOptions& opts = {});

// z, z', z'' for a single shape
inline cplx shape_prime(cplx z) { return 1.0 / (1.0 - z); }
inline cplx shape_dprime(cplx z) { return (z - 1.0) / z; }

VectorXc angles_to_shapes(const TwistKnotSpec& spec, const Eigen::VectorXd& angles);

// Edge equations for every ideal edge (s, 0, ..., p+1), then z_V - z_U, then the
// completeness equation at s.
VectorXc gluing_residual(const TwistKnotSpec& spec, const VectorXc& z);

// y_j = sign_j (Log z_j - i pi), ordered (T_1..T_p, U, W).
VectorXc shapes_to_y(const TwistKnotSpec& spec, const VectorXc& z);
// Inverse on one coordinate: z = -exp(sign * y).
inline cplx y_to_shape(cplx y, int sign) { return -std::exp(static_cast<double>(sign) * y); }

// Signs of the tetrahedra carrying the potential coordinates (T_1..T_p, U, W).
std::vector<int> y_signs(const TwistKnotSpec& spec);

}  // namespace twistvol
