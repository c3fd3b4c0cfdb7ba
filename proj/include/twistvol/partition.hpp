#pragma once

#include <vector>

#include <Eigen/Dense>

#include "twistvol/partition_kernel.hpp"
#include "twistvol/qdilog.hpp"
#include "twistvol/solver.hpp"

namespace twistvol {

// Integration multi-contour: axis j runs over center_j + [-halfwidth_j, halfwidth_j] + i d0_j.
struct ContourSpec {
    Eigen::VectorXd d0;
    Eigen::VectorXd center;
    Eigen::VectorXd halfwidth;
    int points = 300;

    ContourSpec refined(double points_factor, double width_factor) const;
};

struct ContourPolicy {
    double halfwidth = 0.0;  // <= 0 selects the automatic per-axis width
    int points = 0;          // <= 0 selects the automatic count
    double tail_drop = 30.0; // log-magnitude drop at the automatic truncation
    double points_per_radian = 0.25;
    int min_points = 300;
};

struct PartitionOptions {
    bool estimate_error = true;
    bool parallel = true;
    int max_dim = 4;  // tensor grids only up to this many axes
};

struct PartitionResult {
    double hbar = 0.0;
    double b = 0.0;
    int points = 0;
    double halfwidth = 0.0;  // largest axis half-width
    cplx value;              // may underflow for tiny hbar, log_abs does not
    double abs_value = 0.0;
    double log_abs = 0.0;
    double quadrature_error = 0.0;
    double scaled_log = 0.0;
    double volume = 0.0;
    double volume_gap = 0.0;
};

struct SaddleEstimate {
    cplx det_hess;
    double rho_magnitude = 0.0;
    double log_leading = 0.0;
    double leading_magnitude = 0.0;
};

struct SweepResult {
    std::vector<PartitionResult> rows;
    double slope = 0.0;
    double intercept = 0.0;
};

// min over the integration axes of min(b_j, c_j) at the complete structure
double decay_rate(const CompleteStructure& cs);

ContourSpec make_contour(const CompleteStructure& cs, double hbar, const ContourPolicy& policy = {});

// Log of the integrand of the Jfrak integral (prefactor excluded), with the
// quantum dilogarithm quotient as printed. Any x; the Phi_b arguments must lie in the strip.
cplx log_integrand(const TwistKnotSpec& spec, const VectorXc& y, cplx x, double hbar);
cplx integrand(const TwistKnotSpec& spec, const VectorXc& y, cplx x, double hbar);
// S'_b(y) / (2 pi hbar): the same integrand at x = 0 written through the deformed potential.
cplx log_integrand_sprime(const TwistKnotSpec& spec, const VectorXc& y, double hbar);

// Per-axis tables for x = 0; exposed for the benchmark and the factorization tests.
GridTables build_tables(const TwistKnotSpec& spec, double hbar, const ContourSpec& contour, double& log_scale);

// log Jfrak(hbar, x) by tensor Gauss-Legendre quadrature.
cplx log_Jfrak(const TwistKnotSpec& spec, double hbar, cplx x, const ContourSpec& contour,
               const PartitionOptions& opts = {});

PartitionResult evaluate_Jfrak(const CompleteStructure& cs, double hbar, cplx x, const ContourSpec& contour,
                               const PartitionOptions& opts = {});

// log J(hbar, 0), integrated in the rescaled variables y' = y / (2 pi sqrt(hbar)).
cplx log_J(const TwistKnotSpec& spec, double hbar, const ContourSpec& contour, const PartitionOptions& opts = {});

SaddleEstimate saddle_prediction(const CompleteStructure& cs, double hbar);

SweepResult volume_sweep(const CompleteStructure& cs, const std::vector<double>& hbars,
                         const ContourPolicy& policy = {}, const PartitionOptions& opts = {});

// Least-squares line gap = slope * hbar log(1/hbar) + intercept.
std::pair<double, double> fit_gap(const std::vector<double>& hbars, const std::vector<double>& gaps);

}  // namespace twistvol
