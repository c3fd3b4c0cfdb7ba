#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "twistvol/triangulation.hpp"

namespace twistvol {

using cplx = std::complex<double>;

// Lobachevsky function, odd and pi-periodic.
double lobachevsky(double theta);

// Clausen function Cl_2.
double clausen2(double x);

// Principal dilogarithm on C minus [1, inf).
cplx dilog(cplx z);

// Bloch-Wigner function; zero on the real line, undefined at 0 and 1.
double bloch_wigner(cplx z);

struct VolumeValue {
    double value = 0.0;
    Eigen::VectorXd gradient;
    // angles within 1e-9 of 0 or pi have an unbounded derivative
    std::vector<bool> unbounded;
    bool any_unbounded() const;
};

inline constexpr double kBoundaryFlagTol = 1e-9;

VolumeValue volume_functional(const TwistKnotSpec& spec, const Eigen::VectorXd& angles);

}  // namespace twistvol
