#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twistvol {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Uniform random point of the open simplex a + b + c = pi for each of `tets` tetrahedra.
Eigen::VectorXd random_shape_structure(int tets, std::mt19937_64& rng);

// Property checks of every module for one knot index.
std::vector<CheckResult> run_checks(int n);

}  // namespace twistvol
