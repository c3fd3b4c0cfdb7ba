#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace testing_util {

inline constexpr double pi = std::numbers::pi;

// Independent of the library helper: uniform on the simplex via sorted uniforms.
inline Eigen::VectorXd random_shape(int tets, std::mt19937_64& rng, double margin = 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd v(3 * tets);
    const double span = pi - 3 * margin;
    for (int t = 0; t < tets; ++t) {
        double x = u(rng), y = u(rng);
        if (x > y) std::swap(x, y);
        v[3 * t] = margin + span * x;
        v[3 * t + 1] = margin + span * (y - x);
        v[3 * t + 2] = pi - v[3 * t] - v[3 * t + 1];
    }
    return v;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_util
