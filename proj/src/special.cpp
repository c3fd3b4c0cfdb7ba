#include "twistvol/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// |B_2k| / (2k (2k+1) (2k)!), k = 1..
const std::vector<double>& clausen_coeffs() {
    static const std::vector<double> c = [] {
        std::vector<double> v;
        for (int k = 1; k <= 40; ++k) {
            const double b = std::abs(boost::math::bernoulli_b2n<double>(k));
            v.push_back(b / (2.0 * k * (2.0 * k + 1) * boost::math::factorial<double>(2 * k)));
        }
        return v;
    }();
    return c;
}

// B_2k / (2k+1)!, k = 1..
const std::vector<double>& dilog_coeffs() {
    static const std::vector<double> c = [] {
        std::vector<double> v;
        for (int k = 1; k <= 40; ++k)
            v.push_back(boost::math::bernoulli_b2n<double>(k) /
                        boost::math::factorial<double>(2 * k + 1));
        return v;
    }();
    return c;
}

cplx dilog_series(cplx z) {
    cplx term = z, sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const cplx t = term / static_cast<double>(k) / static_cast<double>(k);
        sum += t;
        if (std::abs(t) < 1e-17 * std::abs(sum)) break;
        term *= z;
    }
    return sum;
}

// Series in u = -Log(1-z), valid for |u| < 2 pi.
cplx dilog_bernoulli(cplx z) {
    const cplx u = -std::log(1.0 - z);
    const cplx u2 = u * u;
    cplx sum = u - u2 / 4.0;
    cplx pw = u * u2;
    for (double c : dilog_coeffs()) {
        const cplx t = c * pw;
        sum += t;
        if (std::abs(t) < 1e-17 * std::abs(sum)) break;
        pw *= u2;
    }
    return sum;
}

// |z| <= 1
cplx dilog_unit_disk(cplx z) {
    if (z.real() > 0.5) {
        const cplx w = 1.0 - z;
        return -dilog_unit_disk(w) + kPi2Over6 - std::log(z) * std::log(w);
    }
    if (std::abs(z) < 0.5) return dilog_series(z);
    return dilog_bernoulli(z);
}

}  // namespace

double clausen2(double x) {
    // reduce to (-pi, pi]
    x = std::remainder(x, 2.0 * kPi);
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    const double x2 = x * x;
    double sum = x - x * std::log(ax);
    double pw = x * x2;
    for (double c : clausen_coeffs()) {
        const double t = c * pw;
        sum += t;
        if (std::abs(t) < 1e-18) break;
        pw *= x2;
    }
    return sum;
}

double lobachevsky(double theta) {
    if (!std::isfinite(theta)) throw DomainError("lobachevsky: non-finite argument");
    return 0.5 * clausen2(2.0 * theta);
}

cplx dilog(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("dilog: non-finite argument");
    if (z.imag() == 0.0 && z.real() >= 1.0) throw DomainError("dilog: argument on the branch cut [1, inf)");
    if (z == 0.0) return 0.0;
    if (std::abs(z) > 1.0) {
        const cplx l = std::log(-z);
        return -dilog_unit_disk(1.0 / z) - kPi2Over6 - 0.5 * l * l;
    }
    return dilog_unit_disk(z);
}

double bloch_wigner(cplx z) {
    if (z == 0.0 || z == 1.0) throw DomainError("bloch_wigner: undefined at 0 and 1");
    if (z.imag() == 0.0) return 0.0;
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

bool VolumeValue::any_unbounded() const {
    return std::any_of(unbounded.begin(), unbounded.end(), [](bool b) { return b; });
}

VolumeValue volume_functional(const TwistKnotSpec& spec, const Eigen::VectorXd& angles) {
    const long dim = angles.size();
    if (dim != 3 * spec.tet_count_ideal && dim != 3 * spec.tet_count_h)
        throw DimensionError("volume_functional: wrong angle vector length");
    VolumeValue v;
    v.gradient = Eigen::VectorXd::Zero(dim);
    v.unbounded.assign(dim, false);
    for (long i = 0; i < dim; ++i) {
        const double x = angles[i];
        v.value += lobachevsky(x);
        if (x < kBoundaryFlagTol || x > kPi - kBoundaryFlagTol) {
            v.unbounded[i] = true;
            v.gradient[i] = std::numeric_limits<double>::infinity();
        } else {
            v.gradient[i] = -std::log(2.0 * std::sin(x));
        }
    }
    return v;
}

}  // namespace twistvol
