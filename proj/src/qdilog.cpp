#include "twistvol/qdilog.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;
using GL = boost::math::quadrature::gauss<double, 32>;

// Composite 32-point Gauss-Legendre over [a, b] of f, which receives the node.
template <class F>
cplx panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (f(c + h * x[i]) + f(c - h * x[i]));
    return s * h;
}

// Integral of g(w) = exp(-i y w / pi) / (4 w sinh w sinh(b^2 w)) from w = R to infinity along the
// direction in which the exponential factor decays without oscillating. Re w stays >= R, so no pole
// of the integrand lies between this path and the real ray.
cplx ray(cplx y, double b2, double R, double tol, double peak_hint) {
    const cplx e = cplx(0.0, -1.0) * y / kPi - (1.0 + b2);
    const double rate = std::abs(e);
    const cplx u = -std::conj(e) / rate;
    auto g = [&](double t) -> cplx {
        const cplx w = R + t * u;
        // 4 sinh w sinh(b^2 w) = exp((1 + b^2) w) (1 - exp(-2w)) (1 - exp(-2 b^2 w))
        const cplx d1 = 1.0 - std::exp(-2.0 * w);
        const cplx d2 = 2.0 * std::sinh(b2 * w) * std::exp(-b2 * w);
        return std::exp(e * w) / (w * d1 * d2) * u;
    };
    const double width = std::min(1.0, 8.0 / rate);
    double peak = std::max(peak_hint, std::abs(g(0.0)));
    cplx sum = 0.0;
    double a = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        const double bnd = a + width;
        sum += panel(g, a, bnd);
        const double tail = std::abs(g(bnd));
        peak = std::max(peak, tail);
        if (tail / rate < tol * peak) break;
        a = bnd;
    }
    return sum;
}

// Upper half circle of radius R from theta = pi down to 0.
cplx arc(cplx y, double b2, double R, double& peak) {
    const cplx I(0.0, 1.0);
    peak = 0.0;
    auto f = [&](double th) -> cplx {
        const cplx v = std::polar(R, th);
        // dv = i v dtheta cancels the 1/v of the integrand
        const cplx g = std::exp(-I * y * v / kPi) / (4.0 * std::sinh(v) * std::sinh(b2 * v)) * I;
        peak = std::max(peak, std::abs(g) / R);
        return g;
    };
    const int panels = std::max(4, static_cast<int>(std::ceil(std::abs(y) * R / 8.0)));
    cplx s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double t0 = kPi * (1.0 - static_cast<double>(k) / panels);
        const double t1 = kPi * (1.0 - static_cast<double>(k + 1) / panels);
        s += panel(f, t1, t0) * -1.0;  // theta decreases
    }
    return s;
}

cplx log_phi_core(cplx y, double b, const QdilogParams& prm) {
    const double b2 = b * b;
    if (!(std::abs(y.imag()) < kPi * (1.0 + b2)))
        throw DomainError("quantum dilogarithm: argument outside the strip of analyticity");
    if (prm.use_inversion && y.real() > prm.inversion_threshold) {
        // Phi(z) Phi(-z) = Phi(0)^2 exp(i pi z^2), z = y / (2 pi b)
        const cplx z = y / (2.0 * kPi * b);
        const cplx I(0.0, 1.0);
        return -log_phi_core(-y, b, prm) + I * kPi * z * z + I * kPi * (b2 + 1.0 / b2) / 12.0;
    }
    const double R = prm.contour_radius;
    double peak = 0.0;
    const cplx a = arc(y, b2, R, peak);
    // the ray (-inf, -R] maps to -(ray for -y) under v -> -v
    return a + ray(y, b2, R, prm.truncation_tol, peak) - ray(-y, b2, R, prm.truncation_tol, peak);
}

}  // namespace

QdilogParams QdilogParams::from_b(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("quantum dilogarithm: b must be positive");
    QdilogParams p;
    p.b = b;
    return p;
}

QdilogParams QdilogParams::from_hbar(double hbar) { return from_b(b_from_hbar(hbar)); }

double QdilogParams::hbar() const {
    const double s = b + 1.0 / b;
    return 1.0 / (s * s);
}

double b_from_hbar(double hbar) {
    if (!(hbar > 0.0)) throw DomainError("b_from_hbar: hbar must be positive");
    if (hbar > 0.25) throw DomainError("no real b");
    // b + 1/b = t, smaller root of b^2 - t b + 1 = 0, written to avoid cancellation
    const double t = 1.0 / std::sqrt(hbar);
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0));
    return 2.0 / (t + disc);
}

double strip_halfwidth(double b) { return 0.5 * (b + 1.0 / b); }

cplx log_phi_scaled(cplx y, const QdilogParams& params) {
    double b = params.b;
    if (b > 1.0) {
        // Phi_b = Phi_{1/b}; the same z corresponds to y / b^2
        y /= b * b;
        b = 1.0 / b;
    }
    return log_phi_core(y, b, params);
}

cplx log_phi_b(cplx z, const QdilogParams& params) {
    if (!(std::abs(z.imag()) < strip_halfwidth(params.b)))
        throw DomainError("quantum dilogarithm: argument outside the strip of analyticity");
    return log_phi_scaled(2.0 * kPi * params.b * z, params);
}

cplx phi_b(cplx z, const QdilogParams& params) { return std::exp(log_phi_b(z, params)); }

}  // namespace twistvol
