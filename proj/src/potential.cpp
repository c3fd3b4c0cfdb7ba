#include "twistvol/potential.hpp"

#include <cmath>
#include <numbers>

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

void require_band(const TwistKnotSpec& spec, const VectorXc& y, const char* who) {
    if (y.size() != spec.p + 2) throw DimensionError(std::string(who) + ": expected p+2 coordinates");
    if (!in_band(spec, y)) throw DomainError(std::string(who) + ": point outside the band");
}

cplx quadratic_linear(const TwistKnotSpec& spec, const VectorXc& y) {
    const KernelData kd = kernel_data(spec);
    const VectorXc Qy = kd.q_matrix().cast<cplx>() * y;
    return I * y.cwiseProduct(Qy).sum() + y.cwiseProduct(kd.w_vector().cast<cplx>()).sum();
}

}  // namespace

std::vector<DilogTerm> potential_terms(const TwistKnotSpec& spec) {
    const int p = spec.p, U = p, W = p + 1;
    std::vector<DilogTerm> t;
    for (int k = 0; k < p; ++k) t.push_back({1.0, k, +1});
    if (spec.odd()) {
        t.push_back({-2.0, U, +1});
    } else {
        t.push_back({1.0, U, +1});
        t.push_back({-1.0, U, -1});
    }
    t.push_back({-1.0, W, +1});
    return t;
}

bool in_band(const TwistKnotSpec& spec, const VectorXc& y) {
    const auto sg = y_signs(spec);
    for (long j = 0; j < y.size(); ++j) {
        const double im = y[j].imag();
        if (sg[j] > 0 ? !(im > -kPi && im < 0.0) : !(im > 0.0 && im < kPi)) return false;
    }
    return true;
}

cplx potential_S(const TwistKnotSpec& spec, const VectorXc& y) {
    require_band(spec, y, "potential_S");
    cplx s = quadratic_linear(spec, y);
    for (const auto& t : potential_terms(spec))
        s += t.coeff * I * dilog(-std::exp(static_cast<double>(t.sign) * y[t.axis]));
    return s;
}

cplx potential_S_rewritten(const TwistKnotSpec& spec, const VectorXc& y) {
    require_band(spec, y, "potential_S_rewritten");
    const int p = spec.p, U = p, W = p + 1;
    cplx s = quadratic_linear(spec, y);
    for (int k = 0; k < p; ++k) s += I * dilog(-std::exp(y[k]));
    if (spec.odd()) {
        s += 2.0 * I * dilog(-std::exp(-y[U])) + I * y[U] * y[U];
        s += I * kPi * kPi / 2.0;
    } else {
        s += 2.0 * I * dilog(-std::exp(y[U])) + I * y[U] * y[U] / 2.0;
        s += I * kPi * kPi / 3.0;
    }
    s += I * dilog(-std::exp(-y[W])) + I * y[W] * y[W] / 2.0;
    return s;
}

VectorXc grad_S(const TwistKnotSpec& spec, const VectorXc& y) {
    require_band(spec, y, "grad_S");
    const KernelData kd = kernel_data(spec);
    VectorXc g = 2.0 * I * (kd.q_matrix().cast<cplx>() * y) + kd.w_vector().cast<cplx>();
    for (const auto& t : potential_terms(spec)) {
        const double s = t.sign;
        g[t.axis] -= t.coeff * s * I * std::log(1.0 + std::exp(s * y[t.axis]));
    }
    return g;
}

MatrixXc hess_S(const TwistKnotSpec& spec, const VectorXc& y) {
    require_band(spec, y, "hess_S");
    MatrixXc h = 2.0 * I * kernel_data(spec).q_matrix().cast<cplx>();
    for (const auto& t : potential_terms(spec))
        h(t.axis, t.axis) -= t.coeff * I / (1.0 + std::exp(-static_cast<double>(t.sign) * y[t.axis]));
    return h;
}

}  // namespace twistvol
