#include "twistvol/partition.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

#include "twistvol/potential.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

struct Rule {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per size.
const Rule& gauss_legendre(int m) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Rule r;
    const auto zeros = boost::math::legendre_p_zeros<double>(m);  // non-negative half
    auto add = [&](double z) {
        const double dp = boost::math::legendre_p_prime<double>(m, z);
        r.x.push_back(z);
        r.w.push_back(2.0 / ((1.0 - z * z) * dp * dp));
    };
    for (auto z = zeros.rbegin(); z != zeros.rend(); ++z)
        if (*z != 0.0) add(-*z);
    for (double z : zeros) add(z);
    return cache.emplace(m, std::move(r)).first->second;
}

// Log Phi_b(u / (2 pi sqrt(hbar))), strip |Im u| < pi.
cplx log_phi_u(cplx u, const QdilogParams& prm) {
    if (!(std::abs(u.imag()) < kPi))
        throw DomainError("integrand: quantum dilogarithm argument outside the strip (mis-set contour)");
    const double b2 = prm.b * prm.b;
    return log_phi_scaled(u * (1.0 + b2), prm);
}

void require_dim(const TwistKnotSpec& spec, const PartitionOptions& opts) {
    if (spec.p + 2 > opts.max_dim)
        throw NumericalError("tensor grid dimension " + std::to_string(spec.p + 2) +
                             " exceeds the guard " + std::to_string(opts.max_dim) + ", use monte-carlo mode");
}

void require_hbar(double hbar) {
    if (!(hbar > 0.0 && hbar <= 0.25)) throw DomainError("hbar must lie in (0, 1/4]");
}

// Classical per-axis exponent at x = 0 with the cross terms' modulus folded in.
cplx classical_axis(const TwistKnotSpec& spec, const KernelData& kd, const std::vector<DilogTerm>& terms,
                    const Eigen::VectorXd& d, int j, double x, double hbar) {
    const Eigen::MatrixXd Q = kd.q_matrix();
    const Eigen::VectorXd W = kd.w_vector();
    const cplx y(x, d[j]);
    cplx e = I * Q(j, j) * y * y + W[j] * y;
    for (int k = 0; k < spec.p + 2; ++k)
        if (k != j) e -= 2.0 * Q(j, k) * d[k] * x;
    for (const auto& t : terms)
        if (t.axis == j) e += t.coeff * I * dilog(-std::exp(static_cast<double>(t.sign) * y));
    return e / (2.0 * kPi * hbar);
}

}  // namespace

ContourSpec ContourSpec::refined(double points_factor, double width_factor) const {
    ContourSpec c = *this;
    c.points = static_cast<int>(std::lround(points * points_factor));
    c.halfwidth *= width_factor;
    return c;
}

double decay_rate(const CompleteStructure& cs) {
    const AngleIndex ai{cs.spec.p};
    std::vector<int> tets;
    for (int k = 1; k <= cs.spec.p; ++k) tets.push_back(ai.tet_T(k));
    tets.push_back(ai.tet_U());
    tets.push_back(ai.tet_W());
    double d = kPi;
    for (int t : tets) d = std::min({d, cs.angles[ai.b(t)], cs.angles[ai.c(t)]});
    return d;
}

ContourSpec make_contour(const CompleteStructure& cs, double hbar, const ContourPolicy& policy) {
    require_hbar(hbar);
    const TwistKnotSpec& spec = cs.spec;
    const int D = spec.p + 2;
    ContourSpec c;
    c.d0 = cs.y0.imag();
    c.center = cs.y0.real();
    c.halfwidth = Eigen::VectorXd::Constant(D, policy.halfwidth);
    const KernelData kd = kernel_data(spec);
    const auto terms = potential_terms(spec);
    Eigen::VectorXd rate = Eigen::VectorXd::Zero(D);
    const double step = 0.02;
    for (int j = 0; j < D; ++j) {
        const double x0 = c.center[j];
        const double top = classical_axis(spec, kd, terms, c.d0, j, x0, hbar).real();
        double reach = 0.0;
        for (int dir : {-1, 1}) {
            double prev_im = classical_axis(spec, kd, terms, c.d0, j, x0, hbar).imag();
            double peak = top;
            for (int s = 1; s < 500000; ++s) {
                const double x = x0 + dir * s * step;
                const cplx e = classical_axis(spec, kd, terms, c.d0, j, x, hbar);
                rate[j] = std::max(rate[j], std::abs(e.imag() - prev_im) / step);
                prev_im = e.imag();
                peak = std::max(peak, e.real());
                if (e.real() < peak - policy.tail_drop) {
                    reach = std::max(reach, s * step);
                    break;
                }
            }
        }
        if (policy.halfwidth <= 0.0) c.halfwidth[j] = reach;
    }
    if (policy.points > 0) {
        c.points = policy.points;
        return c;
    }
    const Eigen::MatrixXd Q = kd.q_matrix();
    int m = policy.min_points;
    for (int j = 0; j < D; ++j) {
        double r = rate[j];
        for (int k = 0; k < D; ++k)
            if (k != j) r += 2.0 * std::abs(Q(j, k)) * (std::abs(c.center[k]) + c.halfwidth[k]) / (2.0 * kPi * hbar);
        m = std::max(m, static_cast<int>(std::ceil(policy.points_per_radian * r * c.halfwidth[j])) + 40);
    }
    c.points = m;
    return c;
}

cplx log_integrand(const TwistKnotSpec& spec, const VectorXc& y, cplx x, double hbar) {
    if (y.size() != spec.p + 2) throw DimensionError("integrand: expected p+2 coordinates");
    require_hbar(hbar);
    const QdilogParams prm = QdilogParams::from_hbar(hbar);
    const KernelData kd = kernel_data(spec);
    const int p = spec.p, U = p, W = p + 1;
    const cplx yQy = y.cwiseProduct(kd.q_matrix().cast<cplx>() * y).sum();
    const cplx yW = y.cwiseProduct(kd.w_vector().cast<cplx>()).sum();
    cplx e = I * yQy + yW - kPi * x;
    cplx l = 0.0;
    if (spec.odd()) {
        e += I * x * (x - y[U] - y[W]);
        l += log_phi_u(y[U], prm) + log_phi_u(y[U] + x, prm) + log_phi_u(y[W], prm);
    } else {
        e += I * x * (y[U] - y[W] - x);
        l += log_phi_u(x - y[U], prm) + log_phi_u(y[W], prm) - log_phi_u(y[U], prm);
    }
    for (int k = 0; k < p; ++k) l -= log_phi_u(y[k], prm);
    return e / (2.0 * kPi * hbar) + l;
}

cplx integrand(const TwistKnotSpec& spec, const VectorXc& y, cplx x, double hbar) {
    return std::exp(log_integrand(spec, y, x, hbar));
}

cplx log_integrand_sprime(const TwistKnotSpec& spec, const VectorXc& y, double hbar) {
    if (y.size() != spec.p + 2) throw DimensionError("integrand: expected p+2 coordinates");
    require_hbar(hbar);
    const QdilogParams prm = QdilogParams::from_hbar(hbar);
    const KernelData kd = kernel_data(spec);
    const double scale = 2.0 * kPi * hbar;
    cplx s = I * (y.transpose() * kd.q_matrix().cast<cplx>() * y)(0, 0) +
             (y.transpose() * kd.w_vector().cast<cplx>())(0, 0);
    // c i Li2(-e^{s y})  ->  -c 2 pi hbar Log Phi_b(s y / (2 pi sqrt(hbar)))
    for (const auto& t : potential_terms(spec))
        s -= t.coeff * scale * log_phi_u(static_cast<double>(t.sign) * y[t.axis], prm);
    return s / scale;
}

GridTables build_tables(const TwistKnotSpec& spec, double hbar, const ContourSpec& contour, double& log_scale_re) {
    require_hbar(hbar);
    const int D = spec.p + 2, m = contour.points;
    if (m < 2) throw DomainError("partition: need at least two points per axis");
    const QdilogParams prm = QdilogParams::from_hbar(hbar);
    const KernelData kd = kernel_data(spec);
    const Eigen::MatrixXd Q = kd.q_matrix();
    const Eigen::VectorXd Wv = kd.w_vector();
    const auto terms = potential_terms(spec);
    const Rule& rule = gauss_legendre(m);
    const double scale = 2.0 * kPi * hbar;
    const Eigen::VectorXd& d = contour.d0;

    GridTables g;
    g.dim = D;
    g.m = m;
    g.axis.assign(D, std::vector<cplx>(m));
    std::vector<std::vector<double>> xs(D, std::vector<double>(m));
    cplx log_scale = -static_cast<double>(spec.p + 3) * std::log(2.0 * kPi * std::sqrt(hbar));
    for (int j = 0; j < D; ++j) {
        std::vector<cplx> ell(m);
#pragma omp parallel for schedule(dynamic, 8)
        for (int a = 0; a < m; ++a) {
            const double x = contour.center[j] + contour.halfwidth[j] * rule.x[a];
            xs[j][a] = x;
            const cplx y(x, d[j]);
            cplx e = I * Q(j, j) * y * y + Wv[j] * y;
            for (int k = 0; k < D; ++k)
                if (k != j) e -= 2.0 * Q(j, k) * d[k] * x;
            e /= scale;
            for (const auto& t : terms)
                if (t.axis == j) e -= t.coeff * log_phi_u(static_cast<double>(t.sign) * y, prm);
            ell[a] = e;
        }
        double shift = -std::numeric_limits<double>::infinity();
        for (const auto& e : ell) shift = std::max(shift, e.real());
        for (int a = 0; a < m; ++a)
            g.axis[j][a] = contour.halfwidth[j] * rule.w[a] * std::exp(ell[a] - shift);
        log_scale += shift;
    }
    for (int j = 0; j < D; ++j)
        for (int k = j + 1; k < D; ++k) {
            log_scale += -2.0 * I * Q(j, k) * d[j] * d[k] / scale;
            std::vector<cplx> c(static_cast<std::size_t>(m) * m, 1.0);
            const double q = 2.0 * Q(j, k) / scale;
            if (q != 0.0) {
#pragma omp parallel for schedule(static)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        c[static_cast<std::size_t>(a) * m + b] = std::polar(1.0, q * xs[j][a] * xs[k][b]);
            }
            g.cross.push_back(std::move(c));
        }
    log_scale_re = log_scale.real();
    // the constant phase is folded into the first axis so that the caller only tracks a real scale
    const cplx phase = std::exp(I * log_scale.imag());
    for (auto& v : g.axis[0]) v *= phase;
    return g;
}

cplx log_Jfrak(const TwistKnotSpec& spec, double hbar, cplx x, const ContourSpec& contour,
               const PartitionOptions& opts) {
    require_hbar(hbar);
    require_dim(spec, opts);
    if (x == 0.0) {
        double log_scale = 0.0;
        const GridTables g = build_tables(spec, hbar, contour, log_scale);
        const cplx s = opts.parallel ? contract_parallel(g) : contract_serial(g);
        if (s == 0.0) throw NumericalError("partition: quadrature sum vanished");
        return log_scale + std::log(s);
    }
    // general x: no factorization, every grid point evaluates the full integrand
    const int D = spec.p + 2, m = contour.points;
    const Rule& rule = gauss_legendre(m);
    VectorXc yc(D);
    for (int j = 0; j < D; ++j) yc[j] = cplx(contour.center[j], contour.d0[j]);
    const cplx ref = log_integrand(spec, yc, x, hbar);
    std::size_t count = 1;
    for (int j = 0; j < D; ++j) count *= static_cast<std::size_t>(m);
    std::vector<cplx> part(count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t r = flat;
        VectorXc y(D);
        double w = 1.0;
        for (int j = D - 1; j >= 0; --j) {
            const int a = static_cast<int>(r % m);
            r /= m;
            y[j] = cplx(contour.center[j] + contour.halfwidth[j] * rule.x[a], contour.d0[j]);
            w *= contour.halfwidth[j] * rule.w[a];
        }
        part[flat] = w * std::exp(log_integrand(spec, y, x, hbar) - ref);
    }
    const cplx s = pairwise_sum(part.data(), count);
    return ref + std::log(s) - static_cast<double>(spec.p + 3) * std::log(2.0 * kPi * std::sqrt(hbar));
}

PartitionResult evaluate_Jfrak(const CompleteStructure& cs, double hbar, cplx x, const ContourSpec& contour,
                               const PartitionOptions& opts) {
    PartitionResult r;
    r.hbar = hbar;
    r.b = b_from_hbar(hbar);
    r.points = contour.points;
    r.halfwidth = contour.halfwidth.maxCoeff();
    const cplx lv = log_Jfrak(cs.spec, hbar, x, contour, opts);
    r.log_abs = lv.real();
    r.value = std::exp(lv);
    r.abs_value = std::exp(lv.real());
    if (opts.estimate_error) {
        const cplx fine = log_Jfrak(cs.spec, hbar, x, contour.refined(2.0, 1.5), opts);
        r.quadrature_error = r.abs_value * std::abs(std::exp(fine - lv) - 1.0);
    }
    r.scaled_log = 2.0 * kPi * hbar * r.log_abs;
    r.volume = cs.volume;
    r.volume_gap = r.scaled_log + cs.volume;
    return r;
}

cplx log_J(const TwistKnotSpec& spec, double hbar, const ContourSpec& contour, const PartitionOptions& opts) {
    require_hbar(hbar);
    require_dim(spec, opts);
    const int D = spec.p + 2, m = contour.points;
    const QdilogParams prm = QdilogParams::from_hbar(hbar);
    const KernelData kd = kernel_data(spec);
    const Eigen::MatrixXd Q = kd.q_matrix();
    const Eigen::VectorXd Wv = kd.w_vector();
    const auto terms = potential_terms(spec);
    const Rule& rule = gauss_legendre(m);
    const double sh = std::sqrt(hbar);
    const double unit = 2.0 * kPi * sh;

    GridTables g;
    g.dim = D;
    g.m = m;
    std::vector<std::vector<cplx>> ys(D, std::vector<cplx>(m));
    double log_scale = 0.0;
    for (int j = 0; j < D; ++j) {
        std::vector<cplx> ell(m);
#pragma omp parallel for schedule(dynamic, 8)
        for (int a = 0; a < m; ++a) {
            const cplx yp = cplx(contour.center[j] + contour.halfwidth[j] * rule.x[a], contour.d0[j]) / unit;
            ys[j][a] = yp;
            cplx e = 2.0 * I * kPi * Q(j, j) * yp * yp + yp * Wv[j] / sh;
            for (const auto& t : terms)
                if (t.axis == j) e -= t.coeff * log_phi_b(static_cast<double>(t.sign) * yp, prm);
            ell[a] = e;
        }
        double shift = -std::numeric_limits<double>::infinity();
        for (const auto& e : ell) shift = std::max(shift, e.real());
        std::vector<cplx> col(m);
        for (int a = 0; a < m; ++a)
            col[a] = contour.halfwidth[j] / unit * rule.w[a] * std::exp(ell[a] - shift);
        g.axis.push_back(std::move(col));
        log_scale += shift;
    }
    for (int j = 0; j < D; ++j)
        for (int k = j + 1; k < D; ++k) {
            std::vector<cplx> c(static_cast<std::size_t>(m) * m);
            const cplx q = 4.0 * I * kPi * Q(j, k);
            double shift = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    const cplx e = q * ys[j][a] * ys[k][b];
                    c[static_cast<std::size_t>(a) * m + b] = e;
                    shift = std::max(shift, e.real());
                }
            for (auto& v : c) v = std::exp(v - shift);
            log_scale += shift;
            g.cross.push_back(std::move(c));
        }
    const cplx s = opts.parallel ? contract_parallel(g) : contract_serial(g);
    if (s == 0.0) throw NumericalError("partition: quadrature sum vanished");
    return log_scale + std::log(s);
}

SaddleEstimate saddle_prediction(const CompleteStructure& cs, double hbar) {
    require_hbar(hbar);
    const int p = cs.spec.p;
    SaddleEstimate e;
    e.det_hess = hess_S(cs.spec, cs.y0).determinant();
    if (std::abs(e.det_hess) == 0.0) throw NumericalError("saddle: singular Hessian");
    e.rho_magnitude = std::pow(2.0 * kPi, 0.5 * (p + 2)) / std::sqrt(std::abs(e.det_hess));
    const double re_s = potential_S(cs.spec, cs.y0).real();
    e.log_leading = -(p + 3) * std::log(2.0 * kPi * std::sqrt(hbar)) + 0.5 * (p + 2) * std::log(2.0 * kPi * hbar) +
                    std::log(e.rho_magnitude) + re_s / (2.0 * kPi * hbar);
    e.leading_magnitude = std::exp(e.log_leading);
    return e;
}

std::pair<double, double> fit_gap(const std::vector<double>& hbars, const std::vector<double>& gaps) {
    const std::size_t n = hbars.size();
    if (n < 2 || gaps.size() != n) throw DimensionError("fit_gap: need at least two points");
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        A(i, 0) = hbars[i] * std::log(1.0 / hbars[i]);
        A(i, 1) = 1.0;
        rhs[i] = gaps[i];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(rhs);
    return {c[0], c[1]};
}

SweepResult volume_sweep(const CompleteStructure& cs, const std::vector<double>& hbars, const ContourPolicy& policy,
                         const PartitionOptions& opts) {
    for (std::size_t i = 0; i < hbars.size(); ++i) {
        require_hbar(hbars[i]);
        if (i > 0 && !(hbars[i] < hbars[i - 1])) throw DomainError("volume_sweep: hbar values must be strictly decreasing");
    }
    SweepResult s;
    std::vector<double> gaps;
    for (double h : hbars) {
        s.rows.push_back(evaluate_Jfrak(cs, h, 0.0, make_contour(cs, h, policy), opts));
        gaps.push_back(s.rows.back().volume_gap);
    }
    if (hbars.size() >= 2) std::tie(s.slope, s.intercept) = fit_gap(hbars, gaps);
    return s;
}

}  // namespace twistvol
