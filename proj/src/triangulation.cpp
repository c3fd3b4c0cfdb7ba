#include "twistvol/triangulation.hpp"

#include <map>
#include <numbers>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr double kPi = std::numbers::pi;

struct TetDraft {
    std::string label;
    int sign;
    std::array<std::string, 4> faces;  // face labels as drawn, face k opposite vertex k
    std::array<int, 6> edges;          // edges 01, 02, 03, 12, 13, 23
};

std::string e_face(int k) { return "e" + std::to_string(k); }
// f_0 is the face e_1 (bottom of the tower)
std::string f_face(int k) { return k == 0 ? e_face(1) : "f" + std::to_string(k); }

// Tower T_1..T_p, common to every case. Angles: a on edge 0 twice, b on e_k twice,
// c on e_{k-1} and e_{k+1}.
void add_tower(std::vector<TetDraft>& out, int p) {
    for (int k = 1; k <= p; ++k) {
        out.push_back({"T" + std::to_string(k), +1,
                       {e_face(k), e_face(k + 1), f_face(k), f_face(k - 1)},
                       {0,        // 01: a, e_0
                        k,        // 02: b, e_k
                        k + 1,    // 03: c, e_{k+1}
                        k - 1,    // 12: c, e_{k-1}
                        k,        // 13: b, e_k
                        0}});     // 23: a, e_0
    }
}

std::vector<TetDraft> drafts(const TwistKnotSpec& spec, bool h) {
    const int p = spec.p;
    const EdgeIds id{p};
    const int s = id.s(), d = id.d(), K = id.K();
    const int pe = p, p1 = p + 1;  // e_p (equals e_0 when p = 0) and e_{p+1}
    std::vector<TetDraft> out;
    add_tower(out, p);
    if (spec.odd()) {
        if (!h) {
            out.push_back({"U", -1, {"r", "v", "s", "g"},
                           {s,     // 01: a
                            pe,    // 02: b
                            p1,    // 03: c
                            p1,    // 12: c
                            p1,    // 13: b
                            s}});  // 23: a
        } else {
            out.push_back({"U", -1, {"r", "v", "s", "g"},
                           {s, pe,
                            d,     // 03: c moves to the double-arrow edge
                            p1,
                            d,     // 13: b moves to the double-arrow edge
                            s}});
        }
        out.push_back({"V", -1, {"g", h ? "s'" : "s", f_face(p), "u"},
                       {0,      // 01: a
                        s,      // 02: b
                        p1,     // 03: c
                        s,      // 12: c
                        pe,     // 13: b
                        p1}});  // 23: a
        out.push_back({"W", -1, {"u", "r", "v", e_face(p + 1)},
                       {pe,     // 01: a
                        p1,     // 02: b
                        h ? d : p1,  // 03: c
                        0,      // 12: c
                        s,      // 13: b
                        s}});   // 23: a
        if (h) {
            out.push_back({"Z", +1, {"m", "m", "s", "s'"},
                           {s,     // 01: a
                            p1,    // 02: b
                            d,     // 03: c
                            p1,    // 12: c
                            d,     // 13: b
                            K}});  // 23: a, the knot, glued to itself through m
        }
    } else {
        if (!h) {
            out.push_back({"U", +1, {"r", "v", "s", "g"},
                           {s,     // 01: a
                            p1,    // 02: b
                            pe,    // 03: c
                            pe,    // 12: c
                            pe,    // 13: b
                            s}});  // 23: a
        } else {
            out.push_back({"U", +1, {"r", "v", "s'", "g"},
                           {s, p1,
                            d,     // 03: c
                            pe,
                            d,     // 13: b
                            s}});
        }
        out.push_back({"V", -1, {"s", "g", f_face(p), "u"},
                       {0,      // 01: a
                        s,      // 02: b
                        p1,     // 03: c
                        s,      // 12: c
                        pe,     // 13: b
                        pe}});  // 23: a
        out.push_back({"W", -1, {"u", "v", "r", e_face(p + 1)},
                       {pe,     // 01: a
                        p1,     // 02: b
                        h ? d : pe,  // 03: c
                        0,      // 12: c
                        s,      // 13: b
                        s}});   // 23: a
        if (h) {
            out.push_back({"Z", +1, {"m", "m", "s", "s'"},
                           {s,     // 01: a
                            d,     // 02: b
                            pe,    // 03: c
                            d,     // 12: c
                            pe,    // 13: b
                            K}});  // 23: a
        }
    }
    return out;
}

Triangulation assemble(const TwistKnotSpec& spec, bool h) {
    const auto ds = drafts(spec, h);
    Triangulation tri;
    tri.spec = spec;
    tri.h_triangulation = h;
    std::map<std::string, std::vector<std::pair<int, int>>> slots;
    for (int t = 0; t < static_cast<int>(ds.size()); ++t) {
        TetrahedronRecord rec;
        rec.label = ds[t].label;
        rec.sign = ds[t].sign;
        rec.edges = ds[t].edges;
        tri.tets.push_back(rec);
        for (int k = 0; k < 4; ++k) slots[ds[t].faces[k]].push_back({t, k});
    }
    for (const auto& [name, sl] : slots) {
        if (sl.size() != 2) throw NumericalError("face " + name + " is not glued in pairs");
        tri.tets[sl[0].first].faces[sl[0].second] = sl[1];
        tri.tets[sl[1].first].faces[sl[1].second] = sl[0];
    }
    tri.num_faces = static_cast<int>(slots.size());
    tri.num_edges = spec.p + (h ? 5 : 3);
    tri.knot_edge = h ? EdgeIds{spec.p}.K() : -1;
    return tri;
}

void check_len(const Eigen::VectorXd& v, long expected, const char* what) {
    if (v.size() != expected)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(expected) +
                             " entries, got " + std::to_string(v.size()));
}

Eigen::VectorXd raw_weights(const Triangulation& tri, const Eigen::VectorXd& angles) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(tri.spec.p + 5);
    for (int t = 0; t < static_cast<int>(tri.tets.size()); ++t)
        for (int e = 0; e < 6; ++e) w[tri.tets[t].edges[e]] += angles[3 * t + kEdgeAngle[e]];
    return w;
}

}  // namespace

std::string EdgeIds::name(int id) const {
    if (id == s()) return "s";
    if (id == d()) return "d";
    if (id == K()) return "K";
    return std::to_string(id);
}

TwistKnotSpec build_spec(int n) {
    if (n < 2) throw DomainError("non-hyperbolic or undefined twist knot index");
    TwistKnotSpec s;
    s.n = n;
    s.parity = (n % 2 == 1) ? Parity::odd : Parity::even;
    s.p = s.odd() ? (n - 3) / 2 : (n - 2) / 2;
    s.tet_count_ideal = s.p + 3;
    s.tet_count_h = s.p + 4;
    return s;
}

std::vector<int> Triangulation::edge_multiplicity() const {
    std::vector<int> m(spec.p + 5, 0);
    for (const auto& t : tets)
        for (int e : t.edges) ++m[e];
    return m;
}

bool Triangulation::pairing_is_involution() const {
    for (int t = 0; t < static_cast<int>(tets.size()); ++t)
        for (int k = 0; k < 4; ++k) {
            auto [pt, pk] = tets[t].faces[k];
            if (pt < 0 || pt >= static_cast<int>(tets.size()) || pk < 0 || pk > 3) return false;
            if (pt == t && pk == k) return false;
            if (tets[pt].faces[pk] != std::make_pair(t, k)) return false;
        }
    return true;
}

Triangulation build_ideal(const TwistKnotSpec& spec) { return assemble(spec, false); }
Triangulation build_h(const TwistKnotSpec& spec) { return assemble(spec, true); }

Eigen::VectorXd edge_weights(const TwistKnotSpec& spec, const Eigen::VectorXd& angles) {
    check_len(angles, 3 * (spec.p + 3), "edge_weights");
    const auto raw = raw_weights(build_ideal(spec), angles);
    const int p = spec.p;
    Eigen::VectorXd w(p + 3);
    w[0] = raw[EdgeIds{p}.s()];
    for (int j = 0; j <= p + 1; ++j) w[1 + j] = raw[j];
    return w;
}

Eigen::VectorXd h_edge_weights(const TwistKnotSpec& spec, const Eigen::VectorXd& ext_angles) {
    check_len(ext_angles, 3 * (spec.p + 4), "h_edge_weights");
    const auto raw = raw_weights(build_h(spec), ext_angles);
    const int p = spec.p;
    const EdgeIds id{p};
    Eigen::VectorXd w(p + 5);
    w[0] = raw[id.s()];
    w[1] = raw[id.d()];
    for (int j = 0; j <= p + 1; ++j) w[2 + j] = raw[j];
    w[p + 4] = raw[id.K()];
    return w;
}

double LinearForm::apply(const Eigen::VectorXd& angles) const {
    double s = 0.0;
    for (auto [i, c] : terms) s += c * angles[i];
    return s;
}

Eigen::MatrixXd KernelData::q_matrix() const { return q_twice.cast<double>() * 0.5; }
Eigen::MatrixXd KernelData::q_tilde_matrix() const { return q_tilde_twice.cast<double>() * 0.5; }
Eigen::VectorXd KernelData::w_vector() const { return w_pi.cast<double>() * kPi; }

KernelData kernel_data(const TwistKnotSpec& spec) {
    const int p = spec.p;
    const int U = p, W = p + 1;            // indices in Q
    const int tU = p, tV = p + 1, tW = p + 2;  // indices in Q~
    KernelData kd;
    kd.q_twice = Eigen::MatrixXi::Zero(p + 2, p + 2);
    kd.q_tilde_twice = Eigen::MatrixXi::Zero(p + 3, p + 3);
    kd.w_pi = Eigen::VectorXi::Zero(p + 2);
    for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j) {
            kd.q_twice(i - 1, j - 1) = 2 * std::min(i, j);
            kd.q_tilde_twice(i - 1, j - 1) = 2 * std::min(i, j);
        }
    auto sym = [](Eigen::MatrixXi& m, int i, int j, int v) { m(i, j) = v; m(j, i) = v; };
    const int sg = spec.odd() ? -1 : +1;
    for (int k = 1; k <= p; ++k) {
        sym(kd.q_twice, k - 1, U, 2 * sg * k);
        sym(kd.q_tilde_twice, k - 1, tU, 2 * sg * k);
        kd.w_pi[k - 1] = -(2 * k * p - k * (k - 1));
    }
    const AngleIndex ai{p};
    const int aU = ai.a(ai.tet_U()), aV = ai.a(ai.tet_V()), aW = ai.a(ai.tet_W());
    const int bV = ai.b(ai.tet_V()), bW = ai.b(ai.tet_W()), cV = ai.c(ai.tet_V());
    if (spec.odd()) {
        sym(kd.q_twice, U, U, 2 * p);
        sym(kd.q_twice, U, W, 1);
        sym(kd.q_tilde_twice, tU, tU, 2 * (p + 2));
        sym(kd.q_tilde_twice, tU, tV, -3);
        sym(kd.q_tilde_twice, tU, tW, 2);
        sym(kd.q_tilde_twice, tV, tV, 2);
        sym(kd.q_tilde_twice, tV, tW, -1);
        kd.w_pi[U] = p * p + p + 1;
        kd.w_pi[W] = 1;
        kd.mu.terms = {{aU, 1.0}, {aV, -1.0}};
        kd.lambda.terms = {{aU, 2.0}, {aV, -2.0}, {cV, 2.0}, {bW, -2.0}};
    } else {
        sym(kd.q_twice, U, U, 2 * (p + 1));
        sym(kd.q_twice, U, W, -1);
        sym(kd.q_tilde_twice, tU, tU, 2 * (p + 1));
        sym(kd.q_tilde_twice, tU, tV, -1);
        sym(kd.q_tilde_twice, tU, tW, -2);
        sym(kd.q_tilde_twice, tV, tV, -2);
        sym(kd.q_tilde_twice, tV, tW, -1);
        kd.w_pi[U] = -(p * p + p + 3);
        kd.w_pi[W] = 1;
        kd.mu.terms = {{aU, 1.0}, {aV, -1.0}};
        kd.lambda.terms = {{aV, 2.0}, {aU, -2.0}, {aW, 2.0}, {bV, -2.0}};
    }
    return kd;
}

std::pair<double, double> holonomies(const TwistKnotSpec& spec, const Eigen::VectorXd& angles) {
    check_len(angles, 3 * (spec.p + 3), "holonomies");
    const auto kd = kernel_data(spec);
    return {kd.mu.apply(angles), kd.lambda.apply(angles)};
}

Eigen::VectorXd weight_identity_lhs(const TwistKnotSpec& spec, const Eigen::VectorXd& shape) {
    check_len(shape, 3 * (spec.p + 3), "weight_identity");
    const int p = spec.p;
    const AngleIndex ai{p};
    Eigen::VectorXd gamma(p + 3), c(p + 3);
    for (int t = 0; t < p + 3; ++t) {
        const double a = shape[ai.a(t)];
        // tower angles and (even case) U enter as a - pi, the rest as pi - a
        const bool minus = t < p || (!spec.odd() && t == ai.tet_U());
        gamma[t] = minus ? a - kPi : kPi - a;
        c[t] = shape[ai.c(t)];
    }
    return 2.0 * kernel_data(spec).q_tilde_matrix() * gamma + c;
}

Eigen::VectorXd weight_identity_residual(const TwistKnotSpec& spec, const Eigen::VectorXd& shape) {
    const Eigen::VectorXd lhs = weight_identity_lhs(spec, shape);
    const int p = spec.p;
    const auto w = edge_weights(spec, shape);
    const double ws = w[0];
    auto om = [&](int j) { return w[1 + j]; };
    const double lam = holonomies(spec, shape).second;
    auto tower = [&](int k) {
        double v = k * (ws - 2.0 * (p + 2) * kPi);
        for (int j = 1; j <= k; ++j) v += j * om(k - j);
        return v;
    };
    Eigen::VectorXd rhs(p + 3);
    for (int k = 1; k <= p; ++k) rhs[k - 1] = tower(k);
    if (spec.odd()) {
        rhs[p] = om(p + 1) - ws - tower(p) + 2.0 * kPi - 0.5 * lam;
        rhs[p + 1] = 0.5 * lam + ws - 3.0 * kPi;
    } else {
        rhs[p] = ws - om(p + 1) + tower(p) - 4.0 * kPi + 0.5 * lam;
        rhs[p + 1] = 0.5 * lam - kPi;
    }
    rhs[p + 2] = 3.0 * kPi - ws;
    return lhs - rhs;
}

Eigen::VectorXd tau_weight_vector(const TwistKnotSpec& spec, const Eigen::VectorXd& ext_angles) {
    check_len(ext_angles, 3 * (spec.p + 4), "tau_weight_vector");
    const int p = spec.p;
    const AngleIndex ai{p};
    Eigen::VectorXd gamma(p + 2), c(p + 2);
    for (int k = 1; k <= p; ++k) {
        gamma[k - 1] = ext_angles[ai.a(ai.tet_T(k))] - kPi;
        c[k - 1] = ext_angles[ai.c(ai.tet_T(k))];
    }
    const double aU = ext_angles[ai.a(ai.tet_U())], aW = ext_angles[ai.a(ai.tet_W())];
    gamma[p] = spec.odd() ? kPi - aU : aU - kPi;
    gamma[p + 1] = kPi - aW;
    c[p] = ext_angles[ai.c(ai.tet_U())];
    c[p + 1] = ext_angles[ai.c(ai.tet_W())];
    Eigen::VectorXd out = 2.0 * kernel_data(spec).q_matrix() * gamma + c;
    const double cV = ext_angles[ai.c(ai.tet_V())];
    out[p] += spec.odd() ? cV : -cV;
    return out;
}

}  // namespace twistvol
