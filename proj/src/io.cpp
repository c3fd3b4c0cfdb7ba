#include "twistvol/io.hpp"

#include <fmt/format.h>

namespace twistvol {

namespace {

ojson cplx_pair(cplx z) { return ojson::array({z.real(), z.imag()}); }

VectorXc cplx_vector(const ojson& j) {
    VectorXc v(static_cast<long>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<long>(i)] = cplx(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    return v;
}

Eigen::VectorXd real_vector(const ojson& j) {
    Eigen::VectorXd v(static_cast<long>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<long>(i)] = j[i].get<double>();
    return v;
}

}  // namespace

ojson triangulation_to_json(const Triangulation& tri) {
    ojson j;
    j["n"] = tri.spec.n;
    j["tetrahedra"] = ojson::array();
    for (const auto& t : tri.tets) {
        ojson r;
        r["label"] = t.label;
        r["sign"] = t.sign;
        r["faces"] = ojson::array();
        for (const auto& [peer, face] : t.faces) r["faces"].push_back({peer, face});
        r["edges"] = t.edges;
        j["tetrahedra"].push_back(std::move(r));
    }
    return j;
}

ojson angles_to_json(const AngleVector& a) {
    ojson j;
    j["n"] = a.spec().n;
    j["angles"] = std::vector<double>(a.values().data(), a.values().data() + a.values().size());
    return j;
}

AngleVector angles_from_json(const ojson& j) {
    const TwistKnotSpec spec = build_spec(j.at("n").get<int>());
    const Eigen::VectorXd v = real_vector(j.at("angles"));
    return AngleVector(spec, v, v.size() == 3 * spec.tet_count_h);
}

ojson complete_structure_to_json(const CompleteStructure& cs) {
    ojson j;
    j["n"] = cs.spec.n;
    j["volume"] = cs.volume;
    j["grad_norm"] = cs.grad_norm;
    j["iterations"] = cs.iterations;
    j["angles"] = std::vector<double>(cs.angles.data(), cs.angles.data() + cs.angles.size());
    j["shapes"] = ojson::array();
    for (long i = 0; i < cs.shapes.size(); ++i) j["shapes"].push_back(cplx_pair(cs.shapes[i]));
    j["y0"] = ojson::array();
    for (long i = 0; i < cs.y0.size(); ++i) j["y0"].push_back(cplx_pair(cs.y0[i]));
    return j;
}

CompleteStructure complete_structure_from_json(const ojson& j) {
    CompleteStructure cs;
    cs.spec = build_spec(j.at("n").get<int>());
    cs.volume = j.at("volume").get<double>();
    cs.grad_norm = j.at("grad_norm").get<double>();
    cs.iterations = j.at("iterations").get<int>();
    cs.angles = real_vector(j.at("angles"));
    cs.shapes = cplx_vector(j.at("shapes"));
    cs.y0 = cplx_vector(j.at("y0"));
    if (cs.angles.size() != 3 * cs.spec.tet_count_ideal || cs.shapes.size() != cs.spec.tet_count_ideal ||
        cs.y0.size() != cs.spec.p + 2)
        throw DimensionError("complete structure: inconsistent array lengths");
    return cs;
}

ojson partition_result_to_json(const TwistKnotSpec& spec, const PartitionResult& r) {
    ojson j;
    j["n"] = spec.n;
    j["hbar"] = r.hbar;
    j["b"] = r.b;
    j["points"] = r.points;
    j["halfwidth"] = r.halfwidth;
    j["value"] = cplx_pair(r.value);
    j["abs_Jfrak"] = r.abs_value;
    j["log_abs_Jfrak"] = r.log_abs;
    j["quad_err"] = r.quadrature_error;
    j["scaled_log"] = r.scaled_log;
    j["volume"] = r.volume;
    j["volume_gap"] = r.volume_gap;
    return j;
}

std::string partition_csv_row(const TwistKnotSpec& spec, const PartitionResult& r) {
    return fmt::format("{},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", spec.n, r.hbar, r.b,
                       r.points, r.halfwidth, r.abs_value, r.scaled_log, r.volume, r.volume_gap, r.quadrature_error);
}

}  // namespace twistvol
